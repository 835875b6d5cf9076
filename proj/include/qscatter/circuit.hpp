// Copyright 2026 The qscatter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qscatter/linalg.hpp"

namespace qscatter {

// Qubit 0 is the most significant bit of a basis label: on n qubits,
// |b_0 b_1 ... b_{n-1}> has index sum_k b_k 2^(n-1-k).

enum class GateKind {
    Hadamard,
    PauliX,
    PauliY,
    PauliZ,
    PhaseShift,
    CNOT,
    Toffoli,
    ControlledPhase,
    ControlledUnitary,
};

enum class PauliAxis { X, Y, Z };

/// One gate. `targets` lists controls first, then the acted-on qubits.
/// ControlledUnitary takes one control; `unitary` acts on the remaining
/// targets with targets[1] as its most significant qubit.
struct GateOp {
    GateKind kind{};
    std::vector<int> targets;
    double theta = 0.0;
    std::optional<UnitaryOperator> unitary;
};

using Circuit = std::vector<GateOp>;

namespace gates {

inline GateOp hadamard(int q) { return {GateKind::Hadamard, {q}, 0.0, {}}; }
inline GateOp pauli_x(int q) { return {GateKind::PauliX, {q}, 0.0, {}}; }
inline GateOp pauli_y(int q) { return {GateKind::PauliY, {q}, 0.0, {}}; }
inline GateOp pauli_z(int q) { return {GateKind::PauliZ, {q}, 0.0, {}}; }
inline GateOp phase_shift(int q, double theta) {
    return {GateKind::PhaseShift, {q}, theta, {}};
}
inline GateOp cnot(int control, int target) {
    return {GateKind::CNOT, {control, target}, 0.0, {}};
}
inline GateOp toffoli(int c0, int c1, int target) {
    return {GateKind::Toffoli, {c0, c1, target}, 0.0, {}};
}
inline GateOp controlled_phase(int control, int target, double theta) {
    return {GateKind::ControlledPhase, {control, target}, theta, {}};
}
inline GateOp controlled_unitary(int control, const std::vector<int> &targets,
                                 UnitaryOperator u) {
    std::vector<int> all{control};
    all.insert(all.end(), targets.begin(), targets.end());
    return {GateKind::ControlledUnitary, std::move(all), 0.0, std::move(u)};
}

} // namespace gates

inline std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::Hadamard:
        return "Hadamard";
    case GateKind::PauliX:
        return "PauliX";
    case GateKind::PauliY:
        return "PauliY";
    case GateKind::PauliZ:
        return "PauliZ";
    case GateKind::PhaseShift:
        return "PhaseShift";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::Toffoli:
        return "Toffoli";
    case GateKind::ControlledPhase:
        return "ControlledPhase";
    case GateKind::ControlledUnitary:
        return "ControlledUnitary";
    }
    return "?";
}

inline std::optional<GateKind> gate_kind_from_string(std::string_view name) {
    for (auto kind :
         {GateKind::Hadamard, GateKind::PauliX, GateKind::PauliY,
          GateKind::PauliZ, GateKind::PhaseShift, GateKind::CNOT,
          GateKind::Toffoli, GateKind::ControlledPhase,
          GateKind::ControlledUnitary})
        if (to_string(kind) == name)
            return kind;
    return std::nullopt;
}

/// Throws InvalidArgument if `g` cannot act on a register of `num_qubits`.
inline void validate(const GateOp &g, int num_qubits) {
    const auto name = std::string(to_string(g.kind));
    std::size_t want = 0;
    switch (g.kind) {
    case GateKind::Hadamard:
    case GateKind::PauliX:
    case GateKind::PauliY:
    case GateKind::PauliZ:
    case GateKind::PhaseShift:
        want = 1;
        break;
    case GateKind::CNOT:
    case GateKind::ControlledPhase:
        want = 2;
        break;
    case GateKind::Toffoli:
        want = 3;
        break;
    case GateKind::ControlledUnitary: {
        if (!g.unitary)
            fail(ErrorCode::InvalidArgument,
                 "ControlledUnitary without a unitary");
        const std::size_t dim = g.unitary->dim();
        if (!is_power_of_two(dim) || dim < 2)
            fail(ErrorCode::DimensionMismatch,
                 "ControlledUnitary: unitary dim must be a power of two >= 2");
        want = 1 + static_cast<std::size_t>(qubit_count(dim));
        break;
    }
    }
    if (g.targets.size() != want)
        fail(ErrorCode::InvalidArgument,
             name + ": expected " + std::to_string(want) + " qubit indices, got " +
                 std::to_string(g.targets.size()));
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
        const int q = g.targets[i];
        if (q < 0 || q >= num_qubits)
            fail(ErrorCode::InvalidArgument,
                 name + ": qubit index " + std::to_string(q) +
                     " out of range for " + std::to_string(num_qubits) +
                     " qubits");
        for (std::size_t j = 0; j < i; ++j)
            if (g.targets[j] == q)
                fail(ErrorCode::InvalidArgument,
                     name + ": repeated qubit index " + std::to_string(q));
    }
    if (!std::isfinite(g.theta))
        fail(ErrorCode::InvalidArgument, name + ": non-finite angle");
}

/// A gate as "apply `u` to `targets` on the subspace where every control is 1".
struct LocalAction {
    std::vector<int> controls;
    std::vector<int> targets;
    Eigen::MatrixXcd u;
};

namespace detail {

inline Eigen::MatrixXcd single_qubit(GateKind kind, double theta) {
    using namespace std::complex_literals;
    Eigen::MatrixXcd m(2, 2);
    switch (kind) {
    case GateKind::Hadamard:
        m << 1.0, 1.0, 1.0, -1.0;
        m /= std::numbers::sqrt2;
        break;
    case GateKind::PauliX:
    case GateKind::CNOT:
    case GateKind::Toffoli:
        m << 0.0, 1.0, 1.0, 0.0;
        break;
    case GateKind::PauliY:
        m << 0.0, -1i, 1i, 0.0;
        break;
    case GateKind::PauliZ:
        m << 1.0, 0.0, 0.0, -1.0;
        break;
    case GateKind::PhaseShift:
    case GateKind::ControlledPhase:
        m << 1.0, 0.0, 0.0, std::polar(1.0, theta);
        break;
    case GateKind::ControlledUnitary:
        break;
    }
    return m;
}

inline std::size_t bit_of(int qubit, int num_qubits) {
    return std::size_t{1} << (num_qubits - 1 - qubit);
}

} // namespace detail

inline LocalAction local_action(const GateOp &g) {
    const auto &t = g.targets;
    switch (g.kind) {
    case GateKind::Hadamard:
    case GateKind::PauliX:
    case GateKind::PauliY:
    case GateKind::PauliZ:
    case GateKind::PhaseShift:
        return {{}, {t[0]}, detail::single_qubit(g.kind, g.theta)};
    case GateKind::CNOT:
    case GateKind::ControlledPhase:
        return {{t[0]}, {t[1]}, detail::single_qubit(g.kind, g.theta)};
    case GateKind::Toffoli:
        return {{t[0], t[1]}, {t[2]}, detail::single_qubit(g.kind, g.theta)};
    case GateKind::ControlledUnitary:
        return {{t[0]}, {t.begin() + 1, t.end()}, g.unitary->matrix().eigen()};
    }
    return {};
}

/// Applies the action to every column of `columns` (each a state vector on
/// `num_qubits` qubits). Gathers the touched amplitudes into one block so
/// the multiply runs as a single dense product.
inline void apply_local(Eigen::MatrixXcd &columns, int num_qubits,
                        const LocalAction &action) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (static_cast<std::size_t>(columns.rows()) != dim)
        fail(ErrorCode::DimensionMismatch,
             "state has " + std::to_string(columns.rows()) + " rows, expected " +
                 std::to_string(dim));
    const std::size_t m = action.targets.size();
    const std::size_t sub = std::size_t{1} << m;
    if (static_cast<std::size_t>(action.u.rows()) != sub)
        fail(ErrorCode::DimensionMismatch, "local unitary does not match targets");

    std::size_t control_mask = 0;
    for (int c : action.controls)
        control_mask |= detail::bit_of(c, num_qubits);
    std::size_t target_mask = 0;
    std::vector<std::size_t> offset(sub, 0);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t b = detail::bit_of(action.targets[j], num_qubits);
        target_mask |= b;
        for (std::size_t s = 0; s < sub; ++s)
            if ((s >> (m - 1 - j)) & 1U)
                offset[s] |= b;
    }
    const std::size_t fixed = control_mask | target_mask;
    std::vector<std::size_t> bases;
    bases.reserve(dim / sub);
    for (std::size_t i = 0; i < dim; ++i)
        if ((i & fixed) == control_mask)
            bases.push_back(i);

    const auto nb = static_cast<Eigen::Index>(bases.size());
    const auto ncols = columns.cols();
    Eigen::MatrixXcd block(static_cast<Eigen::Index>(sub), nb * ncols);
    for (Eigen::Index c = 0; c < ncols; ++c)
        for (Eigen::Index b = 0; b < nb; ++b)
            for (std::size_t s = 0; s < sub; ++s)
                block(static_cast<Eigen::Index>(s), c * nb + b) =
                    columns(static_cast<Eigen::Index>(bases[b] + offset[s]), c);
    const Eigen::MatrixXcd out = action.u * block;
    for (Eigen::Index c = 0; c < ncols; ++c)
        for (Eigen::Index b = 0; b < nb; ++b)
            for (std::size_t s = 0; s < sub; ++s)
                columns(static_cast<Eigen::Index>(bases[b] + offset[s]), c) =
                    out(static_cast<Eigen::Index>(s), c * nb + b);
}

/// Qubit count of a register whose Hilbert dimension is `dim`.
inline int register_qubits(std::size_t dim) {
    if (!is_power_of_two(dim))
        fail(ErrorCode::DimensionMismatch,
             "dimension " + std::to_string(dim) +
                 " is not a power of two and cannot hold a qubit register");
    return qubit_count(dim);
}

/// Full 2^num_qubits unitary of `g` (identity on untouched qubits).
inline UnitaryOperator gate_matrix(const GateOp &g, int num_qubits) {
    validate(g, num_qubits);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    apply_local(m, num_qubits, local_action(g));
    return UnitaryOperator::assume_valid(ComplexMatrix(std::move(m)));
}

/// Product G_last ... G_first of a gate list.
inline UnitaryOperator circuit_matrix(const Circuit &circuit, int num_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &g : circuit) {
        validate(g, num_qubits);
        apply_local(m, num_qubits, local_action(g));
    }
    return UnitaryOperator::assume_valid(ComplexMatrix(std::move(m)));
}

/// rho -> G rho G^dagger.
inline DensityMatrix apply(const DensityMatrix &rho, const GateOp &g) {
    const int n = register_qubits(rho.dim());
    validate(g, n);
    const LocalAction action = local_action(g);
    Eigen::MatrixXcd left = rho.matrix().eigen();
    apply_local(left, n, action);
    Eigen::MatrixXcd right = left.adjoint();
    apply_local(right, n, action);
    return DensityMatrix::assume_valid(
        ComplexMatrix(Eigen::MatrixXcd(right.adjoint())));
}

inline DensityMatrix run(DensityMatrix rho, const Circuit &circuit) {
    for (const auto &g : circuit)
        rho = apply(rho, g);
    return rho;
}

/// Tr(rho sigma_axis) with the Pauli embedded at `qubit`.
inline double pauli_expectation(const DensityMatrix &rho, PauliAxis axis,
                                int qubit) {
    const int n = register_qubits(rho.dim());
    if (qubit < 0 || qubit >= n)
        fail(ErrorCode::InvalidArgument,
             "pauli_expectation: qubit " + std::to_string(qubit) +
                 " out of range");
    using namespace std::complex_literals;
    const std::size_t b = detail::bit_of(qubit, n);
    const auto &m = rho.matrix().eigen();
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(i ^ b);
        const bool one = (i & b) != 0;
        switch (axis) {
        case PauliAxis::Z:
            sum += one ? -m(ii, ii) : m(ii, ii);
            break;
        case PauliAxis::X:
            sum += m(ii, jj);
            break;
        case PauliAxis::Y:
            // sigma_y[j][i]: +i when i's bit is 0, -i when it is 1.
            sum += m(ii, jj) * (one ? -1i : 1i);
            break;
        }
    }
    return sum.real();
}

/// (1 - p) rho + p I/N.
inline DensityMatrix depolarize(const DensityMatrix &rho, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        fail(ErrorCode::InvalidArgument,
             "depolarize: p must lie in [0, 1], got " + std::to_string(p));
    const auto n = static_cast<Eigen::Index>(rho.dim());
    Eigen::MatrixXcd out = (1.0 - p) * rho.matrix().eigen() +
                           (p / static_cast<double>(n)) *
                               Eigen::MatrixXcd::Identity(n, n);
    return DensityMatrix::assume_valid(ComplexMatrix(std::move(out)));
}

inline GateOp inverse(const GateOp &g) {
    GateOp inv = g;
    switch (g.kind) {
    case GateKind::PhaseShift:
    case GateKind::ControlledPhase:
        inv.theta = -g.theta;
        break;
    case GateKind::ControlledUnitary:
        inv.unitary = g.unitary->adjoint();
        break;
    default:
        break;
    }
    return inv;
}

inline Circuit inverse(const Circuit &circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it)
        out.push_back(inverse(*it));
    return out;
}

/// Mixed state held as a weighted ensemble of pure states,
/// rho = sum_c |psi_c><psi_c| with weights folded into column norms.
/// Evolution costs O(dim * rank) per gate instead of O(dim^2), which is
/// what makes 12-qubit spectrometer runs practical.
class EnsembleState {
  public:
    EnsembleState(int num_qubits, Eigen::MatrixXcd columns)
        : num_qubits_(num_qubits), columns_(std::move(columns)) {
        if (columns_.rows() != (Eigen::Index{1} << num_qubits))
            fail(ErrorCode::DimensionMismatch,
                 "ensemble columns do not match register size");
    }

    void apply(const GateOp &g) {
        validate(g, num_qubits_);
        apply_local(columns_, num_qubits_, local_action(g));
    }

    [[nodiscard]] double pauli_expectation(PauliAxis axis, int qubit) const {
        using namespace std::complex_literals;
        const std::size_t b = detail::bit_of(qubit, num_qubits_);
        Complex sum = 0.0;
        for (Eigen::Index c = 0; c < columns_.cols(); ++c)
            for (Eigen::Index i = 0; i < columns_.rows(); ++i) {
                const auto j = static_cast<Eigen::Index>(
                    static_cast<std::size_t>(i) ^ b);
                const bool one = (static_cast<std::size_t>(i) & b) != 0;
                const Complex amp = std::conj(columns_(i, c));
                switch (axis) {
                case PauliAxis::Z:
                    sum += amp * columns_(i, c) * (one ? -1.0 : 1.0);
                    break;
                case PauliAxis::X:
                    sum += amp * columns_(j, c);
                    break;
                case PauliAxis::Y:
                    sum += amp * columns_(j, c) * (one ? 1i : -1i);
                    break;
                }
            }
        return sum.real();
    }

    [[nodiscard]] DensityMatrix to_density() const {
        return DensityMatrix::assume_valid(
            ComplexMatrix(Eigen::MatrixXcd(columns_ * columns_.adjoint())));
    }

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const Eigen::MatrixXcd &columns() const noexcept {
        return columns_;
    }

  private:
    int num_qubits_;
    Eigen::MatrixXcd columns_;
};

} // namespace qscatter
