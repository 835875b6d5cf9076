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

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qscatter/linalg.hpp"
#include "qscatter/parallel.hpp"
#include "qscatter/scattering.hpp"

namespace qscatter {

/// Point (q, p) of the 2N x 2N discrete phase space of an N-level system.
class PhasePoint {
  public:
    PhasePoint(int q, int p, std::size_t n) : q_(q), p_(p), n_(n) {
        if (n < 2 || n % 2 != 0)
            fail(ErrorCode::InvalidArgument,
                 "phase space needs an even dimension >= 2, got " +
                     std::to_string(n));
        const int side = 2 * static_cast<int>(n);
        if (q < 0 || q >= side || p < 0 || p >= side)
            fail(ErrorCode::InvalidArgument,
                 "phase point (" + std::to_string(q) + "," + std::to_string(p) +
                     ") outside the " + std::to_string(side) + "x" +
                     std::to_string(side) + " grid");
    }

    [[nodiscard]] int q() const noexcept { return q_; }
    [[nodiscard]] int p() const noexcept { return p_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }

  private:
    int q_;
    int p_;
    std::size_t n_;
};

/// Real 2N x 2N grid, indexed [q][p].
class WignerGrid {
  public:
    WignerGrid(std::size_t n, std::vector<double> values,
               double max_imag_residue = 0.0)
        : n_(n), values_(std::move(values)), residue_(max_imag_residue) {
        if (values_.size() != 4 * n * n)
            fail(ErrorCode::DimensionMismatch,
                 "Wigner grid for N=" + std::to_string(n) + " needs " +
                     std::to_string(4 * n * n) + " values");
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t side() const noexcept { return 2 * n_; }
    [[nodiscard]] double at(std::size_t q, std::size_t p) const {
        return values_[q * side() + p];
    }
    [[nodiscard]] const std::vector<double> &values() const noexcept {
        return values_;
    }
    /// Largest |Im Tr(A rho)| seen while the grid was built.
    [[nodiscard]] double max_imag_residue() const noexcept { return residue_; }

  private:
    std::size_t n_;
    std::vector<double> values_;
    double residue_;
};

/// Cyclic shift |q> -> |q+1 mod n>.
inline UnitaryOperator shift_u(std::size_t n) {
    if (n < 2)
        fail(ErrorCode::InvalidArgument, "shift_u: n must be >= 2");
    ComplexMatrix m(n);
    for (std::size_t q = 0; q < n; ++q)
        m.set((q + 1) % n, q, 1.0);
    return UnitaryOperator::assume_valid(std::move(m));
}

/// Shift in the Fourier basis, F U F^dagger. Diagonal: exp(2 pi i k / n).
inline UnitaryOperator shift_v(std::size_t n) {
    if (n < 2)
        fail(ErrorCode::InvalidArgument, "shift_v: n must be >= 2");
    const UnitaryOperator f = dft_matrix(n);
    return UnitaryOperator::assume_valid(
        matmul(matmul(f.matrix(), shift_u(n).matrix()), dagger(f.matrix())));
}

/// |q> -> |n - q mod n>.
inline UnitaryOperator reflection(std::size_t n) {
    if (n < 2)
        fail(ErrorCode::InvalidArgument, "reflection: n must be >= 2");
    ComplexMatrix m(n);
    for (std::size_t q = 0; q < n; ++q)
        m.set((n - q) % n, q, 1.0);
    return UnitaryOperator::assume_valid(std::move(m));
}

/// 2N A(q,p) = U^q R V^-p exp(i pi p q / N): unitary and Hermitian.
inline UnitaryOperator phase_point_unitary(const PhasePoint &alpha) {
    const std::size_t n = alpha.n();
    const auto q = static_cast<std::size_t>(alpha.q());
    const auto p = static_cast<std::size_t>(alpha.p());
    const ComplexMatrix v_inv = dagger(shift_v(n).matrix());
    const ComplexMatrix op =
        matmul(matmul(power(shift_u(n).matrix(), q % n), reflection(n).matrix()),
               power(v_inv, p % n));
    const double angle = std::numbers::pi * static_cast<double>((p * q) % (2 * n)) /
                         static_cast<double>(n);
    return UnitaryOperator::assume_valid(scaled(op, std::polar(1.0, angle)));
}

/// Phase-point operator A(q,p) = (1/2N) U^q R V^-p exp(i 2 pi p q / 2N).
inline ComplexMatrix phase_point_operator(const PhasePoint &alpha) {
    return scaled(phase_point_unitary(alpha).matrix(),
                  1.0 / (2.0 * static_cast<double>(alpha.n())));
}

/// All 4N^2 phase-point operators for one dimension, built once.
class PhaseSpace {
  public:
    explicit PhaseSpace(std::size_t n) : n_(n) {
        PhasePoint(0, 0, n); // validates n
        const std::size_t side = 2 * n;
        ops_.reserve(side * side);
        for (std::size_t q = 0; q < side; ++q)
            for (std::size_t p = 0; p < side; ++p)
                ops_.push_back(phase_point_operator(
                    PhasePoint(static_cast<int>(q), static_cast<int>(p), n)));
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t side() const noexcept { return 2 * n_; }
    [[nodiscard]] const ComplexMatrix &op(std::size_t q, std::size_t p) const {
        return ops_[q * side() + p];
    }

  private:
    std::size_t n_;
    std::vector<ComplexMatrix> ops_;
};

/// Shared, immutable per-dimension operator table.
inline std::shared_ptr<const PhaseSpace> phase_space(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const PhaseSpace>> cache;
    std::lock_guard lock(mu);
    auto &slot = cache[n];
    if (!slot)
        slot = std::make_shared<const PhaseSpace>(n);
    return slot;
}

/// W(q,p) = Tr(A(q,p) rho) on the full 2N x 2N grid.
inline WignerGrid wigner_direct(const DensityMatrix &rho) {
    const std::size_t n = rho.dim();
    const auto space = phase_space(n);
    const std::size_t side = space->side();
    std::vector<double> values(side * side);
    std::vector<double> residue(side * side);
    const Eigen::MatrixXcd rho_t = rho.matrix().eigen().transpose();
    parallel_for(side * side, [&](std::size_t idx) {
        const Complex w =
            space->op(idx / side, idx % side).eigen().cwiseProduct(rho_t).sum();
        values[idx] = w.real();
        residue[idx] = std::abs(w.imag());
    });
    return {n, std::move(values),
            *std::max_element(residue.begin(), residue.end())};
}

/// W(alpha) measured by the probe circuit with U = 2N A(alpha).
inline double wigner_via_circuit(const DensityMatrix &rho,
                                 const PhasePoint &alpha) {
    if (rho.dim() != alpha.n())
        fail(ErrorCode::DimensionMismatch,
             "wigner_via_circuit: rho dim " + std::to_string(rho.dim()) +
                 " but phase point is for N=" + std::to_string(alpha.n()));
    const auto result = scattering_circuit(rho, phase_point_unitary(alpha));
    return result.sigma_z / (2.0 * static_cast<double>(alpha.n()));
}

/// Which phase points enter the sums of reconstruct and wigner_overlap.
/// Full is exact with the prefactor N; FirstQuadrant (0 <= q,p < N) is
/// kept only to document the 1/4 shortfall of the smaller sum.
enum class GridRange { Full, FirstQuadrant };

struct Reconstruction {
    ComplexMatrix matrix;
    std::optional<std::string> violation;

    [[nodiscard]] bool valid() const noexcept { return !violation.has_value(); }
    [[nodiscard]] DensityMatrix state() const {
        if (violation)
            fail(ErrorCode::InvalidState, "reconstruction: " + *violation);
        return DensityMatrix::assume_valid(matrix);
    }
};

/// rho = N sum_alpha W(alpha) A(alpha). Grids that do not come from a state
/// still produce a matrix, flagged through `violation`.
inline Reconstruction reconstruct(const WignerGrid &w,
                                  GridRange range = GridRange::Full) {
    const std::size_t n = w.n();
    const auto space = phase_space(n);
    const std::size_t limit = range == GridRange::Full ? 2 * n : n;
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t q = 0; q < limit; ++q)
        for (std::size_t p = 0; p < limit; ++p)
            sum += w.at(q, p) * space->op(q, p).eigen();
    ComplexMatrix m(Eigen::MatrixXcd(static_cast<double>(n) * sum));
    auto why = density_violation(m);
    return {std::move(m), std::move(why)};
}

/// N sum_alpha W1(alpha) W2(alpha), which equals Tr(rho1 rho2).
inline double wigner_overlap(const WignerGrid &a, const WignerGrid &b,
                             GridRange range = GridRange::Full) {
    if (a.n() != b.n())
        fail(ErrorCode::DimensionMismatch, "wigner_overlap: grids differ in N");
    const std::size_t limit = range == GridRange::Full ? a.side() : a.n();
    double sum = 0.0;
    for (std::size_t q = 0; q < limit; ++q)
        for (std::size_t p = 0; p < limit; ++p)
            sum += a.at(q, p) * b.at(q, p);
    return static_cast<double>(a.n()) * sum;
}

/// Sum of W over the line {(q,p) : a p - b q = c (mod 2N)}.
/// (a,b) = (1,0) is the horizontal line p = c; (0,-1) the vertical q = c.
inline double line_sum(const WignerGrid &w, long a, long b, long c) {
    const long side = static_cast<long>(w.side());
    const auto mod = [side](long v) { return ((v % side) + side) % side; };
    if (mod(a) == 0 && mod(b) == 0)
        fail(ErrorCode::InvalidArgument,
             "line_sum: (a,b) = (0,0) mod 2N does not define a line");
    double sum = 0.0;
    for (long q = 0; q < side; ++q)
        for (long p = 0; p < side; ++p)
            if (mod(a * p - b * q - c) == 0)
                sum += w.at(static_cast<std::size_t>(q), static_cast<std::size_t>(p));
    return sum;
}

} // namespace qscatter
