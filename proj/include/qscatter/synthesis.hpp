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
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qscatter/circuit.hpp"
#include "qscatter/phasespace.hpp"
#include "qscatter/scattering.hpp"

namespace qscatter {

/// Elementary-gate realisation of a probe-controlled system operator.
///
/// Layout: qubit 0 is the control (the probe), qubits 1..system_qubits hold
/// the system with qubit 1 most significant, and any remaining qubits are
/// clean work space that every sequence returns to |0>.
struct GateSequence {
    int num_qubits = 1;
    int system_qubits = 0;
    Circuit gates;

    [[nodiscard]] int work_qubits() const noexcept {
        return num_qubits - 1 - system_qubits;
    }
};

namespace detail {

/// Work qubits a k-qubit controlled increment or negation needs.
inline int synth_work_qubits(int k) { return std::max(0, k - 2); }

inline GateSequence empty_sequence(int k) {
    if (k < 1)
        fail(ErrorCode::InvalidArgument,
             "synthesis needs at least one system qubit, got " +
                 std::to_string(k));
    return {1 + k + synth_work_qubits(k), k, {}};
}

inline std::vector<int> system_bits(const GateSequence &seq) {
    std::vector<int> bits(static_cast<std::size_t>(seq.system_qubits));
    for (int j = 0; j < seq.system_qubits; ++j)
        bits[static_cast<std::size_t>(j)] = 1 + j;
    return bits;
}

inline std::vector<int> work_bits(const GateSequence &seq) {
    std::vector<int> bits;
    for (int j = 1 + seq.system_qubits; j < seq.num_qubits; ++j)
        bits.push_back(j);
    return bits;
}

/// X on `target` when all `controls` are 1. Three or more controls use a
/// Toffoli ladder through clean work qubits, computed and then uncomputed.
inline void multi_controlled_x(Circuit &out, const std::vector<int> &controls,
                               int target, const std::vector<int> &work) {
    const std::size_t m = controls.size();
    if (m == 0) {
        out.push_back(gates::pauli_x(target));
        return;
    }
    if (m == 1) {
        out.push_back(gates::cnot(controls[0], target));
        return;
    }
    if (m == 2) {
        out.push_back(gates::toffoli(controls[0], controls[1], target));
        return;
    }
    if (work.size() < m - 2)
        fail(ErrorCode::InvalidArgument,
             std::to_string(m) + "-controlled X needs " +
                 std::to_string(m - 2) + " work qubits");
    Circuit ladder;
    ladder.push_back(gates::toffoli(controls[0], controls[1], work[0]));
    for (std::size_t i = 2; i + 1 < m; ++i)
        ladder.push_back(gates::toffoli(controls[i], work[i - 2], work[i - 1]));
    out.insert(out.end(), ladder.begin(), ladder.end());
    out.push_back(gates::toffoli(controls[m - 1], work[m - 3], target));
    out.insert(out.end(), ladder.rbegin(), ladder.rend());
}

/// Controlled +1 mod 2^bits.size() on `bits` (most significant first).
/// Bits flip from the top down so the lower bits still hold their old
/// values when used as carries.
inline void controlled_increment(Circuit &out, int control,
                                 const std::vector<int> &bits,
                                 const std::vector<int> &work) {
    for (std::size_t j = 0; j < bits.size(); ++j) {
        std::vector<int> controls{control};
        controls.insert(controls.end(), bits.begin() + static_cast<long>(j) + 1,
                        bits.end());
        multi_controlled_x(out, controls, bits[j], work);
    }
}

} // namespace detail

/// Controlled-R with R|x> = |-x mod N>, N = 2^k. Two's-complement
/// negation: bit j flips iff some lower bit is set. For k = 2 this is one
/// Toffoli (a CNOT controlled by the least significant qubit).
inline GateSequence synth_controlled_reflection(int n_sys_qubits) {
    GateSequence seq = detail::empty_sequence(n_sys_qubits);
    const auto bits = detail::system_bits(seq);
    const auto work = detail::work_bits(seq);
    for (std::size_t j = 0; j + 1 < bits.size(); ++j) {
        const std::vector<int> lower(bits.begin() + static_cast<long>(j) + 1,
                                     bits.end());
        if (lower.size() == 1) {
            seq.gates.push_back(gates::toffoli(0, lower[0], bits[j]));
            continue;
        }
        // Flip, then flip back when every lower bit is 0.
        seq.gates.push_back(gates::cnot(0, bits[j]));
        for (int b : lower)
            seq.gates.push_back(gates::pauli_x(b));
        std::vector<int> controls{0};
        controls.insert(controls.end(), lower.begin(), lower.end());
        detail::multi_controlled_x(seq.gates, controls, bits[j], work);
        for (int b : lower)
            seq.gates.push_back(gates::pauli_x(b));
    }
    return seq;
}

/// Controlled-U^power for the cyclic shift U|x> = |x+1 mod N>. Adding
/// 2^s is an increment of the top k - s bits, one per set bit of power.
inline GateSequence synth_controlled_shift(int n_sys_qubits, long power) {
    GateSequence seq = detail::empty_sequence(n_sys_qubits);
    const long n = 1L << n_sys_qubits;
    const long reduced = ((power % n) + n) % n;
    const auto bits = detail::system_bits(seq);
    const auto work = detail::work_bits(seq);
    for (int s = 0; s < n_sys_qubits; ++s)
        if ((reduced >> s) & 1L) {
            const std::vector<int> upper(
                bits.begin(), bits.end() - static_cast<long>(s));
            detail::controlled_increment(seq.gates, 0, upper, work);
        }
    return seq;
}

/// Controlled-V^(-power). V = diag(exp(2 pi i x / N)) factorises over the
/// bits of x, so each system qubit gets one controlled phase.
inline GateSequence synth_controlled_vshift(int n_sys_qubits, long power) {
    GateSequence seq = detail::empty_sequence(n_sys_qubits);
    const long n = 1L << n_sys_qubits;
    const long reduced = ((power % n) + n) % n;
    for (int j = 0; j < n_sys_qubits; ++j) {
        const long weight = 1L << (n_sys_qubits - 1 - j);
        const long r = (n - (reduced * weight) % n) % n;
        if (r == 0)
            continue;
        seq.gates.push_back(gates::controlled_phase(
            0, 1 + j,
            2.0 * std::numbers::pi * static_cast<double>(r) /
                static_cast<double>(n)));
    }
    return seq;
}

/// Controlled-(2N A(q,p)): V^-p, then R, then U^q, then the scalar
/// exp(i pi p q / N) as a phase on the control qubit.
inline GateSequence synth_phase_point_circuit(const PhasePoint &alpha) {
    const std::size_t n = alpha.n();
    if (!is_power_of_two(n))
        fail(ErrorCode::DimensionMismatch,
             "synth_phase_point_circuit: N = " + std::to_string(n) +
                 " must be a power of two");
    const int k = qubit_count(n);
    GateSequence seq = detail::empty_sequence(k);
    for (const auto &part :
         {synth_controlled_vshift(k, alpha.p()), synth_controlled_reflection(k),
          synth_controlled_shift(k, alpha.q())})
        seq.gates.insert(seq.gates.end(), part.gates.begin(), part.gates.end());
    const auto pq = static_cast<std::size_t>(alpha.p()) *
                    static_cast<std::size_t>(alpha.q()) % (2 * n);
    if (pq != 0)
        seq.gates.push_back(gates::phase_shift(
            0, std::numbers::pi * static_cast<double>(pq) / static_cast<double>(n)));
    return seq;
}

/// Full unitary of the sequence on all its qubits.
inline UnitaryOperator compose(const GateSequence &seq) {
    return circuit_matrix(seq.gates, seq.num_qubits);
}

/// Block of compose(seq) with every work qubit |0> on input and output,
/// indexed by (control, system).
inline ComplexMatrix logical_operator(const GateSequence &seq) {
    const ComplexMatrix full = compose(seq).matrix();
    const int w = seq.work_qubits();
    const std::size_t dim = std::size_t{1} << (1 + seq.system_qubits);
    ComplexMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            out.set(r, c, full(r << w, c << w));
    return out;
}

/// |0><0| x I + |1><1| x U.
inline ComplexMatrix dense_controlled(const ComplexMatrix &u) {
    const auto n = static_cast<Eigen::Index>(u.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
    m.bottomRightCorner(n, n) = u.eigen();
    return ComplexMatrix(std::move(m));
}

struct SynthesisCheck {
    double max_error = 0.0;   ///< vs the dense controlled operator
    double leakage = 0.0;     ///< unitarity defect of the logical block
};

inline SynthesisCheck verify_against(const GateSequence &seq,
                                     const ComplexMatrix &target) {
    const ComplexMatrix logical = logical_operator(seq);
    return {max_abs_diff(logical, dense_controlled(target)),
            unitary_defect(logical)};
}

inline std::map<GateKind, int> gate_counts(const GateSequence &seq) {
    std::map<GateKind, int> counts;
    for (const auto &g : seq.gates)
        ++counts[g.kind];
    return counts;
}

/// W(alpha) measured through the synthesised gate sequence instead of a
/// dense controlled unitary.
inline double wigner_via_synthesis(const DensityMatrix &rho,
                                   const PhasePoint &alpha) {
    if (rho.dim() != alpha.n())
        fail(ErrorCode::DimensionMismatch,
             "wigner_via_synthesis: rho dim does not match the phase point");
    const GateSequence seq = synth_phase_point_circuit(alpha);
    const auto result = scatter_through(rho, seq.gates, seq.num_qubits);
    return result.sigma_z / (2.0 * static_cast<double>(alpha.n()));
}

} // namespace qscatter
