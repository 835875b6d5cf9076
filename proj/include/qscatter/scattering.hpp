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

#include <numeric>
#include <vector>

#include "qscatter/circuit.hpp"
#include "qscatter/linalg.hpp"

namespace qscatter {

/// Probe polarization after the scattering circuit. Re Tr(U rho) is
/// <sigma_z> and Im Tr(U rho) is -<sigma_x>. `sigma_x` is the transverse
/// component in phase with -Im Tr(U rho); after the final Hadamard that
/// is the probe's sigma_y axis, since sigma_x itself reads zero there.
struct ScatteringResult {
    double sigma_z = 0.0;
    double sigma_x = 0.0;

    [[nodiscard]] Complex trace_estimate() const { return {sigma_z, -sigma_x}; }
};

/// Joint state |0><0| (probe) x rho x |0..0><0..0| (work qubits).
/// The probe is the most significant qubit.
inline DensityMatrix attach_probe(const DensityMatrix &rho, int work_qubits = 0) {
    const ComplexMatrix probe = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    ComplexMatrix joint = kron(probe, rho.matrix());
    if (work_qubits > 0) {
        ComplexMatrix work(std::size_t{1} << work_qubits);
        work.set(0, 0, 1.0);
        joint = kron(joint, work);
    }
    return DensityMatrix::assume_valid(std::move(joint));
}

/// Runs H(probe), `controlled_u`, H(probe) on |0><0| x rho x |0><0|^work
/// and reads the probe's polarization. `controlled_u` must act on qubit 0 as control,
/// qubits 1..k as the system and any further qubits as clean work space.
inline ScatteringResult scatter_through(const DensityMatrix &rho,
                                        const Circuit &controlled_u,
                                        int num_qubits) {
    const int sys = register_qubits(rho.dim());
    const int work = num_qubits - 1 - sys;
    if (work < 0)
        fail(ErrorCode::DimensionMismatch,
             "circuit register of " + std::to_string(num_qubits) +
                 " qubits cannot hold a probe and " + std::to_string(sys) +
                 " system qubits");
    DensityMatrix state = attach_probe(rho, work);
    state = apply(state, gates::hadamard(0));
    state = run(std::move(state), controlled_u);
    state = apply(state, gates::hadamard(0));
    return {pauli_expectation(state, PauliAxis::Z, 0),
            pauli_expectation(state, PauliAxis::Y, 0)};
}

/// Simulates the probe circuit for Tr(U rho): Hadamard on the probe,
/// controlled-U onto the system, Hadamard again, then exact <sigma_z> and
/// <sigma_x> of the probe.
inline ScatteringResult scattering_circuit(const DensityMatrix &rho,
                                           const UnitaryOperator &u) {
    if (u.dim() != rho.dim())
        fail(ErrorCode::DimensionMismatch,
             "scattering_circuit: rho has dim " + std::to_string(rho.dim()) +
                 " but U has dim " + std::to_string(u.dim()));
    if (!is_power_of_two(rho.dim()) || rho.dim() < 2)
        fail(ErrorCode::DimensionMismatch,
             "scattering_circuit: system dim " + std::to_string(rho.dim()) +
                 " must be a power of two >= 2 to embed in qubits");
    const int sys = register_qubits(rho.dim());
    std::vector<int> system(static_cast<std::size_t>(sys));
    std::iota(system.begin(), system.end(), 1);
    return scatter_through(rho, {gates::controlled_unitary(0, system, u)},
                           sys + 1);
}

/// Tr(U rho) by plain matrix arithmetic; any dimension.
inline Complex direct_trace(const DensityMatrix &rho, const UnitaryOperator &u) {
    if (u.dim() != rho.dim())
        fail(ErrorCode::DimensionMismatch,
             "direct_trace: rho has dim " + std::to_string(rho.dim()) +
                 " but U has dim " + std::to_string(u.dim()));
    return trace(matmul(u.matrix(), rho.matrix()));
}

} // namespace qscatter
