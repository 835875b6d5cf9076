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
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qscatter/circuit.hpp"
#include "qscatter/linalg.hpp"
#include "qscatter/parallel.hpp"

namespace qscatter {

/// Largest register (probe + counter + system) the circuit spectrometer runs.
inline constexpr int kSpectrometerQubitBudget = 12;

/// values[t] = Tr(U^t) for t = 0..t_max.
struct TraceSeries {
    std::vector<Complex> values;

    [[nodiscard]] std::size_t t_max() const noexcept { return values.size() - 1; }
};

/// Traces of powers from the eigenphases: Tr(U^t) = sum_k exp(i t phi_k).
inline TraceSeries trace_powers(const UnitaryOperator &u, std::size_t t_max) {
    if (t_max < 1)
        fail(ErrorCode::InvalidArgument, "trace_powers: t_max must be >= 1");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u.matrix().eigen(),
                                                       false);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::InvalidState, "trace_powers: eigensolver failed");
    std::vector<double> phases;
    for (const Complex &lambda : solver.eigenvalues())
        phases.push_back(std::arg(lambda));
    TraceSeries out{std::vector<Complex>(t_max + 1)};
    out.values[0] = static_cast<double>(u.dim());
    for (std::size_t t = 1; t <= t_max; ++t) {
        Complex sum = 0.0;
        for (double phi : phases)
            sum += std::polar(1.0, std::remainder(static_cast<double>(t) * phi,
                                                  2.0 * std::numbers::pi));
        out.values[t] = sum;
    }
    return out;
}

/// Same series by repeated multiplication; the cross-check route.
inline TraceSeries trace_powers_by_multiplication(const UnitaryOperator &u,
                                                  std::size_t t_max) {
    if (t_max < 1)
        fail(ErrorCode::InvalidArgument, "trace_powers: t_max must be >= 1");
    TraceSeries out{std::vector<Complex>(t_max + 1)};
    out.values[0] = static_cast<double>(u.dim());
    Eigen::MatrixXcd acc = u.matrix().eigen();
    for (std::size_t t = 1; t <= t_max; ++t) {
        out.values[t] = acc.trace();
        if (t < t_max)
            acc = acc * u.matrix().eigen();
    }
    return out;
}

enum class SpectrumKind { Density, Structure };

/// Real series over counter labels E = 0 .. 2^n1 - 1.
///
/// The counter register enumerates M = 2^n1 values, so the sums run over
/// t = 0..T with T = 2^n1 - 1 and are normalised by M = T + 1.
struct SpectralSeries {
    SpectrumKind kind = SpectrumKind::Density;
    int n1 = 0;
    std::vector<double> bins;

    [[nodiscard]] std::size_t t_max() const noexcept {
        return (std::size_t{1} << n1) - 1;
    }
    [[nodiscard]] std::size_t period() const noexcept {
        return std::size_t{1} << n1;
    }

    /// Eigenphase (density) or phase difference (structure) in [0, 2 pi)
    /// that bin E responds to. The density samples g at 2E, so its bins
    /// step by 4 pi / M and wrap twice over the counter range.
    [[nodiscard]] double phase(std::size_t e) const {
        const double step = (kind == SpectrumKind::Density ? 4.0 : 2.0) *
                            std::numbers::pi / static_cast<double>(period());
        const double two_pi = 2.0 * std::numbers::pi;
        double phi = std::fmod(-step * static_cast<double>(e), two_pi);
        if (phi < 0.0)
            phi += two_pi;
        if (phi >= two_pi)
            phi -= two_pi;
        return phi;
    }
};

namespace detail {

inline void check_n1(int n1) {
    if (n1 < 2)
        fail(ErrorCode::InvalidArgument,
             "spectrometer: n1 must be >= 2, got " + std::to_string(n1));
    if (n1 > 20)
        fail(ErrorCode::QubitBudget,
             "spectrometer: n1 = " + std::to_string(n1) + " is too large");
}

/// Re[sum_t exp(i 2 pi freq E t / M) series[t]] / (norm M) for every E.
inline std::vector<double> fourier_bins(const std::vector<Complex> &series,
                                        std::size_t freq, double norm) {
    const std::size_t m = series.size();
    std::vector<double> bins(m);
    for (std::size_t e = 0; e < m; ++e) {
        Complex sum = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            // Reduce the integer phase first; exact for any E, t.
            const std::size_t k = (freq * e * t) % m;
            sum += std::polar(1.0, 2.0 * std::numbers::pi *
                                       static_cast<double>(k) /
                                       static_cast<double>(m)) *
                   series[t];
        }
        bins[e] = sum.real() / (norm * static_cast<double>(m));
    }
    return bins;
}

} // namespace detail

/// g(2E) = Re[sum_{t=0}^{T} exp(4 pi i E t / M) Tr(U^t)] / (N M).
inline SpectralSeries spectral_density(const UnitaryOperator &u, int n1) {
    detail::check_n1(n1);
    const std::size_t t_max = (std::size_t{1} << n1) - 1;
    const TraceSeries traces = trace_powers(u, t_max);
    return {SpectrumKind::Density, n1,
            detail::fourier_bins(traces.values, 2,
                                 static_cast<double>(u.dim()))};
}

/// S(E) = Re[sum_{t=0}^{T} exp(2 pi i E t / M) |Tr U^t|^2] / (N^2 M).
inline SpectralSeries structure_function(const UnitaryOperator &u, int n1) {
    detail::check_n1(n1);
    const std::size_t t_max = (std::size_t{1} << n1) - 1;
    const TraceSeries traces = trace_powers(u, t_max);
    std::vector<Complex> sq(traces.values.size());
    for (std::size_t t = 0; t < sq.size(); ++t)
        sq[t] = std::norm(traces.values[t]);
    const double n = static_cast<double>(u.dim());
    return {SpectrumKind::Structure, n1, detail::fourier_bins(sq, 1, n * n)};
}

/// Controlled part of the spectrometer on probe (qubit 0), counter
/// (qubits 1..n1, qubit 1 most significant) and system (the rest):
/// the counter gets F^dagger when the probe is |0> and F when it is |1>,
/// then |t>|n> -> |t> U^t |n> on the probe's |1> branch, built from
/// probe-and-counter-bit controlled U^(2^j).
inline Circuit spectrometer_controlled_ops(const UnitaryOperator &u, int n1) {
    const int sys = register_qubits(u.dim());
    const std::size_t m = std::size_t{1} << n1;
    const UnitaryOperator f = dft_matrix(m);
    std::vector<int> counter(static_cast<std::size_t>(n1));
    std::iota(counter.begin(), counter.end(), 1);
    std::vector<int> system(static_cast<std::size_t>(sys));
    std::iota(system.begin(), system.end(), 1 + n1);

    Circuit ops;
    ops.push_back(gates::pauli_x(0));
    ops.push_back(gates::controlled_unitary(0, counter, f.adjoint()));
    ops.push_back(gates::pauli_x(0));
    ops.push_back(gates::controlled_unitary(0, counter, f));

    const auto n = static_cast<Eigen::Index>(u.dim());
    for (int j = 0; j < n1; ++j) {
        const std::size_t weight = std::size_t{1} << (n1 - 1 - j);
        Eigen::MatrixXcd cu = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
        cu.bottomRightCorner(n, n) = power(u.matrix(), weight).eigen();
        std::vector<int> targets{1 + j};
        targets.insert(targets.end(), system.begin(), system.end());
        ops.push_back(gates::controlled_unitary(
            0, targets, UnitaryOperator::assume_valid(ComplexMatrix(std::move(cu)))));
    }
    return ops;
}

/// Probe <sigma_z> of the three-register circuit for every counter input
/// |E>, with the system maximally mixed. Exact; the mixed system is carried
/// as the ensemble of its N basis states.
inline SpectralSeries spectral_density_via_circuit(const UnitaryOperator &u,
                                                   int n1) {
    detail::check_n1(n1);
    if (!is_power_of_two(u.dim()) || u.dim() < 2)
        fail(ErrorCode::DimensionMismatch,
             "spectral_density_via_circuit: U dim " + std::to_string(u.dim()) +
                 " must be a power of two >= 2");
    const int sys = register_qubits(u.dim());
    const int total = 1 + n1 + sys;
    if (total > kSpectrometerQubitBudget)
        fail(ErrorCode::QubitBudget,
             "spectrometer needs " + std::to_string(total) +
                 " qubits (1 probe + " + std::to_string(n1) + " counter + " +
                 std::to_string(sys) + " system); the budget is " +
                 std::to_string(kSpectrometerQubitBudget));

    const Circuit controlled = spectrometer_controlled_ops(u, n1);
    const std::size_t m = std::size_t{1} << n1;
    const auto n = static_cast<Eigen::Index>(u.dim());
    const auto dim = Eigen::Index{1} << total;
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));

    std::vector<double> bins(m);
    parallel_for(m, [&](std::size_t e) {
        Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(dim, n);
        for (Eigen::Index k = 0; k < n; ++k)
            cols(static_cast<Eigen::Index>(e) * n + k, k) = amp;
        EnsembleState state(total, std::move(cols));
        state.apply(gates::hadamard(0));
        for (const auto &g : controlled)
            state.apply(g);
        state.apply(gates::hadamard(0));
        bins[e] = state.pauli_expectation(PauliAxis::Z, 0);
    });
    return {SpectrumKind::Density, n1, std::move(bins)};
}

/// Indices of circular local maxima of bins[0, count) whose value exceeds
/// `fraction` of the largest value in that range.
inline std::vector<std::size_t> find_peaks(const std::vector<double> &bins,
                                           std::size_t count,
                                           double fraction = 0.5) {
    std::vector<std::size_t> peaks;
    if (count == 0)
        return peaks;
    double top = bins[0];
    for (std::size_t i = 1; i < count; ++i)
        top = std::max(top, bins[i]);
    for (std::size_t i = 0; i < count; ++i) {
        const double left = bins[(i + count - 1) % count];
        const double right = bins[(i + 1) % count];
        if (bins[i] > left && bins[i] >= right && bins[i] > fraction * top)
            peaks.push_back(i);
    }
    return peaks;
}

} // namespace qscatter
