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

#include <numbers>

#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "qscatter/random.hpp"
#include "qscatter/scattering.hpp"
#include "qscatter/states.hpp"

using namespace qscatter;

namespace {

const UnitaryOperator kSigmaZ =
    UnitaryOperator::from(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}));

Complex oracle_trace(const DensityMatrix &rho, const UnitaryOperator &u) {
    return oracle::trace(oracle::matmul(u.matrix(), rho.matrix()));
}

} // namespace

TEST_CASE("scattering examples", "[scattering]") {
    for (std::size_t n : {2u, 4u, 8u}) {
        const auto r = scattering_circuit(maximally_mixed(n), UnitaryOperator::identity(n));
        CHECK(std::abs(r.sigma_z - 1.0) < 1e-12);
        CHECK(std::abs(r.sigma_x) < 1e-12);
    }

    const auto zero = basis_state(0, 2);
    CHECK(std::abs(scattering_circuit(zero, kSigmaZ).trace_estimate() - 1.0) < 1e-12);
    CHECK(std::abs(direct_trace(zero, kSigmaZ) - 1.0) < 1e-15);

    const auto h = gate_matrix(gates::hadamard(0), 1);
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(scattering_circuit(zero, h).trace_estimate() - r) < 1e-12);
    CHECK(std::abs(direct_trace(zero, h) - r) < 1e-15);

    const auto cx = gate_matrix(gates::cnot(0, 1), 2);
    const auto zz = basis_state(0, 4);
    CHECK(std::abs(scattering_circuit(zz, cx).trace_estimate() - 1.0) < 1e-12);
    CHECK(std::abs(direct_trace(zz, cx) - 1.0) < 1e-15);
}

TEST_CASE("sigma_x carries minus the imaginary part", "[scattering]") {
    // Tr(S |+><+|) = (1 + i)/2 for S = diag(1, i)
    const auto s = UnitaryOperator::from(
        ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, Complex(0.0, 1.0)}}));
    const auto plus = apply(basis_state(0, 2), gates::hadamard(0));
    const auto r = scattering_circuit(plus, s);
    CHECK(std::abs(r.sigma_z - 0.5) < 1e-12);
    CHECK(std::abs(r.sigma_x + 0.5) < 1e-12);
}

TEST_CASE("circuit and direct trace agree", "[scattering][property]") {
    for (std::size_t dim : {2u, 4u, 8u, 16u}) {
        Rng rng(1000 + dim);
        double worst = 0.0;
        for (int seed = 0; seed < 500; ++seed) {
            const auto rho = random_density(dim, rng);
            const auto u = haar_unitary(dim, rng);
            const auto r = scattering_circuit(rho, u);
            const Complex want = oracle_trace(rho, u);
            worst = std::max(worst, std::abs(r.trace_estimate() - want));
            worst = std::max(worst, std::abs(direct_trace(rho, u) - want));
            REQUIRE(std::norm(r.trace_estimate()) <= 1.0 + 1e-10);
            REQUIRE(r.sigma_z * r.sigma_z + r.sigma_x * r.sigma_x <= 1.0 + 1e-10);
        }
        INFO("dim " << dim);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("trace estimate is linear in rho", "[scattering][property]") {
    Rng rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto r1 = random_density(4, rng);
        const auto r2 = random_density(4, rng);
        const auto u = haar_unitary(4, rng);
        const double a = unit(rng);
        const auto mix = DensityMatrix::from(
            add(scaled(r1.matrix(), a), scaled(r2.matrix(), 1.0 - a)));
        const Complex lhs = scattering_circuit(mix, u).trace_estimate();
        const Complex rhs = a * scattering_circuit(r1, u).trace_estimate() +
                            (1.0 - a) * scattering_circuit(r2, u).trace_estimate();
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("scattering errors", "[scattering]") {
    Rng rng(5);
    const auto rho3 = random_density(3, rng);
    const auto u3 = haar_unitary(3, rng);
    try {
        (void)scattering_circuit(rho3, u3);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
        CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("power of two"));
    }
    // the direct path has no qubit constraint
    CHECK(std::abs(direct_trace(rho3, u3) - oracle_trace(rho3, u3)) < 1e-14);

    CHECK_THROWS_AS(scattering_circuit(maximally_mixed(2), haar_unitary(4, rng)), Error);
    CHECK_THROWS_AS(direct_trace(maximally_mixed(2), haar_unitary(4, rng)), Error);
}

TEST_CASE("scatter_through accepts clean work qubits", "[scattering]") {
    Rng rng(6);
    const auto rho = random_density(4, rng);
    const auto u = haar_unitary(4, rng);
    const auto r = scatter_through(rho, {gates::controlled_unitary(0, {1, 2}, u)}, 5);
    CHECK(std::abs(r.trace_estimate() - oracle_trace(rho, u)) < 1e-12);
    CHECK_THROWS_AS(scatter_through(rho, {}, 2), Error);
}
