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

#include <fstream>

#include <nlohmann/json.hpp>

#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "qscatter/phasespace.hpp"
#include "qscatter/random.hpp"
#include "qscatter/states.hpp"

using namespace qscatter;

namespace {

double max_abs(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// The ideal grid of |q0><q0|: 1/2N on column 2 q0, (-1)^p / 2N on 2 q0 +- N.
std::vector<double> strip_pattern(std::size_t n, std::size_t q0) {
    const std::size_t side = 2 * n;
    std::vector<double> w(side * side, 0.0);
    const double h = 1.0 / static_cast<double>(side);
    for (std::size_t p = 0; p < side; ++p) {
        w[(2 * q0) * side + p] = h;
        w[((2 * q0 + n) % side) * side + p] = p % 2 == 0 ? h : -h;
    }
    return w;
}

nlohmann::json load_fixture(const std::string &name) {
    std::ifstream in(std::string(QSCATTER_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

} // namespace

TEST_CASE("shift and reflection examples", "[phasespace]") {
    const auto sx = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(shift_u(2).matrix() == sx);
    CHECK(max_abs_diff(power(shift_u(4).matrix(), 4), ComplexMatrix::identity(4)) == 0.0);
    for (std::size_t n : {2u, 4u, 8u}) {
        const auto u = shift_u(n).matrix();
        CHECK(u(0, n - 1) == Complex(1.0));
        for (std::size_t q = 0; q + 1 < n; ++q)
            CHECK(u(q + 1, q) == Complex(1.0));
    }

    const auto sz = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    CHECK(max_abs_diff(shift_v(2).matrix(), sz) < 1e-15);
    CHECK(max_abs_diff(power(shift_v(4).matrix(), 4), ComplexMatrix::identity(4)) < 1e-12);
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
        const auto v = shift_v(n).matrix();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                if (r == c) {
                    CHECK(std::abs(std::abs(v(r, c)) - 1.0) < 1e-12);
                    const auto want =
                        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                                            static_cast<double>(n));
                    CHECK(std::abs(v(r, c) - want) < 1e-12);
                } else {
                    CHECK(std::abs(v(r, c)) < 1e-12);
                }
            }
    }

    CHECK(reflection(2).matrix() == ComplexMatrix::identity(2));
    const auto r4 = reflection(4).matrix();
    CHECK(r4(0, 0) == Complex(1.0));
    CHECK(r4(2, 2) == Complex(1.0));
    CHECK(r4(3, 1) == Complex(1.0));
    CHECK(r4(1, 3) == Complex(1.0));
    for (std::size_t n : {2u, 4u, 8u})
        CHECK(power(reflection(n).matrix(), 2) == ComplexMatrix::identity(n));

    CHECK_THROWS_AS(shift_u(1), Error);
    CHECK_THROWS_AS(shift_v(0), Error);
    CHECK_THROWS_AS(reflection(1), Error);
}

TEST_CASE("phase-point operators", "[phasespace]") {
    for (std::size_t n : {2u, 4u, 8u}) {
        const int side = 2 * static_cast<int>(n);
        const auto r = scaled(reflection(n).matrix(), 1.0 / (2.0 * static_cast<double>(n)));
        CHECK(max_abs_diff(phase_point_operator(PhasePoint(0, 0, n)), r) < 1e-15);
        for (int q = 0; q < side; ++q)
            for (int p = 0; p < side; ++p) {
                const auto a = phase_point_operator(PhasePoint(q, p, n));
                CHECK(max_abs_diff(a, oracle::phase_point(n, q, p)) < 1e-12);
                CHECK(hermitian_defect(a) <= 1e-12);
                CHECK(unitary_defect(phase_point_unitary(PhasePoint(q, p, n)).matrix()) <=
                      1e-12);
            }
    }
}

TEST_CASE("phase-point traces for N=2", "[phasespace]") {
    // brute force: only A(0,0) = I/4 has a nonzero trace on the subgrid
    const double want[2][2] = {{0.5, 0.0}, {0.0, 0.0}};
    for (int q = 0; q < 2; ++q)
        for (int p = 0; p < 2; ++p) {
            const Complex t = trace(phase_point_operator(PhasePoint(q, p, 2)));
            CHECK(std::abs(t - oracle::trace(oracle::phase_point(2, q, p))) < 1e-15);
            CHECK(std::abs(t - want[q][p]) < 1e-15);
        }
}

TEST_CASE("phase-point operators are orthogonal on the subgrid", "[phasespace]") {
    for (std::size_t n : {2u, 4u, 8u}) {
        const auto nn = static_cast<Eigen::Index>(n * n);
        Eigen::MatrixXcd gram(nn, nn);
        for (Eigen::Index i = 0; i < nn; ++i)
            for (Eigen::Index j = 0; j < nn; ++j) {
                const auto a = oracle::phase_point(n, i / static_cast<long>(n),
                                                   i % static_cast<long>(n));
                const auto b = oracle::phase_point(n, j / static_cast<long>(n),
                                                   j % static_cast<long>(n));
                gram(i, j) = oracle::trace(oracle::matmul(a, b));
                const Complex lib = trace(matmul(
                    phase_point_operator(PhasePoint(static_cast<int>(i / static_cast<long>(n)),
                                                    static_cast<int>(i % static_cast<long>(n)), n)),
                    phase_point_operator(PhasePoint(static_cast<int>(j / static_cast<long>(n)),
                                                    static_cast<int>(j % static_cast<long>(n)), n))));
                const double want = i == j ? 1.0 / (4.0 * static_cast<double>(n)) : 0.0;
                CHECK(std::abs(lib - want) < 1e-12);
            }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
        CHECK(lu.rank() == nn);
    }
}

TEST_CASE("computational states give the strip pattern", "[phasespace]") {
    for (std::size_t q0 = 0; q0 < 4; ++q0) {
        const auto w = wigner_direct(basis_state(q0, 4));
        INFO("q0 = " << q0);
        CHECK(max_abs(w.values(), strip_pattern(4, q0)) < 1e-10);
        CHECK(w.max_imag_residue() < 1e-12);
    }
    for (std::size_t n : {2u, 8u})
        for (std::size_t q0 = 0; q0 < n; ++q0)
            CHECK(max_abs(wigner_direct(basis_state(q0, n)).values(),
                          strip_pattern(n, q0)) < 1e-10);
}

TEST_CASE("maximally mixed grid", "[phasespace]") {
    for (std::size_t n : {2u, 4u, 8u}) {
        const auto w = wigner_direct(maximally_mixed(n));
        const double c = 1.0 / static_cast<double>(n * n);
        for (std::size_t q = 0; q < w.side(); ++q)
            for (std::size_t p = 0; p < w.side(); ++p) {
                const double want = (q % 2 == 0 && p % 2 == 0) ? c : 0.0;
                CHECK(std::abs(w.at(q, p) - want) < 1e-12);
            }
    }
}

TEST_CASE("wigner_via_circuit examples", "[phasespace]") {
    const auto zero = basis_state(0, 4);
    CHECK(std::abs(wigner_via_circuit(zero, PhasePoint(0, 0, 4)) - 0.125) < 1e-10);
    CHECK(std::abs(wigner_via_circuit(zero, PhasePoint(4, 1, 4)) + 0.125) < 1e-10);
    CHECK(std::abs(wigner_via_circuit(zero, PhasePoint(1, 0, 4))) < 1e-10);
    CHECK_THROWS_AS(wigner_via_circuit(zero, PhasePoint(0, 0, 2)), Error);
}

TEST_CASE("circuit and direct Wigner functions agree", "[phasespace][property]") {
    Rng rng(41);
    for (std::size_t n : {2u, 4u, 8u})
        for (int trial = 0; trial < 3; ++trial) {
            const auto rho = random_density(n, rng);
            const auto w = wigner_direct(rho);
            const auto want = oracle::wigner(rho.matrix());
            CHECK(max_abs(w.values(), want) < 1e-12);
            double worst = 0.0;
            for (std::size_t q = 0; q < w.side(); ++q)
                for (std::size_t p = 0; p < w.side(); ++p)
                    worst = std::max(
                        worst, std::abs(wigner_via_circuit(
                                            rho, PhasePoint(static_cast<int>(q),
                                                            static_cast<int>(p), n)) -
                                        w.at(q, p)));
            CHECK(worst < 1e-10);
        }
}

TEST_CASE("Wigner functions are real and bounded", "[phasespace][property]") {
    for (std::size_t n : {2u, 4u, 8u}) {
        Rng rng(50 + n);
        double residue = 0.0;
        double peak = 0.0;
        for (int seed = 0; seed < 500; ++seed) {
            const auto w = wigner_direct(random_density(n, rng));
            residue = std::max(residue, w.max_imag_residue());
            for (double v : w.values())
                peak = std::max(peak, std::abs(v));
        }
        INFO("N = " << n);
        CHECK(residue < 1e-12);
        CHECK(peak <= 1.0 / (2.0 * static_cast<double>(n)) + 1e-10);
    }
}

TEST_CASE("overlap identity on the full grid", "[phasespace][property]") {
    for (std::size_t n : {2u, 4u, 8u}) {
        Rng rng(60 + n);
        double worst = 0.0;
        for (int seed = 0; seed < 100; ++seed) {
            const auto r1 = random_density(n, rng);
            const auto r2 = random_density(n, rng);
            const double want = oracle::trace(oracle::matmul(r1.matrix(), r2.matrix())).real();
            worst = std::max(worst, std::abs(wigner_overlap(wigner_direct(r1),
                                                            wigner_direct(r2)) -
                                             want));
        }
        INFO("N = " << n);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("summation-range calibration", "[phasespace]") {
    const auto fixture = load_fixture("phase_space_calibration.json");
    const std::size_t n = fixture.at("n").get<std::size_t>();
    REQUIRE(fixture.at("prefactor").get<std::size_t>() == n);
    Rng rng(70);
    for (int seed = 0; seed < 50; ++seed) {
        const auto r1 = random_density(n, rng);
        const auto r2 = random_density(n, rng);
        const auto w1 = wigner_direct(r1);
        const auto w2 = wigner_direct(r2);
        const double t = oracle::trace(oracle::matmul(r1.matrix(), r2.matrix())).real();
        CHECK(std::abs(wigner_overlap(w1, w2, GridRange::FirstQuadrant) / t -
                       fixture.at("subgrid_ratio").get<double>()) < 1e-10);
        CHECK(std::abs(wigner_overlap(w1, w2, GridRange::Full) / t -
                       fixture.at("full_grid_ratio").get<double>()) < 1e-10);

        const auto sub = reconstruct(w1, GridRange::FirstQuadrant);
        CHECK(max_abs_diff(sub.matrix, scaled(r1.matrix(), fixture.at("subgrid_ratio").get<double>())) <
              1e-10);
    }
    CHECK(fixture.at("summation").get<std::string>() == "full");
}

TEST_CASE("reconstruction round trip", "[phasespace][property]") {
    const auto zero = basis_state(0, 2);
    CHECK(max_abs_diff(reconstruct(wigner_direct(zero)).state().matrix(), zero.matrix()) <
          1e-10);
    const auto mixed = maximally_mixed(4);
    CHECK(max_abs_diff(reconstruct(wigner_direct(mixed)).state().matrix(), mixed.matrix()) <
          1e-10);

    for (std::size_t n : {2u, 4u, 8u}) {
        Rng rng(80 + n);
        double worst = 0.0;
        for (int seed = 0; seed < 100; ++seed) {
            const auto rho = random_density(n, rng);
            const auto back = reconstruct(wigner_direct(rho));
            REQUIRE(back.valid());
            worst = std::max(worst, max_abs_diff(back.matrix, rho.matrix()));
        }
        INFO("N = " << n);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("reconstruction flags grids that are not states", "[phasespace]") {
    std::vector<double> values(16, 0.0);
    values[0] = -1.0;
    const auto bad = reconstruct(WignerGrid(2, values));
    CHECK_FALSE(bad.valid());
    try {
        (void)bad.state();
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::InvalidState);
    }
    CHECK_THROWS_AS(WignerGrid(2, std::vector<double>(15)), Error);
}

TEST_CASE("line sums", "[phasespace]") {
    const long n = 4;
    for (long q0 = 0; q0 < n; ++q0) {
        const auto w = wigner_direct(basis_state(static_cast<std::size_t>(q0), 4));
        // vertical line q = c is (a,b) = (0,-1)
        CHECK(std::abs(line_sum(w, 0, -1, 2 * q0) - 1.0) < 1e-12);
        CHECK(std::abs(line_sum(w, 0, -1, (2 * q0 + n) % (2 * n))) < 1e-12);
        double even = 0.0;
        for (long c = 0; c < 2 * n; c += 2)
            even += line_sum(w, 0, -1, c);
        CHECK(std::abs(even - 1.0) < 1e-12);
    }

    const auto mixed = wigner_direct(maximally_mixed(4));
    for (long c = 0; c < 2 * n; ++c) {
        const double want = c % 2 == 0 ? 1.0 / static_cast<double>(n) : 0.0;
        CHECK(std::abs(line_sum(mixed, 1, 0, c) - want) < 1e-12);
    }

    CHECK_THROWS_AS(line_sum(mixed, 0, 0, 1), Error);
    CHECK_THROWS_AS(line_sum(mixed, 8, -8, 1), Error);
}

TEST_CASE("axis-parallel line sums are probabilities", "[phasespace][property]") {
    for (std::size_t n : {2u, 4u, 8u}) {
        Rng rng(90 + n);
        for (int seed = 0; seed < 50; ++seed) {
            const auto rho = random_density(n, rng);
            const auto w = wigner_direct(rho);
            const long side = static_cast<long>(w.side());
            for (long c = 0; c < side; ++c) {
                const double v = line_sum(w, 0, -1, c);
                const double h = line_sum(w, 1, 0, c);
                CHECK(v >= -1e-10);
                CHECK(v <= 1.0 + 1e-10);
                CHECK(h >= -1e-10);
                CHECK(h <= 1.0 + 1e-10);
                if (c % 2 == 0)
                    CHECK(std::abs(v - rho.matrix()(static_cast<std::size_t>(c / 2),
                                                    static_cast<std::size_t>(c / 2))
                                           .real()) < 1e-12);
            }
        }
    }
}

TEST_CASE("phase points validate their arguments", "[phasespace]") {
    CHECK_THROWS_AS(PhasePoint(0, 0, 3), Error);
    CHECK_THROWS_AS(PhasePoint(0, 0, 1), Error);
    CHECK_THROWS_AS(PhasePoint(8, 0, 4), Error);
    CHECK_THROWS_AS(PhasePoint(0, -1, 4), Error);
    CHECK_THROWS_AS(wigner_direct(maximally_mixed(3)), Error);
}
