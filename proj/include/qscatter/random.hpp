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

#include <cstdint>
#include <random>

#include "qscatter/linalg.hpp"

namespace qscatter {

using Rng = std::mt19937_64;

inline Eigen::MatrixXcd ginibre(std::size_t dim, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < n; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    return g;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the
/// phases of R's diagonal folded back into Q.
inline UnitaryOperator haar_unitary(std::size_t dim, Rng &rng) {
    const Eigen::MatrixXcd g = ginibre(dim, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex d = r(k, k);
        const double mag = std::abs(d);
        if (mag > 0.0)
            q.col(k) *= d / mag;
    }
    return UnitaryOperator::from(ComplexMatrix(std::move(q)));
}

/// rho = G G^dagger / Tr(G G^dagger) for complex Gaussian G.
inline DensityMatrix random_density(std::size_t dim, Rng &rng) {
    const Eigen::MatrixXcd g = ginibre(dim, rng);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix::from(ComplexMatrix(std::move(rho)));
}

} // namespace qscatter
