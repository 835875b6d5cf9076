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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "qscatter/error.hpp"

namespace qscatter {

using Complex = std::complex<double>;

/// Max-norm tolerance for Hermiticity, unitarity and unit trace.
inline constexpr double kStructuralTol = 1e-12;
/// Eigenvalues above -kEigenTol count as non-negative.
inline constexpr double kEigenTol = 1e-10;

/// Dense square complex matrix. Every entry is finite and dim() >= 1.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(std::size_t dim) : data_(checked_zero(dim)) {}

    explicit ComplexMatrix(Eigen::MatrixXcd data) : data_(std::move(data)) {
        if (data_.rows() < 1 || data_.rows() != data_.cols())
            fail(ErrorCode::DimensionMismatch,
                 "matrix must be square with dim >= 1, got " +
                     std::to_string(data_.rows()) + "x" +
                     std::to_string(data_.cols()));
        if (!data_.allFinite())
            fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        m.data_.setIdentity();
        return m;
    }

    static ComplexMatrix
    from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXcd data(n, n);
        Eigen::Index r = 0;
        for (const auto &row : rows) {
            if (static_cast<Eigen::Index>(row.size()) != n)
                fail(ErrorCode::DimensionMismatch, "ragged row in from_rows");
            Eigen::Index c = 0;
            for (const auto &v : row)
                data(r, c++) = v;
            ++r;
        }
        return ComplexMatrix(std::move(data));
    }

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(data_.rows());
    }

    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return data_(static_cast<Eigen::Index>(row),
                     static_cast<Eigen::Index>(col));
    }

    void set(std::size_t row, std::size_t col, Complex value) {
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
            fail(ErrorCode::InvalidArgument, "non-finite matrix entry");
        data_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            value;
    }

    [[nodiscard]] const Eigen::MatrixXcd &eigen() const noexcept {
        return data_;
    }

    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) {
        return a.data_.rows() == b.data_.rows() && a.data_ == b.data_;
    }

  private:
    static Eigen::MatrixXcd checked_zero(std::size_t dim) {
        if (dim < 1)
            fail(ErrorCode::InvalidArgument, "matrix dim must be >= 1");
        const auto n = static_cast<Eigen::Index>(dim);
        return Eigen::MatrixXcd::Zero(n, n);
    }

    Eigen::MatrixXcd data_;
};

inline void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b,
                             const char *op) {
    if (a.dim() != b.dim())
        fail(ErrorCode::DimensionMismatch,
             std::string(op) + ": incompatible operands of dim " +
                 std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matmul");
    return ComplexMatrix(Eigen::MatrixXcd(a.eigen() * b.eigen()));
}

/// Tensor product with `a` as the most significant factor.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const auto na = static_cast<Eigen::Index>(a.dim());
    const auto nb = static_cast<Eigen::Index>(b.dim());
    Eigen::MatrixXcd out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i)
        for (Eigen::Index j = 0; j < na; ++j)
            out.block(i * nb, j * nb, nb, nb) = a.eigen()(i, j) * b.eigen();
    return ComplexMatrix(std::move(out));
}

inline Complex trace(const ComplexMatrix &a) { return a.eigen().trace(); }

inline ComplexMatrix dagger(const ComplexMatrix &a) {
    return ComplexMatrix(Eigen::MatrixXcd(a.eigen().adjoint()));
}

inline ComplexMatrix scaled(const ComplexMatrix &a, Complex factor) {
    return ComplexMatrix(Eigen::MatrixXcd(a.eigen() * factor));
}

inline ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "add");
    return ComplexMatrix(Eigen::MatrixXcd(a.eigen() + b.eigen()));
}

/// a^exponent by repeated squaring; exponent 0 gives the identity.
inline ComplexMatrix power(const ComplexMatrix &a, std::size_t exponent) {
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(
        static_cast<Eigen::Index>(a.dim()), static_cast<Eigen::Index>(a.dim()));
    Eigen::MatrixXcd base = a.eigen();
    while (exponent > 0) {
        if (exponent & 1U)
            result = result * base;
        exponent >>= 1U;
        if (exponent > 0)
            base = base * base;
    }
    return ComplexMatrix(std::move(result));
}

/// Largest entry magnitude of a - b.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "max_abs_diff");
    return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

inline double hermitian_defect(const ComplexMatrix &a) {
    return (a.eigen() - a.eigen().adjoint()).cwiseAbs().maxCoeff();
}

inline double unitary_defect(const ComplexMatrix &a) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    return (a.eigen().adjoint() * a.eigen() - Eigen::MatrixXcd::Identity(n, n))
        .cwiseAbs()
        .maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix &a, double tol = kStructuralTol) {
    return hermitian_defect(a) <= tol;
}

inline bool is_unitary(const ComplexMatrix &a, double tol = kStructuralTol) {
    return unitary_defect(a) <= tol;
}

/// Reason `m` is not a density matrix, or nullopt when it is one.
inline std::optional<std::string> density_violation(const ComplexMatrix &m) {
    if (const double d = hermitian_defect(m); d > kStructuralTol)
        return "not Hermitian (defect " + std::to_string(d) + ")";
    if (const Complex tr = trace(m); std::abs(tr - 1.0) > kStructuralTol)
        return "trace is not 1 (got " + std::to_string(tr.real()) + ")";
    // Symmetrize before the solver so it only sees the Hermitian part.
    const Eigen::MatrixXcd h = 0.5 * (m.eigen() + m.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        h, Eigen::EigenvaluesOnly);
    if (const double lo = solver.eigenvalues().minCoeff(); lo < -kEigenTol)
        return "not positive semidefinite (min eigenvalue " +
               std::to_string(lo) + ")";
    return std::nullopt;
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
  public:
    /// Validates every invariant; throws InvalidState on violation.
    static DensityMatrix from(ComplexMatrix m) {
        if (auto why = density_violation(m))
            fail(ErrorCode::InvalidState, "not a density matrix: " + *why);
        return DensityMatrix(std::move(m));
    }

    /// For results of invariant-preserving maps (unitary conjugation,
    /// convex combination). No checks.
    static DensityMatrix assume_valid(ComplexMatrix m) {
        return DensityMatrix(std::move(m));
    }

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.dim(); }

  private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// Matrix with U^dagger U = I within kStructuralTol.
class UnitaryOperator {
  public:
    static UnitaryOperator from(ComplexMatrix m,
                                double tol = kStructuralTol) {
        if (const double d = unitary_defect(m); d > tol)
            fail(ErrorCode::InvalidState,
                 "not unitary (defect " + std::to_string(d) + ")");
        return UnitaryOperator(std::move(m));
    }

    static UnitaryOperator assume_valid(ComplexMatrix m) {
        return UnitaryOperator(std::move(m));
    }

    static UnitaryOperator identity(std::size_t dim) {
        return UnitaryOperator(ComplexMatrix::identity(dim));
    }

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.dim(); }

    [[nodiscard]] UnitaryOperator adjoint() const {
        return UnitaryOperator(dagger(m_));
    }

  private:
    explicit UnitaryOperator(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

inline UnitaryOperator matmul(const UnitaryOperator &a,
                              const UnitaryOperator &b) {
    return UnitaryOperator::assume_valid(matmul(a.matrix(), b.matrix()));
}

/// F[p][q] = exp(+2 pi i p q / n) / sqrt(n).
inline UnitaryOperator dft_matrix(std::size_t n) {
    if (n < 1)
        fail(ErrorCode::InvalidArgument, "dft_matrix: n must be >= 1");
    const auto dim = static_cast<Eigen::Index>(n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd f(dim, dim);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            // Reduce before scaling so large products keep full precision.
            const double angle = 2.0 * std::numbers::pi *
                                 static_cast<double>((p * q) % n) /
                                 static_cast<double>(n);
            f(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
                std::polar(norm, angle);
        }
    return UnitaryOperator::assume_valid(ComplexMatrix(std::move(f)));
}

inline bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
inline int qubit_count(std::size_t dim) {
    int k = 0;
    while ((std::size_t{1} << k) < dim)
        ++k;
    return k;
}

} // namespace qscatter
