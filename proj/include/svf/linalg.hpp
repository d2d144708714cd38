#pragma once

// Dense complex linear algebra kernel. Everything here is a free function over
// Eigen expressions, so callers can pass products and sums without naming a
// temporary. Results are templated on the real scalar of the input.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <functional>
#include <string>

#include "svf/error.hpp"

namespace svf {

template <typename Real>
using MatrixX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = MatrixX<double>;
using RealVector = RealVectorX<double>;

/// Tolerances per real scalar. Structural predicates (Hermitian, positive,
/// projection) use `structural`; reconstruction and equality checks use
/// `equality`. Both are relative to max(1, |a|).
template <typename Real>
struct Tolerance;

template <>
struct Tolerance<double> {
  static constexpr double structural = 1e-12;
  static constexpr double equality = 1e-10;
};

template <>
struct Tolerance<float> {
  static constexpr float structural = 1e-5f;
  static constexpr float equality = 1e-4f;
};

template <typename Real>
struct SvdResult {
  RealVectorX<Real> singular_values;  // descending, non-negative
  MatrixX<Real> left_vectors;
  MatrixX<Real> right_vectors;
};

template <typename Real>
struct HermitianEigen {
  RealVectorX<Real> eigenvalues;  // descending
  MatrixX<Real> eigenvectors;     // columns match eigenvalues
};

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

namespace detail {

template <typename Derived>
void require_square_finite(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) {
    throw Error(Errc::ShapeMismatch, "matrix must be square");
  }
  if (!a.allFinite()) {
    throw Error(Errc::NonFinite, "matrix has NaN or Inf entries");
  }
}

// Jacobi is the most accurate choice at small dimensions; divide and conquer
// keeps the large diagonal cross-checks tractable.
template <typename Real>
constexpr Eigen::Index kJacobiMaxDim = 32;

}  // namespace detail

template <typename Derived>
SvdResult<RealOf<Derived>> svd(const Eigen::MatrixBase<Derived>& a) {
  using Real = RealOf<Derived>;
  detail::require_square_finite(a);
  const MatrixX<Real> m = a.template cast<std::complex<Real>>();
  constexpr unsigned opts = Eigen::ComputeFullU | Eigen::ComputeFullV;
  if (m.rows() <= detail::kJacobiMaxDim<Real>) {
    Eigen::JacobiSVD<MatrixX<Real>> solver(m, opts);
    return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
  }
  Eigen::BDCSVD<MatrixX<Real>> solver(m, opts);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

/// Singular values only, descending.
template <typename Derived>
RealVectorX<RealOf<Derived>> singular_values(const Eigen::MatrixBase<Derived>& a) {
  using Real = RealOf<Derived>;
  detail::require_square_finite(a);
  const MatrixX<Real> m = a.template cast<std::complex<Real>>();
  if (m.rows() == 0) return {};
  if (m.rows() <= detail::kJacobiMaxDim<Real>) {
    return Eigen::JacobiSVD<MatrixX<Real>>(m).singularValues();
  }
  return Eigen::BDCSVD<MatrixX<Real>>(m).singularValues();
}

template <typename Derived>
RealOf<Derived> operator_norm(const Eigen::MatrixBase<Derived>& a) {
  const auto values = singular_values(a);
  return values.size() == 0 ? RealOf<Derived>(0) : values(0);
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a) {
  using Real = RealOf<Derived>;
  detail::require_square_finite(a);
  const MatrixX<Real> m = a.template cast<std::complex<Real>>();
  const Real scale = std::max<Real>(Real(1), operator_norm(m));
  return operator_norm(MatrixX<Real>(m - m.adjoint())) <= Tolerance<Real>::structural * scale;
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues descending.
template <typename Derived>
HermitianEigen<RealOf<Derived>> hermitian_eigen(const Eigen::MatrixBase<Derived>& a) {
  using Real = RealOf<Derived>;
  if (!is_hermitian(a)) {
    throw Error(Errc::NotHermitian, "hermitian_eigen requires a = a*");
  }
  const MatrixX<Real> m = a.template cast<std::complex<Real>>();
  const MatrixX<Real> sym = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<MatrixX<Real>> solver(sym);
  // Eigen sorts ascending.
  const Eigen::Index n = sym.rows();
  HermitianEigen<Real> out{RealVectorX<Real>(n), MatrixX<Real>(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

template <typename Derived>
bool is_positive(const Eigen::MatrixBase<Derived>& a) {
  using Real = RealOf<Derived>;
  if (!is_hermitian(a)) return false;
  const auto eig = hermitian_eigen(a);
  if (eig.eigenvalues.size() == 0) return true;
  const Real scale = std::max<Real>(Real(1), eig.eigenvalues.cwiseAbs().maxCoeff());
  return eig.eigenvalues.minCoeff() >= -Tolerance<Real>::structural * scale;
}

/// |a| = (a*a)^{1/2}, built from the right singular vectors so it stays
/// accurate when a is close to singular.
template <typename Derived>
MatrixX<RealOf<Derived>> absolute_value(const Eigen::MatrixBase<Derived>& a) {
  using Real = RealOf<Derived>;
  const auto s = svd(a);
  const auto& v = s.right_vectors;
  MatrixX<Real> out = v * s.singular_values.template cast<std::complex<Real>>().asDiagonal() * v.adjoint();
  return (out + out.adjoint()) / Real(2);
}

/// f(a) for positive a via the eigenbasis. f must satisfy f(0) = 0 and be
/// increasing on the spectrum; eigenvalues within the structural tolerance of
/// zero are snapped to zero before f is applied.
template <typename Derived>
MatrixX<RealOf<Derived>> apply_scalar_function(const Eigen::MatrixBase<Derived>& a,
                                               const std::function<RealOf<Derived>(RealOf<Derived>)>& f) {
  using Real = RealOf<Derived>;
  if (f(Real(0)) != Real(0)) {
    throw Error(Errc::BadScalarFunction, "f(0) must be 0");
  }
  if (!is_hermitian(a)) {
    throw Error(Errc::NotPositive, "apply_scalar_function requires a positive matrix");
  }
  const auto eig = hermitian_eigen(a);
  const Eigen::Index n = eig.eigenvalues.size();
  if (n == 0) return MatrixX<Real>(0, 0);
  const Real scale = std::max<Real>(Real(1), eig.eigenvalues.cwiseAbs().maxCoeff());
  const Real cutoff = Tolerance<Real>::structural * scale;
  if (eig.eigenvalues.minCoeff() < -cutoff) {
    throw Error(Errc::NotPositive, "matrix has a negative eigenvalue");
  }
  RealVectorX<Real> mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real lambda = eig.eigenvalues(i) <= cutoff ? Real(0) : eig.eigenvalues(i);
    mapped(i) = f(lambda);
    if (!std::isfinite(mapped(i)) || mapped(i) < Real(0)) {
      throw Error(Errc::BadScalarFunction, "f must map the spectrum into [0, inf)");
    }
    if (i > 0 && mapped(i) > mapped(i - 1) + Tolerance<Real>::structural * std::max(Real(1), mapped(0))) {
      throw Error(Errc::BadScalarFunction, "f must be increasing on the spectrum");
    }
  }
  const auto& u = eig.eigenvectors;
  MatrixX<Real> out = u * mapped.template cast<std::complex<Real>>().asDiagonal() * u.adjoint();
  return (out + out.adjoint()) / Real(2);
}

}  // namespace svf
