#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace simplexdecomp {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using CMatrix = ComplexMatrix<double>;
using CVector = ComplexVector<double>;
using Complex = std::complex<double>;

/// Largest absolute entry of `a - b`.
template <typename DerivedA, typename DerivedB>
auto max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Largest absolute entry of `m - m^dagger`.
template <typename Derived>
auto hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// (m + m^dagger) / 2
template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return Plain((m + m.adjoint()) / Scalar(2));
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = Eigen::kroneckerProduct(a.eval(), b.eval());
  return out;
}

/// Integer square root of a bipartite dimension N*N; throws if `dim` is not a perfect square >= 4.
inline Eigen::Index local_dimension(Eigen::Index dim) {
  Eigen::Index n = 1;
  while ((n + 1) * (n + 1) <= dim) ++n;
  if (n * n != dim || n < 2) {
    throw std::invalid_argument("matrix dimension " + std::to_string(dim) +
                                " is not N^2 for an integer N >= 2");
  }
  return n;
}

enum class Subsystem { First, Second };

/// Partial transpose of an N^2 x N^2 operator on C^N (x) C^N, basis index a*N + b.
template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, Subsystem which = Subsystem::Second) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_transpose: matrix is not square");
  const Eigen::Index n = local_dimension(m.rows());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m.rows(), m.cols());
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index d = 0; d < n; ++d) {
          if (which == Subsystem::Second)
            out(a * n + b, c * n + d) = m(a * n + d, c * n + b);
          else
            out(a * n + b, c * n + d) = m(c * n + b, a * n + d);
        }
  return out;
}

/// The swap operator V|i>|j> = |j>|i> on C^N (x) C^N.
template <typename Real = double>
ComplexMatrix<Real> swap_operator(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("swap_operator: N must be >= 2");
  ComplexMatrix<Real> v = ComplexMatrix<Real>::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(j * n + i, i * n + j) = Real(1);
  return v;
}

/// Projector onto (1/sqrt N) sum_i |ii>.
template <typename Real = double>
ComplexMatrix<Real> max_entangled_projector(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("max_entangled_projector: N must be >= 2");
  ComplexVector<Real> psi = ComplexVector<Real>::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) psi(i * n + i) = Real(1) / std::sqrt(Real(n));
  return psi * psi.adjoint();
}

}  // namespace simplexdecomp
