#include "simplexdecomp/random.hpp"

namespace simplexdecomp {

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) g(r, c) = Complex(normal(rng), normal(rng));
  return g;
}

}  // namespace

CMatrix haar_unitary(int n, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(ginibre(n, n, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

Eigen::MatrixXd random_orthogonal(int m, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(m, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) g(r, c) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  for (int i = 0; i < m; ++i)
    if (qr.matrixQR()(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

CMatrix random_density(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return hermitian_part(rho);
}

CMatrix random_pure_state(int n, Rng& rng) {
  CVector v = ginibre(n, 1, rng).col(0);
  v.normalize();
  return v * v.adjoint();
}

}  // namespace simplexdecomp
