#include "simplexdecomp/simplex.hpp"

#include <cmath>
#include <string>

#include "simplexdecomp/errors.hpp"

namespace simplexdecomp {

RegularSimplex canonical_simplex(int ambient_dim) {
  if (ambient_dim < 1)
    throw InvalidDimension("canonical_simplex: ambient dimension must be >= 1, got " +
                           std::to_string(ambient_dim));
  Eigen::MatrixXd v(1, 2);
  v << 1.0, -1.0;
  for (int m = 2; m <= ambient_dim; ++m) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(m, m + 1);
    next(0, 0) = 1.0;
    next.block(0, 1, 1, m).setConstant(-1.0 / m);
    next.block(1, 1, m - 1, m) = std::sqrt(1.0 - 1.0 / (double(m) * m)) * v;
    v = std::move(next);
  }
  return RegularSimplex{std::move(v), kExactSimplexTol};
}

SimplexReport verify_simplex(const RegularSimplex& s) {
  const Eigen::Index m = s.ambient_dim();
  if (m < 1 || s.vertex_count() != m + 1)
    throw ContractViolation("verify_simplex: expected " + std::to_string(m + 1) + " vertices, got " +
                            std::to_string(s.vertex_count()));
  const Eigen::MatrixXd gram = s.vertices.transpose() * s.vertices;
  SimplexReport rep;
  for (Eigen::Index i = 0; i <= m; ++i) {
    rep.max_norm_dev = std::max(rep.max_norm_dev, std::abs(std::sqrt(gram(i, i)) - 1.0));
    for (Eigen::Index j = 0; j <= m; ++j)
      if (i != j) rep.max_dot_dev = std::max(rep.max_dot_dev, std::abs(gram(i, j) + 1.0 / double(m)));
  }
  rep.ok = rep.max_norm_dev <= s.tol && rep.max_dot_dev <= s.tol;
  return rep;
}

GramReport gram_identities(const RegularSimplex& s) {
  const Eigen::Index m = s.ambient_dim();
  GramReport rep;
  rep.sum_norm = s.vertices.rowwise().sum().norm();
  const Eigen::MatrixXd t = s.vertices * s.vertices.transpose();
  rep.gram_dev = (t - ((m + 1.0) / m) * Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  return rep;
}

Eigen::MatrixXd orthogonal_extension(const RegularSimplex& s) {
  if (!verify_simplex(s).ok) throw ContractViolation("orthogonal_extension: not a regular simplex");
  const Eigen::Index m = s.ambient_dim();
  Eigen::MatrixXd o(m + 1, m + 1);
  o.topRows(m) = s.vertices;
  o.row(m).setConstant(1.0 / std::sqrt(double(m)));
  return std::sqrt(m / (m + 1.0)) * o;
}

RegularSimplex rotated(const RegularSimplex& s, const Eigen::Ref<const Eigen::MatrixXd>& rotation) {
  if (rotation.rows() != s.ambient_dim() || rotation.cols() != s.ambient_dim())
    throw DimensionMismatch("rotated: rotation must be " + std::to_string(s.ambient_dim()) + " square");
  return RegularSimplex{rotation * s.vertices, s.tol};
}

}  // namespace simplexdecomp
