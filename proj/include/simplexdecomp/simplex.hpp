#pragma once

#include <Eigen/Dense>

namespace simplexdecomp {

inline constexpr double kExactSimplexTol = 1e-10;
inline constexpr double kOptimizedSimplexTol = 1e-7;

/// M+1 unit vectors in R^M with pairwise inner product -1/M, stored as the columns of
/// an M x (M+1) matrix.
struct RegularSimplex {
  Eigen::MatrixXd vertices;
  double tol = kExactSimplexTol;

  Eigen::Index ambient_dim() const { return vertices.rows(); }
  Eigen::Index vertex_count() const { return vertices.cols(); }
  auto vertex(Eigen::Index i) const { return vertices.col(i); }
};

/// Deterministic recursive construction: a cap vertex e_1 plus the (M-1)-simplex scaled
/// by sqrt(1 - 1/M^2) and shifted to first coordinate -1/M.
RegularSimplex canonical_simplex(int ambient_dim);

struct SimplexReport {
  double max_norm_dev = 0;
  double max_dot_dev = 0;
  bool ok = false;
};

SimplexReport verify_simplex(const RegularSimplex& s);

struct GramReport {
  double sum_norm = 0;  ///< |sum_i a_i|
  double gram_dev = 0;  ///< max |sum_i a_i a_i^T - ((M+1)/M) 1|
};

GramReport gram_identities(const RegularSimplex& s);

/// sqrt(M/(M+1)) * [A ; (1/sqrt M) 1^T]; orthogonal exactly when A is a regular simplex.
Eigen::MatrixXd orthogonal_extension(const RegularSimplex& s);

/// Applies `rotation` (M x M, orthogonal) to every vertex.
RegularSimplex rotated(const RegularSimplex& s, const Eigen::Ref<const Eigen::MatrixXd>& rotation);

}  // namespace simplexdecomp
