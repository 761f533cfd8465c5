#pragma once

#include <utility>
#include <vector>

#include "simplexdecomp/linalg.hpp"

namespace simplexdecomp {

inline constexpr double kDefaultHermTol = 1e-10;
inline constexpr double kDefaultPsdTol = 1e-9;

/// Generalized Gell-Mann basis of su(N), normalized to Tr[l_mu l_nu] = 2 delta_mu_nu.
///
/// Ordering: all symmetric E_jk + E_kj, then all antisymmetric -i E_jk + i E_kj (j < k,
/// lexicographic), then the N-1 diagonal matrices. For N = 2 this is (sigma_x, sigma_y, sigma_z).
struct Generators {
  int dimension = 0;
  std::vector<CMatrix> matrices;

  std::size_t size() const { return matrices.size(); }
  const CMatrix& operator[](std::size_t mu) const { return matrices[mu]; }
};

Generators su_generators(int n);

/// sum_mu coeffs[mu] * lambda_mu
CMatrix generator_combination(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Generators& g);

/// sum_mu lambda_mu (x) lambda_mu, which equals 2 V - (2/N) 1.
CMatrix generator_correlator(const Generators& g);

struct BlochVector {
  int dimension = 0;
  Eigen::VectorXd coords;

  double radius() const { return coords.norm(); }
  /// Unit direction; throws ContractViolation for the zero vector.
  Eigen::VectorXd direction() const;
};

/// Hermitian, unit-trace square matrix with the tolerances used to judge it.
///
/// Positivity is not part of the invariant; see min_eigenvalue() and is_psd().
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix entries, double herm_tol = kDefaultHermTol,
                         double psd_tol = kDefaultPsdTol);

  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }
  double herm_tol() const { return herm_tol_; }
  double psd_tol() const { return psd_tol_; }

  bool is_psd() const;

 private:
  CMatrix entries_;
  double herm_tol_;
  double psd_tol_;
};

BlochVector bloch_from_density(const DensityMatrix& rho, const Generators& g);
DensityMatrix density_from_bloch(const BlochVector& b, const Generators& g);

/// Smallest eigenvalue of (m + m^dagger)/2. Throws ContractViolation when m is not
/// Hermitian within herm_tol.
double min_eigenvalue(const CMatrix& m, double herm_tol = kDefaultHermTol);
double min_eigenvalue(const DensityMatrix& m);

struct RadiusBounds {
  double r_neg_min;  ///< -sqrt(2/(N(N-1)))
  double r_max;      ///< sqrt(2(N-1)/N), the pure-state radius
};

/// Closed interval of signed radii r for which 1/N + (r/2) n.lambda is PSD along a
/// pure-state direction n.
RadiusBounds psd_radius_bounds(int n);

}  // namespace simplexdecomp
