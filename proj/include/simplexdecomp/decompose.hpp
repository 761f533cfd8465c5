#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simplexdecomp/blochspace.hpp"
#include "simplexdecomp/errors.hpp"
#include "simplexdecomp/sicpovm.hpp"
#include "simplexdecomp/simplex.hpp"
#include "simplexdecomp/states.hpp"

namespace simplexdecomp {

/// tau lies outside the separable interval; carries the state's classification.
class NotSeparable : public Error {
 public:
  NotSeparable(const std::string& what, Classification c) : Error(what), classification_(c) {}
  const Classification& classification() const noexcept { return classification_; }

 private:
  Classification classification_;
};

/// The requested radius r leaves a factor non-PSD; carries the admissible set.
class NotAdmissible : public Error {
 public:
  NotAdmissible(const std::string& what, double nearest, std::vector<Interval> intervals)
      : Error(what), nearest_(nearest), intervals_(std::move(intervals)) {}
  double nearest() const noexcept { return nearest_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }

 private:
  double nearest_;
  std::vector<Interval> intervals_;
};

struct VerificationReport {
  double reconstruction_error = 0;
  double min_eig_R = 0;
  double min_eig_S = 0;
  bool all_factors_psd = false;
  bool separable_certificate = false;
};

struct FactorPair {
  CMatrix R;
  CMatrix S;  ///< untransposed; the isotropic reconstruction uses S^T
};

/// rho = sum_i (1/N^2) R_i (x) S_i with R_i = 1/N + (r/2) a_i.lambda, S_i = 1/N + (s/2) a_i.lambda
/// (S_i^T for the isotropic family) over the vertices a_i of a regular N^2-simplex.
struct Decomposition {
  Family kind = Family::Werner;
  int n = 2;
  double tau = 0;
  double r = 0;
  double s = 0;
  RegularSimplex simplex;
  std::vector<FactorPair> factors;
  std::optional<VerificationReport> report;
  std::string note;

  double weight() const { return 1.0 / (double(n) * n); }
};

/// Two-simplex decomposition valid for any tau in the family range and any regular simplex;
/// factors need not be PSD. s = tau / r (s = 0 when tau = 0).
Decomposition decompose(Family kind, int n, double tau, double r, const RegularSimplex& simplex);

/// The explicit weighted Kronecker sum of the factors.
DensityMatrix reconstruct(const Decomposition& d);

/// Max deviation of the stored factors from those rebuilt from (r, s, simplex).
double factor_defect(const Decomposition& d);

/// All r for which both r and s = tau/r lie in the PSD radius interval of a pure direction.
/// Branches are returned in increasing order of r. Throws NotSeparable outside
/// [-2/N, 2(N-1)/N].
std::vector<Interval> admissible_r_interval(int n, double tau);

VerificationReport verify_decomposition(const Decomposition& d, double target_tol,
                                        double psd_tol = kDefaultPsdTol);

/// Product-state decomposition over the SIC Bloch simplex. The returned value carries a
/// passing verification report.
Decomposition separable_decompose(Family kind, int n, double tau, double r, const SicPovm& sic);

/// k separable decompositions with r spread evenly along the admissible branches (k = 1
/// picks r = r_max). Degenerate contours yield at most two solutions and a note.
std::vector<Decomposition> contour_sample(Family kind, int n, double tau, int k, const SicPovm& sic);

}  // namespace simplexdecomp
