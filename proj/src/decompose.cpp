#include "simplexdecomp/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simplexdecomp/json_support.hpp"

namespace simplexdecomp {

namespace {

constexpr double kSlack = 1e-12;

struct Tolerances {
  double reconstruction;
  double psd;
};

Tolerances tolerances_for(const SicPovm& sic) {
  if (sic.tol <= kExactSicTol) return {1e-10, kDefaultPsdTol};
  return {1e-7, 1e-6};
}

void require_separable(Family kind, int n, double tau) {
  const Classification c = classify(kind, n, tau);
  if (c.cls != Nonlocality::Separable)
    throw NotSeparable("tau = " + format_double(tau) + " is not separable for the " +
                           std::string(to_string(kind)) + " family at N = " + std::to_string(n) +
                           " (class " + std::string(to_string(c.cls)) + ")",
                       c);
}

std::vector<FactorPair> build_factors(int n, double r, double s, const RegularSimplex& simplex,
                                      const Generators& g) {
  const CMatrix mixed = CMatrix::Identity(n, n) / double(n);
  std::vector<FactorPair> out;
  out.reserve(static_cast<std::size_t>(simplex.vertex_count()));
  for (Eigen::Index i = 0; i < simplex.vertex_count(); ++i) {
    const CMatrix dir = generator_combination(simplex.vertex(i), g);
    out.push_back({mixed + (r / 2.0) * dir, mixed + (s / 2.0) * dir});
  }
  return out;
}

double distance(const Interval& iv, double x) {
  if (x < iv.lo) return iv.lo - x;
  if (x > iv.hi) return x - iv.hi;
  return 0.0;
}

}  // namespace

Decomposition decompose(Family kind, int n, double tau, double r, const RegularSimplex& simplex) {
  if (n < 2) throw InvalidDimension("decompose: N must be >= 2");
  if (simplex.ambient_dim() != Eigen::Index(n) * n - 1 || simplex.vertex_count() != Eigen::Index(n) * n)
    throw DimensionMismatch("decompose: simplex must have N^2 vertices in dimension N^2 - 1");
  const Interval range = tau_range(kind, n);
  if (!range.contains(tau, kSlack))
    throw ParameterOutOfRange("decompose: tau = " + format_double(tau) + " outside the family range");
  if (r == 0.0 && tau != 0.0) throw ContractViolation("decompose: r = 0 requires tau = 0");

  Decomposition d;
  d.kind = kind;
  d.n = n;
  d.tau = tau;
  d.r = r;
  d.s = tau == 0.0 ? 0.0 : tau / r;
  d.simplex = simplex;
  d.factors = build_factors(n, d.r, d.s, simplex, su_generators(n));
  return d;
}

DensityMatrix reconstruct(const Decomposition& d) {
  const Eigen::Index dim = Eigen::Index(d.n) * d.n;
  CMatrix rho = CMatrix::Zero(dim, dim);
  for (const auto& f : d.factors) {
    if (d.kind == Family::Werner)
      rho += kron(f.R, f.S);
    else
      rho += kron(f.R, f.S.transpose());
  }
  rho *= d.weight();
  return DensityMatrix(std::move(rho));
}

double factor_defect(const Decomposition& d) {
  const auto rebuilt = build_factors(d.n, d.r, d.s, d.simplex, su_generators(d.n));
  double defect = std::abs(d.r * d.s - d.tau);
  for (std::size_t i = 0; i < rebuilt.size(); ++i)
    defect = std::max({defect, max_abs_diff(rebuilt[i].R, d.factors[i].R),
                       max_abs_diff(rebuilt[i].S, d.factors[i].S)});
  return defect;
}

std::vector<Interval> admissible_r_interval(int n, double tau) {
  require_separable(Family::Werner, n, tau);
  const RadiusBounds b = psd_radius_bounds(n);
  const double neg = -b.r_neg_min;  // |r_neg_min|
  const double pos = b.r_max;
  tau = std::clamp(tau, -2.0 / n, pos * pos);

  if (tau == 0.0) return {{-neg, 0.0}, {0.0, pos}};
  std::vector<Interval> out;
  if (tau > 0.0) {
    // r and s share a sign.
    if (tau <= neg * neg + kSlack) out.push_back({-neg, std::max(-tau / neg, -neg)});
    out.push_back({std::min(tau / pos, pos), pos});
  } else {
    const double t = -tau;
    out.push_back({-neg, std::max(-t / pos, -neg)});
    out.push_back({std::min(t / neg, pos), pos});
  }
  return out;
}

VerificationReport verify_decomposition(const Decomposition& d, double target_tol, double psd_tol) {
  VerificationReport rep;
  const DensityMatrix closed = family_density(d.kind, d.n, d.tau);
  rep.reconstruction_error = max_abs_diff(reconstruct(d).entries(), closed.entries());
  rep.min_eig_R = std::numeric_limits<double>::infinity();
  rep.min_eig_S = std::numeric_limits<double>::infinity();
  for (const auto& f : d.factors) {
    rep.min_eig_R = std::min(rep.min_eig_R, min_eigenvalue(f.R));
    rep.min_eig_S = std::min(rep.min_eig_S, min_eigenvalue(f.S));
  }
  rep.all_factors_psd = rep.min_eig_R >= -psd_tol && rep.min_eig_S >= -psd_tol;
  rep.separable_certificate = rep.all_factors_psd && rep.reconstruction_error <= target_tol;
  return rep;
}

Decomposition separable_decompose(Family kind, int n, double tau, double r, const SicPovm& sic) {
  if (sic.dim != n)
    throw DimensionMismatch("separable_decompose: SIC is for N = " + std::to_string(sic.dim) +
                            ", state is N = " + std::to_string(n));
  require_separable(kind, n, tau);
  const auto intervals = admissible_r_interval(n, tau);

  double nearest = r;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals) {
    const double dist = distance(iv, r);
    if (dist < best) {
      best = dist;
      nearest = std::clamp(r, iv.lo, iv.hi);
    }
  }
  if (best > kSlack * std::max(1.0, std::abs(r))) {
    std::string list;
    for (const auto& iv : intervals)
      list += (list.empty() ? "[" : " u [") + format_double(iv.lo) + ", " + format_double(iv.hi) + "]";
    throw NotAdmissible("r = " + format_double(r) + " leaves a factor non-PSD; admissible r: " + list +
                            "; nearest admissible r = " + format_double(nearest),
                        nearest, intervals);
  }

  Decomposition d = decompose(kind, n, tau, nearest, sic.bloch);
  const Tolerances tol = tolerances_for(sic);
  d.report = verify_decomposition(d, tol.reconstruction, tol.psd);
  if (!d.report->separable_certificate)
    throw ContractViolation("separable_decompose: certificate failed (reconstruction error " +
                            format_double(d.report->reconstruction_error) + ", min eigenvalues " +
                            format_double(d.report->min_eig_R) + ", " +
                            format_double(d.report->min_eig_S) + ")");
  if (tau == -2.0 / n || tau == 2.0 * (n - 1.0) / n)
    d.note = "tau at an endpoint of the separable interval";
  return d;
}

std::vector<Decomposition> contour_sample(Family kind, int n, double tau, int k, const SicPovm& sic) {
  if (k < 1) throw ContractViolation("contour_sample: k must be >= 1");
  require_separable(kind, n, tau);
  const auto intervals = admissible_r_interval(n, tau);
  double total = 0.0;
  for (const auto& iv : intervals) total += iv.length();

  std::vector<double> radii;
  std::string note;
  if (total <= kSlack) {
    // Degenerate contour: each branch is a single point. Largest r first.
    for (auto it = intervals.rbegin(); it != intervals.rend(); ++it)
      if (radii.empty() || std::abs(radii.back() - it->hi) > kSlack) radii.push_back(it->hi);
    if (static_cast<int>(radii.size()) < k)
      note = "degenerate contour: only " + std::to_string(radii.size()) + " distinct solution(s), " +
             std::to_string(k) + " requested";
    if (static_cast<int>(radii.size()) > k) radii.resize(static_cast<std::size_t>(k));
  } else if (k == 1) {
    radii.push_back(intervals.back().hi);
  } else {
    for (int j = 0; j < k; ++j) {
      double t = total * j / (k - 1.0);
      double r = intervals.back().hi;
      for (const auto& iv : intervals) {
        if (t <= iv.length()) {
          r = iv.lo + t;
          break;
        }
        t -= iv.length();
      }
      radii.push_back(std::min(r, intervals.back().hi));
    }
  }

  std::vector<Decomposition> out;
  out.reserve(radii.size());
  for (double r : radii) {
    out.push_back(separable_decompose(kind, n, tau, r, sic));
    if (!note.empty()) out.back().note = note;
  }
  return out;
}

}  // namespace simplexdecomp
