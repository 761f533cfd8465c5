#include "simplexdecomp/states.hpp"

#include <algorithm>
#include <cmath>

#include "simplexdecomp/errors.hpp"
#include "simplexdecomp/json_support.hpp"

namespace simplexdecomp {

namespace {

// Slack on legal-interval and boundary tests; parameter conversions lose a few ulps.
constexpr double kParamSlack = 1e-12;

void require_dimension(int n, const char* who) {
  if (n < 2) throw InvalidDimension(std::string(who) + ": N must be >= 2, got " + std::to_string(n));
}

void require_in(const Interval& range, double value, std::string_view what) {
  if (!std::isfinite(value) || !range.contains(value, kParamSlack))
    throw ParameterOutOfRange(std::string(what) + " = " + format_double(value) + " outside [" +
                              format_double(range.lo) + ", " + format_double(range.hi) + "]");
}

double phi_from(ParamName name, int n, double value) {
  switch (name) {
    case ParamName::Phi: return value;
    case ParamName::Alpha: return (value * n + 1.0) / (n + value);
    case ParamName::Beta: return (1.0 - value * (n + 1.0)) / n;
    case ParamName::Tau: return (n * value / 2.0 + 1.0) / n;
    case ParamName::Eta: break;
  }
  throw ParameterOutOfRange("eta is not a Werner parameter");
}

}  // namespace

std::string_view to_string(Family f) { return f == Family::Werner ? "werner" : "isotropic"; }

std::string_view to_string(ParamName p) {
  switch (p) {
    case ParamName::Phi: return "phi";
    case ParamName::Alpha: return "alpha";
    case ParamName::Beta: return "beta";
    case ParamName::Eta: return "eta";
    case ParamName::Tau: return "tau";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  if (s == "werner" || s == "w") return Family::Werner;
  if (s == "iso" || s == "isotropic" || s == "i") return Family::Isotropic;
  return std::nullopt;
}

std::optional<ParamName> parse_param_name(std::string_view s) {
  for (auto p : {ParamName::Phi, ParamName::Alpha, ParamName::Beta, ParamName::Eta, ParamName::Tau})
    if (s == to_string(p)) return p;
  return std::nullopt;
}

Interval tau_range(Family kind, int n) {
  require_dimension(n, "tau_range");
  if (kind == Family::Werner) return {-2.0 * (n + 1.0) / n, 2.0 * (n - 1.0) / n};
  return {-2.0 / n, 2.0 * (double(n) * n - 1.0) / n};
}

Interval param_range(Family kind, int n, ParamName name) {
  require_dimension(n, "param_range");
  if (name == ParamName::Tau) return tau_range(kind, n);
  if (kind == Family::Werner) {
    switch (name) {
      case ParamName::Phi:
      case ParamName::Alpha: return {-1.0, 1.0};
      case ParamName::Beta: return {(1.0 - n) / (n + 1.0), 1.0};
      default: break;
    }
  } else if (name == ParamName::Eta) {
    return {-1.0 / (double(n) * n - 1.0), 1.0};
  }
  throw ParameterOutOfRange(std::string(to_string(name)) + " is not a parameter of the " +
                            std::string(to_string(kind)) + " family");
}

double ParamSet::get(ParamName name) const {
  std::optional<double> v;
  switch (name) {
    case ParamName::Phi: v = phi; break;
    case ParamName::Alpha: v = alpha; break;
    case ParamName::Beta: v = beta; break;
    case ParamName::Eta: v = eta; break;
    case ParamName::Tau: v = tau; break;
  }
  if (!v) throw ParameterOutOfRange(std::string(to_string(name)) + " not defined for this family");
  return *v;
}

ParamSet convert_params(Family kind, int n, ParamName name, double value) {
  require_in(param_range(kind, n, name), value, to_string(name));
  ParamSet p;
  p.kind = kind;
  p.n = n;
  if (kind == Family::Werner) {
    const double phi = phi_from(name, n, value);
    p.phi = phi;
    p.tau = 2.0 * (n * phi - 1.0) / n;
    p.alpha = (n * phi - 1.0) / (n - phi);
    p.beta = (1.0 - n * phi) / (n + 1.0);
  } else if (name == ParamName::Eta) {
    p.eta = value;
    p.tau = 2.0 * value * (double(n) * n - 1.0) / n;
  } else {
    p.eta = n * value / (2.0 * (double(n) * n - 1.0));
    p.tau = value;
  }
  // The supplied value is kept verbatim.
  switch (name) {
    case ParamName::Phi: p.phi = value; break;
    case ParamName::Alpha: p.alpha = value; break;
    case ParamName::Beta: p.beta = value; break;
    case ParamName::Eta: p.eta = value; break;
    case ParamName::Tau: p.tau = value; break;
  }
  return p;
}

DensityMatrix werner_density(int n, ParamName name, double value) {
  require_in(param_range(Family::Werner, n, name), value, to_string(name));
  const double nd = n;
  const Eigen::Index dim = Eigen::Index(n) * n;
  const CMatrix id = CMatrix::Identity(dim, dim);
  switch (name) {
    case ParamName::Phi: {
      const double denom = nd * nd * nd - nd;
      return DensityMatrix(((nd - value) / denom) * id + ((nd * value - 1.0) / denom) * swap_operator(n));
    }
    case ParamName::Alpha:
      return DensityMatrix((id + value * swap_operator(n)) / (nd * nd + value * nd));
    case ParamName::Beta:
      return DensityMatrix(((nd - 1.0 + value) / (nd * nd * nd - nd * nd)) * id -
                           (value / (nd * nd - nd)) * swap_operator(n));
    case ParamName::Tau: {
      const Generators g = su_generators(n);
      return DensityMatrix(id / (nd * nd) + (value / (4.0 * (nd * nd - 1.0))) * generator_correlator(g));
    }
    case ParamName::Eta: break;
  }
  throw ParameterOutOfRange("eta is not a Werner parameter");
}

DensityMatrix isotropic_density(int n, ParamName name, double value) {
  require_in(param_range(Family::Isotropic, n, name), value, to_string(name));
  const double nd = n;
  const Eigen::Index dim = Eigen::Index(n) * n;
  const CMatrix id = CMatrix::Identity(dim, dim);
  if (name == ParamName::Eta)
    return DensityMatrix(((1.0 - value) / (nd * nd)) * id + value * max_entangled_projector(n));
  const Generators g = su_generators(n);
  CMatrix corr = CMatrix::Zero(dim, dim);
  for (const auto& l : g.matrices) corr += kron(l, l.transpose());
  return DensityMatrix(id / (nd * nd) + (value / (4.0 * (nd * nd - 1.0))) * corr);
}

DensityMatrix family_density(Family kind, int n, double tau) {
  const ParamSet p = convert_params(kind, n, ParamName::Tau, tau);
  if (kind == Family::Werner) return werner_density(n, ParamName::Phi, std::clamp(*p.phi, -1.0, 1.0));
  const Interval eta = param_range(kind, n, ParamName::Eta);
  return isotropic_density(n, ParamName::Eta, std::clamp(*p.eta, eta.lo, eta.hi));
}

std::string_view to_string(Nonlocality c) {
  switch (c) {
    case Nonlocality::Separable: return "Separable";
    case Nonlocality::EntangledUnsteerable: return "EntangledUnsteerable";
    case Nonlocality::Steerable: return "Steerable";
  }
  return "?";
}

double harmonic_number(int n) {
  double h = 0.0;
  for (int k = n; k >= 1; --k) h += 1.0 / k;
  return h;
}

Classification classify_werner(int n, double tau) {
  Classification c;
  c.kind = Family::Werner;
  c.n = n;
  c.tau = tau;
  c.range = tau_range(Family::Werner, n);
  require_in(c.range, tau, "tau");
  const double nd = n;
  c.separable = {-2.0 / nd, 2.0 * (nd - 1.0) / nd};
  c.steer_threshold = -2.0 * (nd * nd - 1.0) / (nd * nd);
  if (tau >= c.separable.lo - kParamSlack)
    c.cls = Nonlocality::Separable;
  else if (tau >= c.steer_threshold)
    c.cls = Nonlocality::EntangledUnsteerable;
  else
    c.cls = Nonlocality::Steerable;
  c.on_phi_zero_boundary = std::abs(tau - c.separable.lo) <= kParamSlack;
  return c;
}

Classification classify_isotropic(int n, double tau) {
  Classification c;
  c.kind = Family::Isotropic;
  c.n = n;
  c.tau = tau;
  c.range = tau_range(Family::Isotropic, n);
  require_in(c.range, tau, "tau");
  const double nd = n;
  c.harmonic = harmonic_number(n);
  c.separable = {-2.0 / nd, 2.0 * (nd - 1.0) / nd};
  c.steer_threshold = 2.0 * (*c.harmonic - 1.0) * (nd + 1.0) / nd;
  if (tau <= c.separable.hi + kParamSlack)
    c.cls = Nonlocality::Separable;
  else if (tau > c.steer_threshold)
    c.cls = Nonlocality::Steerable;
  else
    c.cls = Nonlocality::EntangledUnsteerable;
  return c;
}

Classification classify(Family kind, int n, double tau) {
  return kind == Family::Werner ? classify_werner(n, tau) : classify_isotropic(n, tau);
}

RegionRow region_row(Family kind, int n) {
  require_dimension(n, "region_row");
  const double nd = n;
  RegionRow row;
  row.kind = kind;
  row.n = n;
  const Interval range = tau_range(kind, n);
  row.tau_min = range.lo;
  row.tau_max = range.hi;
  row.tau_sep_lo = -2.0 / nd;
  row.tau_sep_hi = 2.0 * (nd - 1.0) / nd;
  if (kind == Family::Werner) {
    row.tau_steer = -2.0 * (nd * nd - 1.0) / (nd * nd);
    row.frac_sep = 0.5;
    row.frac_steer = (nd + 1.0) / (2.0 * nd * nd);
  } else {
    const double h = harmonic_number(n);
    row.tau_steer = 2.0 * (h - 1.0) * (nd + 1.0) / nd;
    row.frac_sep = 1.0 / nd;
    row.frac_steer = (nd + 1.0) * (nd - h) / (nd * nd);
  }
  row.frac_ent = 1.0 - row.frac_sep - row.frac_steer;
  return row;
}

std::vector<RegionRow> region_table(int n) {
  return {region_row(Family::Werner, n), region_row(Family::Isotropic, n)};
}

std::string region_csv_header() {
  return "family,N,tau_min,tau_sep_lo,tau_sep_hi,tau_steer,frac_sep,frac_ent,frac_steer";
}

std::string region_csv_line(const RegionRow& r) {
  std::string line(to_string(r.kind));
  line += ',' + std::to_string(r.n);
  for (double v : {r.tau_min, r.tau_sep_lo, r.tau_sep_hi, r.tau_steer, r.frac_sep, r.frac_ent, r.frac_steer})
    line += ',' + format_double(v);
  return line;
}

}  // namespace simplexdecomp
