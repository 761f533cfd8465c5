#include "simplexdecomp/selftest.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "simplexdecomp/decompose.hpp"
#include "simplexdecomp/json_support.hpp"
#include "simplexdecomp/random.hpp"

namespace simplexdecomp {

namespace {

class Runner {
 public:
  void check(const std::string& name, const std::function<std::string()>& body) {
    // body returns "" on success, a failure description otherwise.
    CheckResult res{name, false, {}};
    try {
      res.detail = body();
      res.passed = res.detail.empty();
    } catch (const std::exception& e) {
      res.detail = e.what();
    }
    results.push_back(std::move(res));
  }

  std::vector<CheckResult> results;
};

std::string exceeds(double value, double bound) {
  return value <= bound ? std::string() : format_double(value) + " > " + format_double(bound);
}

std::string tag(const std::string& what, int n) { return what + " (N=" + std::to_string(n) + ")"; }

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& opt) {
  Runner run;
  Rng rng(opt.seed);

  for (int n = 2; n <= opt.n_max; ++n) {
    const Generators g = su_generators(n);
    const RadiusBounds bounds = psd_radius_bounds(n);

    run.check(tag("generator trace orthogonality", n), [&] {
      double dev = 0;
      for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = 0; b < g.size(); ++b)
          dev = std::max(dev, std::abs((g[a] * g[b]).trace() - Complex(a == b ? 2.0 : 0.0)));
      return exceeds(dev, 1e-12);
    });

    run.check(tag("Bloch round trip and purity bound", n), [&] {
      double dev = 0;
      for (int k = 0; k < 10; ++k) {
        const DensityMatrix rho(random_density(n, rng));
        const BlochVector b = bloch_from_density(rho, g);
        if (b.radius() > bounds.r_max + 1e-10) return std::string("radius above pure-state bound");
        dev = std::max(dev, max_abs_diff(density_from_bloch(b, g).entries(), rho.entries()));
      }
      return exceeds(dev, 1e-12);
    });

    run.check(tag("PSD radius interval sharpness", n), [&] {
      const DensityMatrix pure(random_pure_state(n, rng));
      const Eigen::VectorXd dir = bloch_from_density(pure, g).direction();
      const auto at = [&](double r) { return min_eigenvalue(density_from_bloch({n, r * dir}, g)); };
      const bool ok = at(bounds.r_neg_min) >= -1e-10 && at(bounds.r_max) >= -1e-10 &&
                      at(bounds.r_neg_min - 1e-3) < 0 && at(bounds.r_max + 1e-3) < 0 &&
                      at(bounds.r_neg_min + 1e-3) > 0 && at(bounds.r_max - 1e-3) > 0;
      return ok ? std::string() : std::string("PSD flip not at the interval endpoints");
    });

    std::optional<SicPovm> sic;
    std::string source;
    const std::string sic_name = tag("SIC overlap condition |<psi_i|psi_j>|^2 = (N d_ij + 1)/(N + 1)", n);
    run.check(sic_name, [&] {
      if (auto f = known_fiducial(n, opt.cache)) {
        source = f->is_exact() ? "registry" : "cache";
        sic = sic_from_fiducial(*f);
        return std::string();
      }
      for (int seed = 0; seed < opt.search_seeds; ++seed) {
        const SearchOutcome found = find_fiducial(n, static_cast<std::uint64_t>(seed), 5000, 1e-10);
        if (found.success()) {
          source = "search seed " + std::to_string(seed);
          sic = sic_from_fiducial(*found.fiducial);
          return std::string();
        }
      }
      return std::string("no fiducial found within ") + std::to_string(opt.search_seeds) + " seeds";
    });
    if (!run.results.back().passed) continue;
    run.results.back().detail = source;

    const bool exact = sic->tol <= kExactSicTol;
    const double recon_tol = exact ? opt.tol : 1e-7;
    const double psd_tol = exact ? kDefaultPsdTol : 1e-6;
    const double identity_tol = exact ? 1e-9 : 1e-7;

    run.check(tag("simplex identities and orthogonal extension", n), [&] {
      const SimplexReport rep = verify_simplex(sic->bloch);
      if (!rep.ok) return std::string("SIC Bloch vectors are not a regular simplex");
      const GramReport gram = gram_identities(sic->bloch);
      const Eigen::MatrixXd o = orthogonal_extension(sic->bloch);
      const double orth = max_abs_diff(o * o.transpose(), Eigen::MatrixXd::Identity(o.rows(), o.cols()));
      return exceeds(std::max({gram.sum_norm, gram.gram_dev, orth}), identity_tol);
    });

    run.check(tag("parameter round trips", n), [&] {
      double dev = 0;
      for (auto name : {ParamName::Phi, ParamName::Alpha, ParamName::Beta, ParamName::Tau}) {
        const Interval iv = param_range(Family::Werner, n, name);
        for (int k = 0; k <= 10; ++k) {
          const double v = iv.lo + iv.length() * k / 10.0;
          const ParamSet p = convert_params(Family::Werner, n, name, v);
          for (auto other : {ParamName::Phi, ParamName::Alpha, ParamName::Beta, ParamName::Tau}) {
            const ParamSet q = convert_params(Family::Werner, n, other, std::clamp(p.get(other),
                param_range(Family::Werner, n, other).lo, param_range(Family::Werner, n, other).hi));
            dev = std::max(dev, std::abs(q.get(name) - v));
          }
        }
      }
      return exceeds(dev, 1e-12);
    });

    const Interval sep{-2.0 / n, 2.0 * (n - 1.0) / n};
    run.check(tag("representation agreement and PPT oracle", n), [&] {
      double dev = 0;
      for (auto kind : {Family::Werner, Family::Isotropic}) {
        const Interval range = tau_range(kind, n);
        for (int k = 0; k <= 20; ++k) {
          const double tau = range.lo + range.length() * (k + 0.5) / 21.0;
          const DensityMatrix closed = family_density(kind, n, tau);
          const DensityMatrix bloch = kind == Family::Werner ? werner_density(n, ParamName::Tau, tau)
                                                             : isotropic_density(n, ParamName::Tau, tau);
          dev = std::max(dev, max_abs_diff(closed.entries(), bloch.entries()));
          const bool ppt = min_eigenvalue(partial_transpose(closed.entries())) >= -kDefaultPsdTol;
          if (ppt != (classify(kind, n, tau).cls == Nonlocality::Separable))
            return "PPT disagrees with classification at tau = " + format_double(tau);
        }
      }
      return exceeds(dev, 1e-12);
    });

    run.check(tag("separable decompositions reconstruct with PSD factors", n), [&] {
      for (auto kind : {Family::Werner, Family::Isotropic})
        for (int k = 0; k <= 10; ++k) {
          const double tau = sep.lo + sep.length() * k / 10.0;
          for (const auto& d : contour_sample(kind, n, tau, 3, *sic)) {
            const VerificationReport rep = verify_decomposition(d, recon_tol, psd_tol);
            if (!rep.separable_certificate)
              return "certificate failed at tau = " + format_double(tau) + ", r = " + format_double(d.r);
          }
        }
      return std::string();
    });

    run.check(tag("two-simplex decomposition for rotated simplexes", n), [&] {
      double dev = 0;
      const RegularSimplex base = canonical_simplex(n * n - 1);
      for (int k = 0; k < 3; ++k) {
        const RegularSimplex rot = rotated(base, random_orthogonal(n * n - 1, rng));
        for (double tau : {sep.lo, 0.3 * sep.hi, std::max(tau_range(Family::Werner, n).lo, tau_range(Family::Isotropic, n).lo)}) {
          const Decomposition w = decompose(Family::Werner, n, tau, 2.0, rot);
          const Decomposition i = decompose(Family::Isotropic, n, tau, 2.0, rot);
          dev = std::max(dev, verify_decomposition(w, 1.0).reconstruction_error);
          dev = std::max(dev, verify_decomposition(i, 1.0).reconstruction_error);
          dev = std::max(dev, max_abs_diff(partial_transpose(reconstruct(w).entries()), reconstruct(i).entries()));
        }
      }
      return exceeds(dev, 1e-10);
    });
  }

  run.check("region fractions (N=2..1000)", [&] {
    for (int n = 2; n <= 1000; ++n)
      for (const auto& row : region_table(n)) {
        if (std::abs(row.frac_sep + row.frac_ent + row.frac_steer - 1.0) > 1e-12)
          return "fractions do not sum to 1 at N = " + std::to_string(n);
        if (row.kind == Family::Werner && row.frac_sep != 0.5) return std::string("Werner separable fraction != 1/2");
      }
    return std::string();
  });

  return run.results;
}

}  // namespace simplexdecomp
