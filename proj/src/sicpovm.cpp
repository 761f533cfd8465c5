#include "simplexdecomp/sicpovm.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "simplexdecomp/blochspace.hpp"
#include "simplexdecomp/errors.hpp"
#include "simplexdecomp/json_support.hpp"

namespace simplexdecomp {

std::vector<CMatrix> wh_displacements(int n) {
  if (n < 2) throw InvalidDimension("wh_displacements: N must be >= 2, got " + std::to_string(n));
  CMatrix x = CMatrix::Zero(n, n);
  CMatrix z = CMatrix::Zero(n, n);
  const double w = 2.0 * std::numbers::pi / n;
  for (int m = 0; m < n; ++m) {
    x((m + 1) % n, m) = 1.0;
    z(m, m) = std::polar(1.0, w * m);
  }
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(n * n));
  CMatrix xj = CMatrix::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    CMatrix d = xj;
    for (int k = 0; k < n; ++k) {
      out.push_back(d);
      d = d * z;
    }
    xj = x * xj;
  }
  return out;
}

double sic_overlap_deviation(const std::vector<CVector>& states) {
  const std::size_t count = states.size();
  const double n = std::sqrt(double(count));
  double dev = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i; j < count; ++j) {
      const double target = i == j ? 1.0 : 1.0 / (n + 1.0);
      dev = std::max(dev, std::abs(std::norm(states[i].dot(states[j])) - target));
    }
  return dev;
}

SicPovm sic_from_fiducial(const Fiducial& f, std::optional<double> tol) {
  const int n = f.dim;
  if (f.vector.size() != n) throw DimensionMismatch("sic_from_fiducial: vector length != N");
  if (std::abs(f.vector.norm() - 1.0) > 1e-12)
    throw ContractViolation("sic_from_fiducial: fiducial is not unit norm");
  const double sic_tol = tol.value_or(f.is_exact() ? kExactSicTol : kOptimizedSicTol);

  SicPovm sic;
  sic.dim = n;
  sic.tol = sic_tol;
  for (const auto& d : wh_displacements(n)) {
    CVector s = d * f.vector;
    s.normalize();
    sic.states.push_back(std::move(s));
  }
  const double dev = sic_overlap_deviation(sic.states);
  if (!(dev <= sic_tol))
    throw NotAFiducial("SIC overlap condition violated: max deviation " + format_double(dev) +
                           " > tol " + format_double(sic_tol),
                       dev);

  const Generators g = su_generators(n);
  sic.bloch.tol = f.is_exact() ? kExactSimplexTol : kOptimizedSimplexTol;
  sic.bloch.vertices.resize(n * n - 1, n * n);
  for (int i = 0; i < n * n; ++i) {
    const auto& psi = sic.states[static_cast<std::size_t>(i)];
    DensityMatrix p(psi * psi.adjoint());
    sic.bloch.vertices.col(i) = bloch_from_density(p, g).direction();
  }
  return sic;
}

namespace {

// Frame potential of the normalized vector phi/|phi| together with its real gradient
// (as a complex vector: d/dRe + i d/dIm) with respect to the unnormalized phi.
struct PotentialEval {
  double value;
  CVector grad;
};

class FramePotential {
 public:
  explicit FramePotential(int n) : displacements_(wh_displacements(n)) {
    displacements_.erase(displacements_.begin());
  }

  double value(const CVector& phi) const {
    const double norm2 = phi.squaredNorm();
    double g = 0.0;
    for (const auto& d : displacements_) {
      const double a = std::norm(phi.dot(d * phi));
      g += a * a;
    }
    return g / (norm2 * norm2 * norm2 * norm2);
  }

  PotentialEval evaluate(const CVector& phi) const {
    const double norm2 = phi.squaredNorm();
    const double norm8 = norm2 * norm2 * norm2 * norm2;
    double g = 0.0;
    CVector dg = CVector::Zero(phi.size());
    for (const auto& d : displacements_) {
      const CVector dphi = d * phi;
      const Complex c = phi.dot(dphi);
      const double a = std::norm(c);
      g += a * a;
      dg += 2.0 * a * (std::conj(c) * dphi + c * (d.adjoint() * phi));
    }
    PotentialEval out{g / norm8, CVector()};
    out.grad = 2.0 * (dg / norm8 - (4.0 * out.value / norm2) * phi);
    return out;
  }

 private:
  std::vector<CMatrix> displacements_;
};

double real_dot(const CVector& a, const CVector& b) { return a.dot(b).real(); }

}  // namespace

double frame_potential(const CVector& psi) {
  const int n = static_cast<int>(psi.size());
  if (std::abs(psi.norm() - 1.0) > 1e-12) throw ContractViolation("frame_potential: vector is not unit norm");
  return FramePotential(n).value(psi);
}

double frame_potential_minimum(int n) {
  if (n < 2) throw InvalidDimension("frame_potential_minimum: N must be >= 2");
  return (double(n) * n - 1.0) / ((n + 1.0) * (n + 1.0));
}

SearchOutcome find_fiducial(int n, std::uint64_t seed, int max_iters, double tol) {
  if (n < 2) throw InvalidDimension("find_fiducial: N must be >= 2, got " + std::to_string(n));
  constexpr std::size_t kMemory = 12;
  constexpr double kArmijo = 1e-4;
  constexpr double kPolishGradTol = 1e-14;

  const FramePotential potential(n);
  const double fmin = frame_potential_minimum(n);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector phi(n);
  for (int i = 0; i < n; ++i) phi(i) = Complex(normal(rng), normal(rng));
  phi.normalize();

  PotentialEval cur = potential.evaluate(phi);
  std::deque<std::pair<CVector, CVector>> history;  // (s, y)
  int it = 0;
  for (; it < max_iters; ++it) {
    const double gnorm = cur.grad.norm();
    const bool converged = cur.value - fmin <= tol;
    if (converged && gnorm <= kPolishGradTol) break;

    // L-BFGS two-loop recursion with the real inner product Re<a, b>.
    CVector q = cur.grad;
    std::vector<double> alpha(history.size());
    for (std::size_t k = history.size(); k-- > 0;) {
      const auto& [s, y] = history[k];
      alpha[k] = real_dot(s, q) / real_dot(y, s);
      q -= alpha[k] * y;
    }
    if (!history.empty()) {
      const auto& [s, y] = history.back();
      q *= real_dot(s, y) / y.squaredNorm();
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
      const auto& [s, y] = history[k];
      const double beta = real_dot(y, q) / real_dot(y, s);
      q += (alpha[k] - beta) * s;
    }
    CVector dir = -q;
    double slope = real_dot(cur.grad, dir);
    if (!(slope < 0.0)) {
      history.clear();
      dir = -cur.grad;
      slope = -gnorm * gnorm;
    }

    double step = history.empty() ? std::min(1.0, 0.1 / gnorm) : 1.0;
    bool accepted = false;
    PotentialEval next;
    CVector trial;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      trial = phi + step * dir;
      next = potential.evaluate(trial);
      // Once inside tolerance the potential is flat to rounding; accept on gradient decrease.
      if (next.value <= cur.value + kArmijo * step * slope ||
          (converged && next.grad.norm() < gnorm)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    CVector s = trial - phi;
    CVector y = next.grad - cur.grad;
    if (real_dot(s, y) > 1e-300) {
      history.emplace_back(std::move(s), std::move(y));
      if (history.size() > kMemory) history.pop_front();
    }
    phi = trial / trial.norm();
    cur = potential.evaluate(phi);
  }

  SearchOutcome out;
  out.seed = seed;
  out.iterations = it;
  out.best_residual = std::max(0.0, cur.value - fmin);
  if (cur.value - fmin <= tol) {
    phi.normalize();
    Eigen::Index lead = 0;
    phi.cwiseAbs().maxCoeff(&lead);
    phi *= std::conj(phi(lead)) / std::abs(phi(lead));
    out.fiducial = Fiducial{n, phi, Optimized{seed, it, out.best_residual}};
  }
  return out;
}

FiducialCache FiducialCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fiducial cache " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error("malformed fiducial cache " + path.string() + ": " + e.what());
  }
  FiducialCache cache;
  const auto add = [&](const Json& e) {
    try {
      Fiducial f;
      f.dim = e.at("N").get<int>();
      f.vector = vector_from_json(e.at("vector"));
      f.provenance = Optimized{e.value("seed", std::uint64_t{0}), 0, e.value("residual", 0.0)};
      cache.insert(f);
    } catch (const Json::exception& ex) {
      throw Error("malformed fiducial cache entry in " + path.string() + ": " + ex.what());
    }
  };
  if (doc.is_array()) {
    for (const auto& e : doc) add(e);
  } else {
    add(doc);
  }
  return cache;
}

void FiducialCache::save(const std::filesystem::path& path) const {
  Json doc = Json::array();
  for (const auto& [n, f] : entries_) {
    const auto* opt = std::get_if<Optimized>(&f.provenance);
    doc.push_back({{"N", n},
                   {"vector", vector_to_json(f.vector)},
                   {"residual", opt ? opt->residual : 0.0},
                   {"seed", opt ? opt->seed : 0}});
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write fiducial cache " + path.string());
  out << dump_json(doc) << '\n';
  if (!out) throw Error("failed writing fiducial cache " + path.string());
}

std::optional<Fiducial> FiducialCache::find(int n) const {
  const auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<Fiducial> known_fiducial(int n, const FiducialCache& cache) {
  if (n == 2) {
    // Bloch vector (1, 1, 1)/sqrt(3).
    const double c = 1.0 / std::sqrt(3.0);
    CVector v(2);
    v << std::sqrt((1.0 + c) / 2.0), std::polar(std::sqrt((1.0 - c) / 2.0), std::numbers::pi / 4.0);
    return Fiducial{2, v, ExactRegistry{}};
  }
  if (n == 3) {
    CVector v(3);
    v << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return Fiducial{3, v, ExactRegistry{}};
  }
  return cache.find(n);
}

std::vector<int> solvable_dimensions() {
  std::vector<int> out;
  for (int n = 2; n <= 24; ++n) out.push_back(n);
  for (int n : {28, 30, 31, 35, 37, 39, 43, 48, 124, 143, 147, 168, 172, 195, 199, 228, 259, 323})
    out.push_back(n);
  return out;
}

}  // namespace simplexdecomp
