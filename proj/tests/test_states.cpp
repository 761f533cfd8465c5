#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "simplexdecomp/errors.hpp"
#include "simplexdecomp/random.hpp"
#include "simplexdecomp/states.hpp"
#include "test_support.hpp"

using namespace simplexdecomp;
using testsupport::loop_kron;
using testsupport::loop_swap;

TEST_CASE("swap_operator") {
  const CMatrix v2 = swap_operator(2);
  CHECK(v2.trace() == Complex(2.0));
  CVector e01 = CVector::Zero(4);
  e01(0 * 2 + 1) = 1.0;
  CVector e10 = CVector::Zero(4);
  e10(1 * 2 + 0) = 1.0;
  CHECK(max_abs_diff(v2 * e01, e10) == 0.0);
  for (int n = 2; n <= 5; ++n) {
    const CMatrix v = swap_operator(n);
    CHECK(max_abs_diff(v * v, CMatrix::Identity(n * n, n * n)) == 0.0);
    CHECK(v.trace() == Complex(double(n)));
    CHECK(max_abs_diff(v, loop_swap(n)) == 0.0);
  }
  // V = (1/2) sum l (x) l + 1/N, with the correlator summed by explicit Kronecker loops.
  const Generators g = su_generators(3);
  CMatrix sum = CMatrix::Zero(9, 9);
  for (const auto& l : g.matrices) sum += loop_kron(l, l);
  CHECK(max_abs_diff(swap_operator(3), 0.5 * sum + CMatrix::Identity(9, 9) / 3.0) <= 1e-12);
}

TEST_CASE("max_entangled_projector") {
  const CMatrix p2 = max_entangled_projector(2);
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(p2, bell * bell.adjoint()) < 1e-15);
  for (int n = 2; n <= 5; ++n) {
    const CMatrix p = max_entangled_projector(n);
    CHECK(std::abs(p.trace() - Complex(1.0)) <= 1e-13);
    CHECK(max_abs_diff(p * p, p) <= 1e-13);
    CHECK(max_abs_diff(partial_transpose(swap_operator(n)) / double(n), p) <= 1e-15);
  }
}

TEST_CASE("partial_transpose") {
  CHECK(max_abs_diff(partial_transpose(CMatrix::Identity(9, 9)), CMatrix::Identity(9, 9)) == 0.0);
  Rng rng(4);
  const CMatrix a = haar_unitary(3, rng), b = haar_unitary(3, rng);
  const CMatrix ab = loop_kron(a, b);
  CHECK(max_abs_diff(partial_transpose(ab, Subsystem::Second), loop_kron(a, b.transpose())) == 0.0);
  CHECK(max_abs_diff(partial_transpose(ab, Subsystem::First), loop_kron(a.transpose(), b)) == 0.0);
  const CMatrix m = random_density(9, rng);
  CHECK(max_abs_diff(partial_transpose(partial_transpose(m)), m) == 0.0);
  CHECK(max_abs_diff(partial_transpose(swap_operator(4)), 4.0 * max_entangled_projector(4)) <= 1e-15);
  CHECK_THROWS_AS(partial_transpose(CMatrix::Identity(5, 5)), std::invalid_argument);
  CHECK_THROWS_AS(partial_transpose(CMatrix::Identity(4, 9)), std::invalid_argument);
}

TEST_CASE("werner_density: closed-form examples") {
  for (int n = 2; n <= 5; ++n) {
    const DensityMatrix mixed = werner_density(n, ParamName::Phi, 1.0 / n);
    CHECK(max_abs_diff(mixed.entries(), CMatrix::Identity(n * n, n * n) / double(n * n)) <= 1e-15);
  }
  CHECK(max_abs_diff(werner_density(2, ParamName::Phi, 1.0).entries(), testsupport::qubit_symmetric_state()) <= 1e-15);
  // Bloch form with coefficient 2(N phi - 1)/(N(N^2-1)) against the swap form.
  const double phi = -0.5;
  const double tau = 2.0 * (3 * phi - 1.0) / 3.0;
  CHECK(max_abs_diff(werner_density(3, ParamName::Tau, tau).entries(),
                     werner_density(3, ParamName::Phi, phi).entries()) <= 1e-12);
  CHECK_THROWS_AS(werner_density(2, ParamName::Phi, 1.5), ParameterOutOfRange);
  CHECK_THROWS_AS(werner_density(2, ParamName::Eta, 0.5), ParameterOutOfRange);
  CHECK_THROWS_AS(werner_density(3, ParamName::Tau, 99.0), ParameterOutOfRange);
}

TEST_CASE("isotropic_density: closed-form examples") {
  for (int n = 2; n <= 5; ++n) {
    CHECK(max_abs_diff(isotropic_density(n, ParamName::Eta, 0.0).entries(),
                       CMatrix::Identity(n * n, n * n) / double(n * n)) <= 1e-15);
    CHECK(max_abs_diff(isotropic_density(n, ParamName::Eta, 1.0).entries(), max_entangled_projector(n)) <= 1e-15);
  }
  const double eta = 0.3;
  CHECK(max_abs_diff(isotropic_density(3, ParamName::Tau, 2.0 * eta * 8.0 / 3.0).entries(),
                     isotropic_density(3, ParamName::Eta, eta).entries()) <= 1e-12);
  CHECK_THROWS_AS(isotropic_density(3, ParamName::Eta, -0.2), ParameterOutOfRange);
  CHECK_THROWS_AS(isotropic_density(3, ParamName::Phi, 0.2), ParameterOutOfRange);
}

TEST_CASE("all parameterizations agree on a 50-point tau grid") {
  for (int n = 2; n <= 5; ++n) {
    for (auto kind : {Family::Werner, Family::Isotropic}) {
      const Interval range = tau_range(kind, n);
      for (int k = 0; k < 50; ++k) {
        const double tau = range.lo + range.length() * k / 49.0;
        const ParamSet p = convert_params(kind, n, ParamName::Tau, tau);
        if (kind == Family::Werner) {
          const CMatrix ref = werner_density(n, ParamName::Tau, tau).entries();
          for (auto name : {ParamName::Phi, ParamName::Alpha, ParamName::Beta}) {
            const Interval iv = param_range(kind, n, name);
            const DensityMatrix rho = werner_density(n, name, std::clamp(p.get(name), iv.lo, iv.hi));
            CHECK(max_abs_diff(rho.entries(), ref) <= 1e-12);
          }
          CHECK(werner_density(n, ParamName::Tau, tau).is_psd());
        } else {
          const CMatrix ref = isotropic_density(n, ParamName::Tau, tau).entries();
          const Interval iv = param_range(kind, n, ParamName::Eta);
          CHECK(max_abs_diff(isotropic_density(n, ParamName::Eta, std::clamp(*p.eta, iv.lo, iv.hi)).entries(), ref) <= 1e-12);
          CHECK(isotropic_density(n, ParamName::Tau, tau).is_psd());
        }
      }
    }
  }
}

TEST_CASE("u(x)u and u(x)u* invariance under Haar unitaries") {
  Rng rng(21);
  for (int n = 2; n <= 4; ++n) {
    const CMatrix w = family_density(Family::Werner, n, -0.7).entries();
    const CMatrix iso = family_density(Family::Isotropic, n, 1.1).entries();
    for (int k = 0; k < 20; ++k) {
      const CMatrix u = haar_unitary(n, rng);
      const CMatrix uu = loop_kron(u, u);
      const CMatrix uuc = loop_kron(u, u.conjugate());
      CHECK(max_abs_diff(uu * w * uu.adjoint(), w) <= 1e-10);
      CHECK(max_abs_diff(uuc * iso * uuc.adjoint(), iso) <= 1e-10);
    }
  }
}

TEST_CASE("partial transpose maps Werner onto isotropic at equal tau") {
  for (int n = 2; n <= 5; ++n) {
    const Interval sep{-2.0 / n, 2.0 * (n - 1.0) / n};
    for (int k = 0; k <= 8; ++k) {
      const double tau = sep.lo + sep.length() * k / 8.0;
      CHECK(max_abs_diff(partial_transpose(family_density(Family::Werner, n, tau).entries()),
                         family_density(Family::Isotropic, n, tau).entries()) <= 1e-12);
    }
  }
}

TEST_CASE("convert_params: spot values") {
  const ParamSet w = convert_params(Family::Werner, 2, ParamName::Phi, 1.0);
  CHECK(*w.alpha == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*w.beta == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(w.tau == doctest::Approx(1.0).epsilon(1e-15));
  for (int n : {2, 3, 7, 10}) {
    const ParamSet z = convert_params(Family::Werner, n, ParamName::Phi, 1.0 / n);
    CHECK(std::abs(z.tau) < 1e-15);
    CHECK(std::abs(*z.alpha) < 1e-15);
    CHECK(std::abs(*z.beta) < 1e-15);
  }
  CHECK(convert_params(Family::Isotropic, 4, ParamName::Eta, 1.0).tau == doctest::Approx(7.5).epsilon(1e-15));
  CHECK_THROWS_AS(convert_params(Family::Werner, 3, ParamName::Alpha, -1.5), ParameterOutOfRange);
  CHECK_THROWS_AS(convert_params(Family::Isotropic, 3, ParamName::Beta, 0.1), ParameterOutOfRange);
}

TEST_CASE("convert_params: round trips on random legal values") {
  Rng rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n : {2, 3, 7, 10}) {
    for (auto kind : {Family::Werner, Family::Isotropic}) {
      const std::vector<ParamName> names = kind == Family::Werner
          ? std::vector<ParamName>{ParamName::Phi, ParamName::Alpha, ParamName::Beta, ParamName::Tau}
          : std::vector<ParamName>{ParamName::Eta, ParamName::Tau};
      for (int k = 0; k < 100; ++k) {
        const ParamName from = names[static_cast<std::size_t>(k) % names.size()];
        const Interval iv = param_range(kind, n, from);
        const double v = iv.lo + iv.length() * unit(rng);
        const ParamSet p = convert_params(kind, n, from, v);
        for (auto via : names) {
          const ParamSet q = convert_params(kind, n, via, p.get(via));
          for (auto other : names) CHECK(std::abs(q.get(other) - p.get(other)) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("classify_werner") {
  CHECK(classify_werner(2, 1.0).cls == Nonlocality::Separable);
  CHECK(classify_werner(2, -3.0).cls == Nonlocality::Steerable);
  CHECK(classify_werner(2, -1.2).cls == Nonlocality::EntangledUnsteerable);
  CHECK(classify_werner(2, -1.5).cls == Nonlocality::EntangledUnsteerable);  // open on the steerable side
  const Classification edge = classify_werner(3, -2.0 / 3.0);
  CHECK(edge.cls == Nonlocality::Separable);
  CHECK(edge.on_phi_zero_boundary);
  CHECK_THROWS_AS(classify_werner(2, 99.0), ParameterOutOfRange);
}

TEST_CASE("classify_isotropic") {
  const auto tau_of = [](int n, double eta) { return convert_params(Family::Isotropic, n, ParamName::Eta, eta).tau; };
  CHECK(classify_isotropic(2, tau_of(2, 0.2)).cls == Nonlocality::Separable);
  CHECK(classify_isotropic(2, tau_of(2, 1.0)).cls == Nonlocality::Steerable);
  CHECK(classify_isotropic(2, tau_of(2, 0.4)).cls == Nonlocality::EntangledUnsteerable);
  CHECK(classify_isotropic(2, tau_of(2, 0.5)).cls == Nonlocality::EntangledUnsteerable);
  CHECK(*classify_isotropic(2, 0.0).harmonic == doctest::Approx(1.5));
  CHECK_THROWS_AS(classify_isotropic(2, -1.5), ParameterOutOfRange);
}

TEST_CASE("class transitions are monotone and agree with the PPT test") {
  for (int n = 2; n <= 4; ++n) {
    for (auto kind : {Family::Werner, Family::Isotropic}) {
      const Interval range = tau_range(kind, n);
      int transitions = 0;
      std::optional<Nonlocality> prev;
      for (int k = 0; k < 200; ++k) {
        // Walk from the separable end toward the entangled end.
        const double t = k / 199.0;
        const double tau = kind == Family::Werner ? range.hi - t * range.length() : range.lo + t * range.length();
        const Nonlocality c = classify(kind, n, tau).cls;
        if (prev && c != *prev) {
          ++transitions;
          CHECK(static_cast<int>(c) == static_cast<int>(*prev) + 1);
        }
        prev = c;
        const bool ppt = min_eigenvalue(partial_transpose(family_density(kind, n, tau).entries())) >= -kDefaultPsdTol;
        CHECK(ppt == (c == Nonlocality::Separable));
      }
      CHECK(transitions == 2);
    }
  }
}

TEST_CASE("region_table") {
  for (int n : {2, 3, 10, 100, 1000}) {
    for (const auto& row : region_table(n)) {
      CHECK(std::abs(row.frac_sep + row.frac_ent + row.frac_steer - 1.0) <= 1e-12);
      CHECK(row.tau_min <= row.tau_sep_lo);
      if (row.kind == Family::Werner) {
        CHECK(row.frac_sep == 0.5);
        CHECK(row.tau_steer < row.tau_sep_lo);
      } else {
        CHECK(row.tau_steer >= row.tau_sep_hi);
      }
    }
  }
  CHECK(region_row(Family::Werner, 100).frac_steer == doctest::Approx(101.0 / 20000.0).epsilon(1e-14));
  CHECK(harmonic_number(100) == doctest::Approx(5.18737751763962).epsilon(1e-13));
  CHECK(region_row(Family::Isotropic, 100).frac_steer == doctest::Approx(0.9576074870718398).epsilon(1e-13));
  CHECK(region_csv_header() == "family,N,tau_min,tau_sep_lo,tau_sep_hi,tau_steer,frac_sep,frac_ent,frac_steer");
  CHECK(region_csv_line(region_row(Family::Werner, 2)).rfind("werner,2,-3,-1,1,-1.5,0.5,", 0) == 0);
}
