#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "simplexdecomp/blochspace.hpp"
#include "simplexdecomp/errors.hpp"
#include "simplexdecomp/random.hpp"
#include "simplexdecomp/sicpovm.hpp"
#include "test_support.hpp"

using namespace simplexdecomp;
using testsupport::loop_overlap2;

namespace {

bool is_unitary(const CMatrix& u, double tol) {
  return max_abs_diff(u * u.adjoint(), CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("simplexdecomp_test_" + name);
}

}  // namespace

TEST_CASE("wh_displacements: N=2 ordering") {
  const auto d = wh_displacements(2);
  REQUIRE(d.size() == 4);
  CMatrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  CHECK(max_abs_diff(d[0], CMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs_diff(d[1], z) < 1e-15);
  CHECK(max_abs_diff(d[2], x) < 1e-15);
  CHECK(max_abs_diff(d[3], x * z) < 1e-15);
  for (const auto& u : d) CHECK(is_unitary(u, 1e-12));
}

TEST_CASE("wh_displacements: cyclic order and ZX = w XZ") {
  const auto d3 = wh_displacements(3);
  const CMatrix x3 = d3[3], z3 = d3[1];
  CHECK(max_abs_diff(x3 * x3 * x3, CMatrix::Identity(3, 3)) < 1e-14);
  CHECK(max_abs_diff(z3 * z3 * z3, CMatrix::Identity(3, 3)) < 1e-14);

  for (int n = 2; n <= 8; ++n) {
    const auto d = wh_displacements(n);
    REQUIRE(d.size() == static_cast<std::size_t>(n * n));
    const CMatrix& x = d[static_cast<std::size_t>(n)];
    const CMatrix& z = d[1];
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / n);
    CHECK(max_abs_diff(z * x, w * x * z) < 1e-14);
    for (const auto& u : d) CHECK(is_unitary(u, 1e-12));
  }
  CHECK_THROWS_AS(wh_displacements(1), InvalidDimension);
}

TEST_CASE("known fiducials satisfy the SIC overlap condition") {
  for (int n : {2, 3}) {
    const auto f = known_fiducial(n);
    REQUIRE(f.has_value());
    CHECK(f->is_exact());
    const SicPovm sic = sic_from_fiducial(*f);
    REQUIRE(sic.states.size() == static_cast<std::size_t>(n * n));
    double dev = 0;
    for (std::size_t i = 0; i < sic.states.size(); ++i)
      for (std::size_t j = 0; j < sic.states.size(); ++j) {
        const double expected = i == j ? 1.0 : 1.0 / (n + 1.0);
        dev = std::max(dev, std::abs(loop_overlap2(sic.states[i], sic.states[j]) - expected));
      }
    CHECK(dev <= 1e-14);

    // Bloch directions form the regular simplex with dot -1/(N^2-1).
    const SimplexReport rep = verify_simplex(sic.bloch);
    CHECK(rep.ok);
    CHECK(rep.max_dot_dev <= 1e-12);

    // POVM completeness: sum_i |psi_i><psi_i| = N * 1.
    CMatrix frame = CMatrix::Zero(n, n);
    for (const auto& s : sic.states) frame += s * s.adjoint();
    CHECK(max_abs_diff(frame, double(n) * CMatrix::Identity(n, n)) <= 1e-12);
  }
  CHECK_FALSE(known_fiducial(7).has_value());
}

TEST_CASE("N=2 tetrahedron fiducial has Bloch vector (1,1,1)/sqrt 3") {
  const auto f = known_fiducial(2);
  const BlochVector b = bloch_from_density(DensityMatrix(f->vector * f->vector.adjoint()), su_generators(2));
  for (int k = 0; k < 3; ++k) CHECK(std::abs(b.coords(k) - 1.0 / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("sic_from_fiducial rejects non-fiducials") {
  CVector basis = CVector::Zero(3);
  basis(0) = 1.0;
  try {
    sic_from_fiducial(Fiducial{3, basis, Optimized{}});
    FAIL("expected NotAFiducial");
  } catch (const NotAFiducial& e) {
    CHECK(e.max_deviation() == doctest::Approx(0.75));  // |<0|Z^k|0>|^2 = 1 vs 1/4
  }
  CHECK_THROWS_AS(sic_from_fiducial(Fiducial{3, 2.0 * basis, Optimized{}}), ContractViolation);
}

TEST_CASE("frame_potential") {
  CHECK(frame_potential(*known_fiducial(2)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(frame_potential(*known_fiducial(3)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(frame_potential_minimum(2) == doctest::Approx(1.0 / 3.0));
  CVector zero = CVector::Zero(2);
  zero(0) = 1.0;
  CHECK(frame_potential(zero) >= 1.0);  // |<0|Z|0>|^4 alone is 1

  Rng rng(99);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 50; ++k) {
      CVector v(n);
      std::normal_distribution<double> normal;
      for (int i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
      v.normalize();
      CHECK(frame_potential(v) >= frame_potential_minimum(n) - 1e-12);
    }
  }
}

TEST_CASE("find_fiducial: N=2 converges from any seed") {
  for (std::uint64_t seed : {0u, 1u, 2u, 3u}) {
    const SearchOutcome out = find_fiducial(2, seed);
    REQUIRE(out.success());
    CHECK(out.best_residual <= 1e-10);
    const SicPovm sic = sic_from_fiducial(*out.fiducial);
    CHECK(sic_overlap_deviation(sic.states) <= 1e-8);
  }
}

TEST_CASE("find_fiducial: N=4 succeeds within the first 20 seeds") {
  bool found = false;
  for (std::uint64_t seed = 0; seed < 20 && !found; ++seed) {
    const SearchOutcome out = find_fiducial(4, seed, 5000, 1e-10);
    if (!out.success()) continue;
    found = true;
    CHECK(frame_potential(*out.fiducial) - frame_potential_minimum(4) <= 1e-10);
    const SicPovm sic = sic_from_fiducial(*out.fiducial, 10 * std::sqrt(1e-10));
    CHECK(verify_simplex(sic.bloch).ok);
  }
  CHECK(found);
}

TEST_CASE("find_fiducial: exhausted budget is a reported failure") {
  const SearchOutcome out = find_fiducial(3, 5, 1, 1e-10);
  CHECK_FALSE(out.success());
  CHECK(out.best_residual > 0.0);
  CHECK(out.iterations == 1);
}

TEST_CASE("find_fiducial is deterministic per seed") {
  const SearchOutcome a = find_fiducial(3, 42);
  const SearchOutcome b = find_fiducial(3, 42);
  REQUIRE(a.success());
  REQUIRE(b.success());
  CHECK(a.iterations == b.iterations);
  CHECK((a.fiducial->vector.array() == b.fiducial->vector.array()).all());
}

TEST_CASE("solvable_dimensions") {
  const auto dims = solvable_dimensions();
  CHECK(dims.size() == 41);
  CHECK(std::find(dims.begin(), dims.end(), 24) != dims.end());
  CHECK(std::find(dims.begin(), dims.end(), 25) == dims.end());
  CHECK(*std::max_element(dims.begin(), dims.end()) == 323);
  CHECK(std::is_sorted(dims.begin(), dims.end()));
}

TEST_CASE("FiducialCache: save, load, and lookup") {
  const SearchOutcome out = find_fiducial(4, 0);
  const SearchOutcome out5 = find_fiducial(2, 7);
  REQUIRE(out5.success());
  FiducialCache cache;
  cache.insert(*out5.fiducial);
  if (out.success()) cache.insert(*out.fiducial);
  const auto path = temp_file("cache.json");
  cache.save(path);
  const FiducialCache loaded = FiducialCache::load(path);
  CHECK(loaded.entries().size() == cache.entries().size());
  const auto f = loaded.find(2);
  REQUIRE(f.has_value());
  CHECK(max_abs_diff(f->vector, out5.fiducial->vector) == 0.0);  // 17 digits round-trip
  CHECK(std::get<Optimized>(f->provenance).seed == 7);
  // Registry wins for N = 2, cache supplies other dimensions.
  CHECK(known_fiducial(2, loaded)->is_exact());
  if (out.success()) CHECK(known_fiducial(4, loaded).has_value());

  // Single-object form.
  const auto single = temp_file("single.json");
  {
    std::ofstream os(single);
    os << R"({"N": 2, "vector": [[1, 0], [0, 0]], "residual": 0.5, "seed": 3})";
  }
  CHECK(FiducialCache::load(single).find(2).has_value());

  const auto broken = temp_file("broken.json");
  {
    std::ofstream os(broken);
    os << "{not json";
  }
  CHECK_THROWS_AS(FiducialCache::load(broken), Error);
  CHECK_THROWS_AS(FiducialCache::load(temp_file("does_not_exist.json")), Error);
  std::filesystem::remove(path);
  std::filesystem::remove(single);
  std::filesystem::remove(broken);
}
