#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "simplexdecomp/linalg.hpp"
#include "simplexdecomp/simplex.hpp"

namespace simplexdecomp {

inline constexpr double kExactSicTol = 1e-12;
inline constexpr double kOptimizedSicTol = 1e-8;

struct ExactRegistry {};

struct Optimized {
  std::uint64_t seed = 0;
  int iterations = 0;
  double residual = 0;
};

using Provenance = std::variant<ExactRegistry, Optimized>;

struct Fiducial {
  int dim = 0;
  CVector vector;
  Provenance provenance;

  bool is_exact() const { return std::holds_alternative<ExactRegistry>(provenance); }
};

struct SicPovm {
  int dim = 0;
  std::vector<CVector> states;  ///< D_{jk}|psi>, index j*N + k
  RegularSimplex bloch;         ///< unit Bloch directions of the projectors |psi_i><psi_i|
  double tol = kExactSicTol;
};

/// Weyl-Heisenberg displacements D_{jk} = X^j Z^k, ordered by j*N + k, with
/// X|m> = |m+1 mod N> and Z|m> = w^m |m>, w = exp(2 pi i / N).
std::vector<CMatrix> wh_displacements(int n);

/// max_{i,j} | |<psi_i|psi_j>|^2 - (N delta_ij + 1)/(N + 1) |
double sic_overlap_deviation(const std::vector<CVector>& states);

/// Builds the WH orbit of `f` and checks the SIC overlap condition. `tol` defaults to the
/// tolerance class of the fiducial's provenance. Throws NotAFiducial on failure.
SicPovm sic_from_fiducial(const Fiducial& f, std::optional<double> tol = std::nullopt);

/// sum over (j,k) != (0,0) of |<psi|D_jk|psi>|^4.
double frame_potential(const CVector& psi);
inline double frame_potential(const Fiducial& f) { return frame_potential(f.vector); }

/// (N^2 - 1)/(N + 1)^2, attained exactly by SIC fiducials.
double frame_potential_minimum(int n);

struct SearchOutcome {
  std::optional<Fiducial> fiducial;  ///< present on success
  double best_residual = 0;          ///< frame potential minus its minimum
  int iterations = 0;
  std::uint64_t seed = 0;

  bool success() const { return fiducial.has_value(); }
};

/// Minimizes the frame potential from a seeded random start with L-BFGS. Deterministic
/// for a given (n, seed, max_iters, tol). Failure is reported, not thrown.
SearchOutcome find_fiducial(int n, std::uint64_t seed, int max_iters = 5000, double tol = 1e-10);

/// Persisted optimized fiducials, one per dimension.
class FiducialCache {
 public:
  FiducialCache() = default;

  /// Accepts a single fiducial object or an array of them. Entries are not validated here.
  static FiducialCache load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  void insert(const Fiducial& f) { entries_[f.dim] = f; }
  std::optional<Fiducial> find(int n) const;
  const std::map<int, Fiducial>& entries() const { return entries_; }

 private:
  std::map<int, Fiducial> entries_;
};

/// Exact closed-form fiducials for N = 2, 3, then anything in `cache`.
std::optional<Fiducial> known_fiducial(int n, const FiducialCache& cache = {});

/// Dimensions with known SIC solutions: 2..24 and 28, 30, 31, 35, 37, 39, 43, 48, 124,
/// 143, 147, 168, 172, 195, 199, 228, 259, 323.
std::vector<int> solvable_dimensions();

}  // namespace simplexdecomp
