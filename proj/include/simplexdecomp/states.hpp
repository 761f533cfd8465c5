#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simplexdecomp/blochspace.hpp"
#include "simplexdecomp/linalg.hpp"

namespace simplexdecomp {

enum class Family { Werner, Isotropic };

/// Parameters of the two families: phi, alpha, beta (Werner), eta (isotropic) and the
/// shared correlation strength tau multiplying the lambda (x) lambda terms.
enum class ParamName { Phi, Alpha, Beta, Eta, Tau };

std::string_view to_string(Family f);
std::string_view to_string(ParamName p);
std::optional<Family> parse_family(std::string_view s);
std::optional<ParamName> parse_param_name(std::string_view s);

struct Interval {
  double lo = 0;
  double hi = 0;

  bool contains(double x, double slack = 0) const { return x >= lo - slack && x <= hi + slack; }
  double length() const { return hi - lo; }
};

/// Legal tau for the family: Werner [-2(N+1)/N, 2(N-1)/N], isotropic [-2/N, 2(N^2-1)/N].
Interval tau_range(Family kind, int n);

/// Legal interval of a named parameter. Throws ParameterOutOfRange for a name that does not
/// belong to `kind`.
Interval param_range(Family kind, int n, ParamName name);

struct ParamSet {
  Family kind = Family::Werner;
  int n = 2;
  double tau = 0;
  std::optional<double> phi, alpha, beta;  // Werner
  std::optional<double> eta;               // isotropic

  double get(ParamName name) const;
};

/// Completes a ParamSet from one named value. Throws ParameterOutOfRange when the value
/// is outside its legal interval.
ParamSet convert_params(Family kind, int n, ParamName name, double value);

/// Werner state built from the formula belonging to `name`: phi and alpha and beta use the
/// identity/swap forms, tau uses the generator-correlator (Bloch) form.
DensityMatrix werner_density(int n, ParamName name, double value);

/// Isotropic state: eta uses (1-eta)/N^2 1 + eta P+, tau uses the Bloch form with lambda^T.
DensityMatrix isotropic_density(int n, ParamName name, double value);

/// Closed form of either family from the identity/swap/P+ formulas (never the Bloch sum).
DensityMatrix family_density(Family kind, int n, double tau);

enum class Nonlocality { Separable, EntangledUnsteerable, Steerable };
std::string_view to_string(Nonlocality c);

double harmonic_number(int n);

struct Classification {
  Nonlocality cls = Nonlocality::Separable;
  Family kind = Family::Werner;
  int n = 2;
  double tau = 0;
  Interval range;
  Interval separable;        ///< closed tau interval of separable states
  double steer_threshold;    ///< Werner: steerable for tau < this; isotropic: for tau > this
  std::optional<double> harmonic;
  bool on_phi_zero_boundary = false;  ///< Werner tau = -2/N, where phi > 0 and the closed interval disagree
};

/// Werner: Separable on [-2/N, 2(N-1)/N], EntangledUnsteerable on [-2(N^2-1)/N^2, -2/N),
/// Steerable below -2(N^2-1)/N^2.
Classification classify_werner(int n, double tau);

/// Isotropic: Separable for tau <= 2(N-1)/N, Steerable for tau > 2(H_N - 1)(N+1)/N.
Classification classify_isotropic(int n, double tau);

Classification classify(Family kind, int n, double tau);

struct RegionRow {
  Family kind = Family::Werner;
  int n = 2;
  double tau_min = 0, tau_max = 0;
  double tau_sep_lo = 0, tau_sep_hi = 0;
  double tau_steer = 0;
  double frac_sep = 0, frac_ent = 0, frac_steer = 0;
};

/// Fractions are Lebesgue measure in tau over the family range.
RegionRow region_row(Family kind, int n);
std::vector<RegionRow> region_table(int n);

std::string region_csv_header();
std::string region_csv_line(const RegionRow& row);

}  // namespace simplexdecomp
