#pragma once

#include "simplexdecomp/decompose.hpp"
#include "simplexdecomp/json_support.hpp"
#include "simplexdecomp/sicpovm.hpp"
#include "simplexdecomp/states.hpp"

namespace simplexdecomp {

/// {"ambient_dim": M, "vertices": [[...], ...]}
Json to_json(const RegularSimplex& s);
RegularSimplex simplex_from_json(const Json& j);

Json to_json(const VerificationReport& r);

/// {"kind", "N", "tau", "r", "s", "simplex", "factors": [{"R", "S"}], "report"}
Json to_json(const Decomposition& d);

/// {"N", "vector", "residual", "seed"}, the fiducial cache entry schema.
Json to_json(const Fiducial& f);

Json to_json(const ParamSet& p);
Json to_json(const Classification& c);
Json to_json(const RegionRow& r);

}  // namespace simplexdecomp
