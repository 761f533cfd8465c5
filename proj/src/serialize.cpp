#include "simplexdecomp/serialize.hpp"

namespace simplexdecomp {

Json to_json(const RegularSimplex& s) {
  return {{"ambient_dim", s.ambient_dim()}, {"vertices", real_matrix_columns_to_json(s.vertices)}};
}

RegularSimplex simplex_from_json(const Json& j) {
  const auto m = j.at("ambient_dim").get<Eigen::Index>();
  const Json& verts = j.at("vertices");
  RegularSimplex s;
  s.vertices.resize(m, static_cast<Eigen::Index>(verts.size()));
  for (std::size_t c = 0; c < verts.size(); ++c) {
    if (static_cast<Eigen::Index>(verts[c].size()) != m) throw Error("simplex vertex has wrong length");
    for (Eigen::Index r = 0; r < m; ++r) s.vertices(r, static_cast<Eigen::Index>(c)) = verts[c][r].get<double>();
  }
  return s;
}

Json to_json(const VerificationReport& r) {
  return {{"reconstruction_error", r.reconstruction_error},
          {"min_eig_R", r.min_eig_R},
          {"min_eig_S", r.min_eig_S},
          {"all_factors_psd", r.all_factors_psd},
          {"separable_certificate", r.separable_certificate}};
}

Json to_json(const Decomposition& d) {
  Json factors = Json::array();
  for (const auto& f : d.factors) factors.push_back({{"R", matrix_to_json(f.R)}, {"S", matrix_to_json(f.S)}});
  Json out = {{"kind", to_string(d.kind)}, {"N", d.n},          {"tau", d.tau},
              {"r", d.r},                  {"s", d.s},          {"weight", d.weight()},
              {"simplex", to_json(d.simplex)}, {"factors", std::move(factors)}};
  out["report"] = d.report ? to_json(*d.report) : Json(nullptr);
  if (!d.note.empty()) out["note"] = d.note;
  return out;
}

Json to_json(const Fiducial& f) {
  const auto* opt = std::get_if<Optimized>(&f.provenance);
  return {{"N", f.dim},
          {"vector", vector_to_json(f.vector)},
          {"residual", opt ? opt->residual : 0.0},
          {"seed", opt ? opt->seed : 0}};
}

Json to_json(const ParamSet& p) {
  Json out = {{"family", to_string(p.kind)}, {"N", p.n}, {"tau", p.tau}};
  if (p.phi) out["phi"] = *p.phi;
  if (p.alpha) out["alpha"] = *p.alpha;
  if (p.beta) out["beta"] = *p.beta;
  if (p.eta) out["eta"] = *p.eta;
  return out;
}

Json to_json(const Classification& c) {
  Json thresholds = {{"tau_min", c.range.lo},
                     {"tau_max", c.range.hi},
                     {"tau_sep_lo", c.separable.lo},
                     {"tau_sep_hi", c.separable.hi},
                     {"tau_steer", c.steer_threshold}};
  if (c.harmonic) thresholds["H_N"] = *c.harmonic;
  Json out = {{"family", to_string(c.kind)},
              {"N", c.n},
              {"tau", c.tau},
              {"class", to_string(c.cls)},
              {"thresholds", std::move(thresholds)}};
  if (c.on_phi_zero_boundary) out["boundary_note"] = "phi = 0: separable by the closed-interval construction";
  return out;
}

Json to_json(const RegionRow& r) {
  return {{"family", to_string(r.kind)}, {"N", r.n},
          {"tau_min", r.tau_min},        {"tau_sep_lo", r.tau_sep_lo},
          {"tau_sep_hi", r.tau_sep_hi},  {"tau_steer", r.tau_steer},
          {"frac_sep", r.frac_sep},      {"frac_ent", r.frac_ent},
          {"frac_steer", r.frac_steer}};
}

}  // namespace simplexdecomp
