// simplexdecomp: construct, decompose, and classify Werner and isotropic states.
//
// Exit codes: 0 success, 1 selftest/certificate failure, 2 SIC search or availability
// failure, 3 I/O error, 4 non-separable input, 5 bad parameter.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simplexdecomp/decompose.hpp"
#include "simplexdecomp/selftest.hpp"
#include "simplexdecomp/serialize.hpp"

using namespace simplexdecomp;

namespace {

enum Exit : int { kOk = 0, kSelftestFailed = 1, kSearchFailed = 2, kIoError = 3, kNotSeparable = 4, kBadParameter = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadParameter : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamFlags {
  std::optional<double> tau, phi, alpha, beta, eta;

  void add_to(CLI::App* cmd) {
    auto* group = cmd->add_option_group("parameter", "state parameter (exactly one)");
    group->add_option("--tau", tau, "correlation strength tau");
    group->add_option("--phi", phi, "Werner phi in [-1, 1]");
    group->add_option("--alpha", alpha, "Werner alpha in [-1, 1]");
    group->add_option("--beta", beta, "Werner beta in [(1-N)/(N+1), 1]");
    group->add_option("--eta", eta, "isotropic eta in [-1/(N^2-1), 1]");
    group->require_option(1);
  }

  std::pair<ParamName, double> selected() const {
    if (tau) return {ParamName::Tau, *tau};
    if (phi) return {ParamName::Phi, *phi};
    if (alpha) return {ParamName::Alpha, *alpha};
    if (beta) return {ParamName::Beta, *beta};
    if (eta) return {ParamName::Eta, *eta};
    throw BadParameter("no state parameter given");
  }
};

struct Options {
  std::string cache_path;

  // sic
  int sic_n = 0;
  bool sic_find = false;
  bool sic_verify = false;
  std::uint64_t seed = 1;
  int restarts = 1;
  int max_iters = 5000;
  double search_tol = 1e-10;

  // decompose / classify
  std::string kind;
  int n = 0;
  ParamFlags params;
  std::optional<double> r;
  int count = 1;
  std::string out_path;

  // regions
  std::string family = "both";
  std::string n_list = "2,3,...,100";
  std::string region_format = "csv";

  // selftest
  int n_max = 3;
  double selftest_tol = 1e-10;
};

void emit(const std::string& text, const std::string& path = {}) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text << '\n';
  if (!out) throw IoError("failed writing " + path);
}

std::optional<std::string> cache_path(const Options& o) {
  if (const char* env = std::getenv("SIMPLEX_DECOMP_CACHE"); env && *env) return std::string(env);
  if (!o.cache_path.empty()) return o.cache_path;
  return std::nullopt;
}

FiducialCache load_cache(const Options& o) {
  const auto path = cache_path(o);
  if (!path || !std::filesystem::exists(*path)) return {};
  try {
    return FiducialCache::load(*path);
  } catch (const Error& e) {
    throw IoError(e.what());
  }
}

Family parse_kind(const std::string& s) {
  const auto kind = parse_family(s);
  if (!kind) throw BadParameter("unknown family '" + s + "' (expected werner or iso)");
  return *kind;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) tokens.push_back(tok);
  }
  const auto to_int = [](const std::string& t) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw BadParameter("bad entry '" + t + "' in N list");
    return v;
  };

  std::vector<int> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t == "...") {
      // a, b, ..., c expands the arithmetic progression with step b - a up to c.
      if (out.size() < 2 || i + 1 >= tokens.size()) throw BadParameter("'...' needs two values before and one after");
      const int step = out[out.size() - 1] - out[out.size() - 2];
      const int last = to_int(tokens[i + 1]);
      if (step <= 0) throw BadParameter("'...' needs an increasing progression");
      for (int v = out.back() + step; v < last; v += step) out.push_back(v);
    } else if (const auto dash = t.find('-', 1); dash != std::string::npos) {
      const int a = to_int(t.substr(0, dash)), b = to_int(t.substr(dash + 1));
      for (int v = a; v <= b; ++v) out.push_back(v);
    } else {
      out.push_back(to_int(t));
    }
  }
  if (out.empty()) throw BadParameter("empty N list");
  for (int v : out)
    if (v < 2) throw BadParameter("N must be >= 2, got " + std::to_string(v));
  return out;
}

int run_sic(const Options& o) {
  if (o.sic_n < 2) throw BadParameter("N must be >= 2");
  if (o.restarts < 1 || o.max_iters < 1) throw BadParameter("--restarts and --max-iters must be positive");
  FiducialCache cache = load_cache(o);

  if (o.sic_find) {
    SearchOutcome best;
    best.best_residual = std::numeric_limits<double>::infinity();
    for (int k = 0; k < o.restarts; ++k) {
      const SearchOutcome out = find_fiducial(o.sic_n, o.seed + static_cast<std::uint64_t>(k), o.max_iters, o.search_tol);
      if (out.success() || out.best_residual < best.best_residual) best = out;
      if (out.success()) break;
    }
    Json report = {{"N", o.sic_n}, {"success", best.success()}, {"seed", best.seed},
                   {"iterations", best.iterations}, {"residual", best.best_residual}};
    if (!best.success()) {
      emit(dump_json(report));
      std::cerr << "error: no fiducial reached tol " << format_double(o.search_tol) << "; best residual "
                << format_double(best.best_residual) << '\n';
      return kSearchFailed;
    }
    const SicPovm sic = sic_from_fiducial(*best.fiducial, 10.0 * std::sqrt(o.search_tol));
    report["max_overlap_deviation"] = sic_overlap_deviation(sic.states);
    report["fiducial"] = to_json(*best.fiducial);
    if (const auto path = cache_path(o)) {
      cache.insert(*best.fiducial);
      try {
        cache.save(*path);
      } catch (const Error& e) {
        throw IoError(e.what());
      }
      report["cache"] = *path;
    }
    emit(dump_json(report));
    return kOk;
  }

  const auto f = known_fiducial(o.sic_n, cache);
  if (!f) {
    std::cerr << "error: no fiducial known for N = " << o.sic_n << "; run `simplexdecomp sic " << o.sic_n
              << " --find --cache <path>`\n";
    return kSearchFailed;
  }
  const double tol = f->is_exact() ? kExactSicTol : kOptimizedSicTol;
  std::vector<CVector> states;
  for (const auto& d : wh_displacements(o.sic_n)) states.push_back((d * f->vector).normalized());
  const double dev = sic_overlap_deviation(states);
  const bool ok = dev <= tol && std::abs(f->vector.norm() - 1.0) <= 1e-12;
  emit(dump_json({{"N", o.sic_n},
                  {"source", f->is_exact() ? "registry" : "cache"},
                  {"max_overlap_deviation", dev},
                  {"tol", tol},
                  {"ok", ok}}));
  return ok ? kOk : kSearchFailed;
}

int run_decompose(const Options& o) {
  const Family kind = parse_kind(o.kind);
  const auto [name, value] = o.params.selected();
  if (o.count < 1) throw BadParameter("--count must be >= 1");
  const ParamSet params = convert_params(kind, o.n, name, value);
  const Classification cls = classify(kind, o.n, params.tau);
  if (cls.cls != Nonlocality::Separable) {
    emit(dump_json({{"params", to_json(params)}, {"classification", to_json(cls)}}));
    std::cerr << "error: state is " << to_string(cls.cls) << ", not separable\n";
    return kNotSeparable;
  }

  const auto f = known_fiducial(o.n, load_cache(o));
  if (!f) {
    std::cerr << "error: no SIC fiducial for N = " << o.n << "; run `simplexdecomp sic " << o.n
              << " --find --cache <path>` first\n";
    return kSearchFailed;
  }
  SicPovm sic;
  try {
    sic = sic_from_fiducial(*f);
  } catch (const NotAFiducial& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSearchFailed;
  }

  std::vector<Decomposition> decs;
  if (o.r) {
    try {
      decs.push_back(separable_decompose(kind, o.n, params.tau, *o.r, sic));
    } catch (const NotAdmissible& e) {
      Json ivs = Json::array();
      for (const auto& iv : e.intervals()) ivs.push_back(Json::array({iv.lo, iv.hi}));
      emit(dump_json({{"error", "r not admissible"}, {"r", *o.r}, {"nearest", e.nearest()}, {"admissible_r", ivs}}));
      std::cerr << "error: " << e.what() << '\n';
      return kBadParameter;
    }
  } else {
    decs = contour_sample(kind, o.n, params.tau, o.count, sic);
  }

  Json list = Json::array();
  bool all_ok = true;
  for (const auto& d : decs) {
    all_ok = all_ok && d.report && d.report->separable_certificate;
    list.push_back(to_json(d));
  }
  emit(dump_json({{"params", to_json(params)}, {"decompositions", std::move(list)}}), o.out_path);
  return all_ok ? kOk : kSelftestFailed;
}

int run_classify(const Options& o) {
  const Family kind = parse_kind(o.kind);
  const auto [name, value] = o.params.selected();
  const ParamSet params = convert_params(kind, o.n, name, value);
  const Classification cls = classify(kind, o.n, params.tau);
  Json out = to_json(cls);
  out["params"] = to_json(params);
  emit(dump_json(out));
  return kOk;
}

int run_regions(const Options& o) {
  std::vector<Family> families;
  if (o.family == "both") {
    families = {Family::Werner, Family::Isotropic};
  } else {
    families = {parse_kind(o.family)};
  }
  if (o.region_format != "csv" && o.region_format != "json")
    throw BadParameter("--out must be csv or json");
  const std::vector<int> ns = parse_n_list(o.n_list);

  std::string text;
  if (o.region_format == "csv") {
    text = region_csv_header();
    for (auto kind : families)
      for (int n : ns) text += '\n' + region_csv_line(region_row(kind, n));
  } else {
    Json rows = Json::array();
    for (auto kind : families)
      for (int n : ns) rows.push_back(to_json(region_row(kind, n)));
    text = dump_json(rows);
  }
  emit(text, o.out_path);
  return kOk;
}

int run_selftest_cmd(const Options& o) {
  SelftestOptions opt;
  opt.n_max = o.n_max;
  opt.tol = o.selftest_tol;
  if (opt.n_max < 2) throw BadParameter("--n-max must be >= 2");

  std::vector<CheckResult> results;
  if (const auto path = cache_path(o); path && std::filesystem::exists(*path)) {
    try {
      opt.cache = FiducialCache::load(*path);
    } catch (const Error& e) {
      results.push_back({"fiducial cache load", false, e.what()});
    }
  }
  if (results.empty()) results = run_selftest(opt);

  const CheckResult* first_failure = nullptr;
  std::ostringstream table;
  for (const auto& r : results) {
    table << (r.passed ? "PASS  " : "FAIL  ") << r.name;
    if (!r.detail.empty()) table << "  [" << r.detail << ']';
    table << '\n';
    if (!r.passed && !first_failure) first_failure = &r;
  }
  std::cout << table.str();
  if (first_failure) {
    std::cerr << "selftest failed: " << first_failure->name << '\n';
    return kSelftestFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Werner/isotropic state decompositions over SIC regular simplexes"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--cache,--fiducial-cache", o.cache_path, "fiducial cache file (env SIMPLEX_DECOMP_CACHE overrides)");

  auto* sic = app.add_subcommand("sic", "find or verify a SIC-POVM fiducial");
  sic->add_option("N", o.sic_n, "dimension")->required();
  auto* find = sic->add_flag("--find", o.sic_find, "search by frame-potential minimization");
  sic->add_flag("--verify", o.sic_verify, "check the known or cached fiducial (default)")->excludes(find);
  sic->add_option("--seed", o.seed, "first random seed");
  sic->add_option("--restarts", o.restarts, "number of consecutive seeds to try");
  sic->add_option("--max-iters", o.max_iters, "iteration budget per seed");
  sic->add_option("--tol", o.search_tol, "frame-potential tolerance");
  sic->add_option("--cache,--fiducial-cache", o.cache_path, "fiducial cache file");

  auto* dec = app.add_subcommand("decompose", "separable product decomposition");
  dec->add_option("kind", o.kind, "werner | iso")->required();
  dec->add_option("N", o.n, "local dimension")->required();
  o.params.add_to(dec);
  dec->add_option("--r", o.r, "radius r of the first simplex");
  dec->add_option("--count", o.count, "number of contour samples");
  dec->add_option("--out", o.out_path, "write JSON here instead of stdout");
  dec->add_option("--cache,--fiducial-cache", o.cache_path, "fiducial cache file");

  auto* cls = app.add_subcommand("classify", "nonlocality class and thresholds");
  cls->add_option("kind", o.kind, "werner | iso")->required();
  cls->add_option("N", o.n, "local dimension")->required();
  o.params.add_to(cls);

  auto* reg = app.add_subcommand("regions", "tau region table per family and N");
  reg->add_option("--family", o.family, "both | werner | iso");
  reg->add_option("--n-list", o.n_list, "e.g. \"2,3,...,100\" or \"2-10,50\"");
  reg->add_option("--out", o.region_format, "csv | json");
  reg->add_option("-o,--output", o.out_path, "write the table here instead of stdout");

  auto* st = app.add_subcommand("selftest", "run the invariant suite at reduced scale");
  st->add_option("--n-max", o.n_max, "largest N to check");
  st->add_option("--tol", o.selftest_tol, "reconstruction tolerance");
  st->add_option("--cache,--fiducial-cache", o.cache_path, "fiducial cache file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParameter;
  }

  try {
    if (sic->parsed()) return run_sic(o);
    if (dec->parsed()) return run_decompose(o);
    if (cls->parsed()) return run_classify(o);
    if (reg->parsed()) return run_regions(o);
    if (st->parsed()) return run_selftest_cmd(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const BadParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParameter;
  } catch (const ParameterOutOfRange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParameter;
  } catch (const InvalidDimension& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSelftestFailed;
  }
  return kBadParameter;
}
