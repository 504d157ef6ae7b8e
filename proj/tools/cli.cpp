#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wittsat/acceptance.hpp"
#include "wittsat/encoding.hpp"
#include "wittsat/errors.hpp"
#include "wittsat/geometry.hpp"
#include "wittsat/kernels.hpp"
#include "wittsat/oracle.hpp"
#include "wittsat/orthogonal.hpp"

namespace wittsat::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

enum class Route { algebra, cover, dpll, all };

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<Route> route;
  std::size_t limit = std::size_t{1} << 20;
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  std::size_t max_models = 4096;
  bool json = false;
  bool solver_codes = false;
  ClauseOrder order = ClauseOrder::given;
  std::vector<int> criteria;
};

// Two routes disagreed, or a route produced an unverifiable answer.
class Divergence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string read_input(const std::string &path, std::istream &in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw InvalidArgument("cannot open " + path);
  ss << f.rdbuf();
  return ss.str();
}

const char *route_name(Route r) {
  switch (r) {
  case Route::algebra:
    return "algebra";
  case Route::cover:
    return "cover";
  case Route::dpll:
    return "dpll";
  case Route::all:
    return "all";
  }
  return "?";
}

int verdict_code(bool unsat, const RunConfig &cfg) {
  if (cfg.solver_codes)
    return unsat ? kSolverUnsat : kSolverSat;
  return unsat ? kUnsat : kSat;
}

std::string dimacs_line(const Assignment &a) {
  std::string s = "v";
  for (int lit : a.to_dimacs())
    s += " " + std::to_string(lit);
  return s + " 0";
}

Json plane_json(const TotallyNullPlane &plane) {
  Json gens = Json::array();
  for (const auto &g : plane.generators())
    gens.push_back(g.to_string());
  return gens;
}

Json count_json(const Integer &c) {
  if (c <= std::numeric_limits<std::uint64_t>::max())
    return static_cast<std::uint64_t>(c);
  return c.str();
}

Json matrix_json(const Eigen::MatrixXd &m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_json(std::ostream &out, const Json &j) { out << j.dump(2) << "\n"; }

//===----------------------------------------------------------------------===//
// check
//===----------------------------------------------------------------------===//

int cmd_check(const RunConfig &cfg, const CnfFormula &f, std::ostream &out) {
  Route route = cfg.route.value_or(f.n <= 16 ? Route::all : Route::dpll);
  std::vector<Route> routes = route == Route::all
                                  ? std::vector<Route>{Route::algebra, Route::cover, Route::dpll}
                                  : std::vector<Route>{route};

  Json verdicts = Json::object(), timings = Json::object(), stats = Json::object();
  std::vector<std::string> warnings = f.meta.warnings;
  std::optional<bool> unsat;
  bool diverged = false;
  std::optional<Assignment> model;

  for (Route r : routes) {
    auto t0 = Clock::now();
    bool route_unsat = false;
    switch (r) {
    case Route::algebra: {
      EncodeStats es;
      DiagonalElement s = encode_formula(f, {cfg.limit, cfg.order}, &es);
      ZeroTestStats zs;
      route_unsat = is_zero(s, &zs);
      stats["patterns"] = es.final_terms;
      stats["max_patterns"] = es.max_terms;
      stats["splits"] = zs.splits;
      warnings.insert(warnings.end(), es.warnings.begin(), es.warnings.end());
      if (!route_unsat && !model)
        model = model_from_element(s);
      break;
    }
    case Route::cover: {
      auto patterns = cover_patterns(f);
      CoverStats cs;
      auto w = witness_uncovered(patterns, f.n, &cs);
      route_unsat = !w;
      stats["cover_patterns"] = patterns.size();
      stats["cover_splits"] = cs.splits;
      stats["unate_steps"] = cs.unate_steps;
      if (w && !model)
        model = assignment_of(*w);
      break;
    }
    case Route::dpll: {
      auto res = dpll(f);
      route_unsat = !res.satisfiable;
      stats["dpll_decisions"] = res.decisions;
      stats["dpll_propagations"] = res.propagations;
      if (res.model && !model)
        model = res.model;
      break;
    }
    case Route::all:
      break;
    }
    timings[route_name(r)] = ms_since(t0);
    verdicts[route_name(r)] = route_unsat ? "UNSAT" : "SAT";
    if (unsat && *unsat != route_unsat)
      diverged = true;
    unsat = unsat.value_or(route_unsat);
  }
  if (!*unsat && (!model || !f.satisfied_by(*model)))
    diverged = true;

  Json routes_json = Json::array();
  for (Route r : routes)
    routes_json.push_back(route_name(r));

  if (cfg.json) {
    Json j;
    j["command"] = "check";
    j["n"] = f.n;
    j["m"] = f.m();
    j["status"] = diverged ? "DIVERGENCE" : *unsat ? "UNSAT" : "SAT";
    if (!diverged && !*unsat)
      j["model"] = model->to_dimacs();
    j["routes"] = routes_json;
    j["verdicts"] = verdicts;
    j["timings_ms"] = timings;
    j["stats"] = stats;
    j["warnings"] = warnings;
    emit_json(out, j);
  } else {
    out << "c n " << f.n << " m " << f.m() << "\n";
    for (Route r : routes)
      out << "c " << route_name(r) << ": "
          << verdicts[route_name(r)].get<std::string>() << " ("
          << timings[route_name(r)].get<double>() << " ms)\n";
    for (const auto &w : warnings)
      out << "c warning: " << w << "\n";
    if (diverged) {
      out << "s DIVERGENCE\n";
    } else {
      out << (*unsat ? "s UNSATISFIABLE\n" : "s SATISFIABLE\n");
      if (!*unsat)
        out << dimacs_line(*model) << "\n";
    }
  }
  return diverged ? kDivergence : verdict_code(*unsat, cfg);
}

//===----------------------------------------------------------------------===//
// models
//===----------------------------------------------------------------------===//

int cmd_models(const RunConfig &cfg, const CnfFormula &f, std::ostream &out) {
  Route route = cfg.route.value_or(Route::all);
  if (route != Route::algebra && route != Route::all)
    throw InvalidArgument("models supports --route algebra or all");

  auto t0 = Clock::now();
  EncodeOptions opts{cfg.limit, cfg.order};
  Integer count = count_models(f, opts);
  std::vector<Assignment> listed;
  bool listable = f.n <= 24;
  if (listable)
    listed = models(f, 24, opts);
  double algebra_ms = ms_since(t0);

  std::optional<double> truth_ms;
  if (route == Route::all && listable) {
    auto t1 = Clock::now();
    std::vector<Assignment> truth;
    for (std::uint64_t mask : brute_force(f).models)
      truth.push_back(Assignment::from_mask(f.n, mask));
    std::sort(truth.begin(), truth.end());
    truth_ms = ms_since(t1);
    if (truth != listed || Integer(truth.size()) != count)
      throw Divergence("model set differs from the truth table");
  }
  bool truncated = listed.size() > cfg.max_models;
  if (truncated)
    listed.resize(cfg.max_models);

  if (cfg.json) {
    Json j;
    j["command"] = "models";
    j["n"] = f.n;
    j["m"] = f.m();
    j["count"] = count_json(count);
    Json ms = Json::array();
    for (const auto &a : listed)
      ms.push_back(a.to_dimacs());
    j["models"] = ms;
    j["listed"] = listable;
    j["truncated"] = truncated;
    j["routes"] = route == Route::all && listable ? Json::array({"algebra", "truth-table"})
                                                  : Json::array({"algebra"});
    Json timings{{"algebra", algebra_ms}};
    if (truth_ms)
      timings["truth-table"] = *truth_ms;
    j["timings_ms"] = timings;
    j["warnings"] = f.meta.warnings;
    emit_json(out, j);
  } else {
    out << "c count " << count << "\n";
    for (const auto &a : listed)
      out << dimacs_line(a) << "\n";
    if (!listable)
      out << "c models not listed for n > 24\n";
    if (truncated)
      out << "c list truncated at " << cfg.max_models << "\n";
  }
  return verdict_code(count == 0, cfg);
}

//===----------------------------------------------------------------------===//
// cover
//===----------------------------------------------------------------------===//

bool looks_like_dimacs(std::string_view text) {
  std::istringstream ss{std::string(text)};
  std::string line;
  while (std::getline(ss, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == 'p')
      return true;
  }
  return false;
}

int cmd_cover(const RunConfig &cfg, const std::string &text, std::ostream &out) {
  std::optional<CnfFormula> f;
  std::vector<TernaryPattern> patterns;
  int n = 0;
  if (looks_like_dimacs(text)) {
    f = parse_dimacs(text);
    patterns = cover_patterns(*f);
    n = f->n;
  } else {
    patterns = parse_pattern_dump(text);
    if (patterns.empty())
      throw InvalidArgument("pattern dump holds no patterns");
    n = patterns.front().n();
  }
  if (cfg.samples > 0 && !f)
    throw InvalidArgument("--samples needs a DIMACS formula");
  Route route = cfg.route.value_or(n <= 16 ? Route::all : Route::cover);
  if (route != Route::cover && route != Route::all)
    throw InvalidArgument("cover supports --route cover or all");

  auto t0 = Clock::now();
  CoverStats cs;
  auto witness = witness_uncovered(patterns, n, &cs);
  double cover_ms = ms_since(t0);

  std::optional<double> enum_ms;
  if (route == Route::all && n <= 24) {
    auto t1 = Clock::now();
    bool enum_covered = !kernels::first_uncovered(patterns, n).has_value();
    enum_ms = ms_since(t1);
    if (enum_covered != !witness)
      throw Divergence("cover verdict differs from exhaustive enumeration");
  }
  if (witness) {
    bool matched = false;
    for (const auto &p : patterns)
      matched = matched || p.matches(*witness);
    if (matched)
      throw Divergence("witness lies in a pattern");
    if (f && !f->satisfied_by(assignment_of(*witness)))
      throw Divergence("witness is not a model");
  }

  std::optional<ExploreReport> report;
  if (cfg.samples > 0)
    report = explore_cover(*f, cfg.samples, cfg.seed);

  if (cfg.json) {
    Json j;
    j["command"] = "cover";
    j["n"] = n;
    Json ps = Json::array();
    for (const auto &p : patterns)
      ps.push_back(p.to_string());
    j["patterns"] = ps;
    j["covered"] = !witness;
    j["witness"] = witness ? Json(witness->to_string()) : Json(nullptr);
    if (witness)
      j["model"] = assignment_of(*witness).to_dimacs();
    j["stats"] = {{"splits", cs.splits}, {"unate_steps", cs.unate_steps}};
    Json timings{{"cover", cover_ms}};
    if (enum_ms)
      timings["enumeration"] = *enum_ms;
    j["timings_ms"] = timings;
    if (report) {
      j["explorer"] = {{"samples", report->samples},
                       {"seed", report->seed},
                       {"discrete_checked", report->discrete_checked},
                       {"discrete_cover", report->discrete_cover},
                       {"discrete_matches_cover", report->discrete_matches_cover},
                       {"strict_fraction", report->strict_fraction},
                       {"transversal_fraction", report->transversal_fraction},
                       {"transversal_any_fraction", report->transversal_any_fraction},
                       {"det_positive_fraction", report->det_positive_fraction}};
    }
    if (f)
      j["warnings"] = f->meta.warnings;
    emit_json(out, j);
  } else {
    for (std::size_t i = 0; i < patterns.size(); ++i)
      out << "pattern " << i + 1 << ": " << patterns[i].to_string() << "\n";
    out << "verdict: " << (witness ? "uncovered" : "covered") << "\n";
    if (witness)
      out << "witness: " << witness->to_string() << " ("
          << dimacs_line(assignment_of(*witness)) << ")\n";
    if (report) {
      out << "explorer: samples " << report->samples << " seed " << report->seed << "\n";
      if (report->discrete_checked)
        out << "  discrete_cover " << (report->discrete_cover ? "true" : "false")
            << " (matches cover: " << (report->discrete_matches_cover ? "yes" : "no")
            << ")\n";
      out << "  strict_fraction " << report->strict_fraction << "\n"
          << "  transversal_fraction " << report->transversal_fraction << "\n"
          << "  transversal_any_fraction " << report->transversal_any_fraction << "\n"
          << "  det_positive_fraction " << report->det_positive_fraction << "\n";
    }
  }
  return verdict_code(!witness, cfg);
}

//===----------------------------------------------------------------------===//
// geometry
//===----------------------------------------------------------------------===//

int cmd_geometry(const RunConfig &cfg, const CnfFormula &f, std::ostream &out) {
  Json clauses = Json::array();
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const Clause &c = f.clauses[j];
    Json e;
    e["index"] = j + 1;
    e["literals"] = c.to_dimacs();
    if (c.is_tautology()) {
      e["tautology"] = true;
    } else {
      e["tnp"] = plane_json(tnp_of_clause(c, f.n));
      e["pattern"] = induced_pattern(c, f.n).to_string();
      // Spinor-plane intersection is only proved for k < n - 2.
      e["proved_regime"] = in_proved_regime(c, f.n);
    }
    clauses.push_back(std::move(e));
  }

  bool listed = f.n <= 24 && (std::uint64_t{1} << f.n) <= cfg.max_models;
  Json assignments = Json::array();
  if (listed) {
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << f.n); ++s) {
      Assignment sigma = Assignment::from_mask(f.n, s);
      SignVector eps = mtnp_of_assignment(sigma);
      Json falsified = Json::array();
      for (std::size_t j = 0; j < f.clauses.size(); ++j)
        if (!f.clauses[j].is_tautology() &&
            compatible(f.clauses[j], sigma, CheckMode::verify))
          falsified.push_back(j + 1);
      assignments.push_back({{"assignment", sigma.to_string()},
                             {"signs", eps.to_string()},
                             {"mtnp", plane_json(plane_of(eps))},
                             {"falsifies", falsified}});
    }
  }

  if (cfg.json) {
    Json j;
    j["command"] = "geometry";
    j["n"] = f.n;
    j["m"] = f.m();
    j["clauses"] = clauses;
    j["assignments_listed"] = listed;
    j["assignments"] = assignments;
    j["warnings"] = f.meta.warnings;
    emit_json(out, j);
  } else {
    for (const auto &e : clauses) {
      out << "clause " << e["index"].get<std::size_t>() << ":";
      for (int lit : e["literals"])
        out << " " << lit;
      if (e.contains("tautology")) {
        out << "  tautology\n";
        continue;
      }
      out << "  M(z) = span{";
      bool first = true;
      for (const auto &g : e["tnp"]) {
        out << (first ? "" : ", ") << g.get<std::string>();
        first = false;
      }
      out << "}  pattern " << e["pattern"].get<std::string>();
      if (!e["proved_regime"].get<bool>())
        out << "  (k >= n - 2)";
      out << "\n";
    }
    for (const auto &a : assignments) {
      out << "assignment " << a["assignment"].get<std::string>() << "  signs "
          << a["signs"].get<std::string>() << "  falsifies";
      if (a["falsifies"].empty())
        out << " none";
      for (const auto &k : a["falsifies"])
        out << " " << k.get<std::size_t>();
      out << "\n";
    }
    if (!listed)
      out << "c assignments not listed: 2^n exceeds --max-models\n";
  }
  return kSat;
}

//===----------------------------------------------------------------------===//
// rebase
//===----------------------------------------------------------------------===//

int cmd_rebase(const RunConfig &cfg, const std::string &text, std::ostream &out) {
  auto ms = parse_matrices(text);
  if (ms.size() != 2)
    throw InvalidArgument("rebase needs exactly two matrices, got " +
                          std::to_string(ms.size()));
  if (ms[0].rows() != ms[1].rows())
    throw DimensionMismatch(static_cast<std::size_t>(ms[0].rows()),
                            static_cast<std::size_t>(ms[1].rows()));
  OrthogonalMatrix t1(ms[0], kVerifyTol), t2(ms[1], kVerifyTol);
  int n = t1.n();
  int dim = intersect_dim(mtnp_from_isometry(t1), mtnp_from_isometry(t2));

  try {
    auto t0 = Clock::now();
    WittBasis basis = witt_rebase(t1, t2);
    double rebase_ms = ms_since(t0);
    auto r = rebase_residuals(basis, mtnp_from_isometry(t1), mtnp_from_isometry(t2));
    if (cfg.json) {
      Json j;
      j["command"] = "rebase";
      j["n"] = n;
      j["transversal"] = true;
      j["intersection_dimension"] = dim;
      j["p"] = matrix_json(basis.p);
      j["q"] = matrix_json(basis.q);
      j["residuals"] = {{"pairing", r.pairing},
                        {"p_null", r.p_null},
                        {"q_null", r.q_null},
                        {"first_plane", r.first_plane},
                        {"second_plane", r.second_plane}};
      j["timings_ms"] = {{"rebase", rebase_ms}};
      emit_json(out, j);
    } else {
      auto rows = [&](const char *name, const Eigen::MatrixXd &m) {
        out << name << " columns, " << m.rows() << " x " << m.cols() << "\n";
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          for (Eigen::Index c = 0; c < m.cols(); ++c)
            out << (c ? " " : "") << m(r, c);
          out << "\n";
        }
      };
      out.precision(17);
      rows("p'", basis.p);
      rows("q'", basis.q);
      out.precision(6);
      out << "residual pairing " << r.pairing << "\n"
          << "residual p_null " << r.p_null << "\n"
          << "residual q_null " << r.q_null << "\n"
          << "residual first_plane " << r.first_plane << "\n"
          << "residual second_plane " << r.second_plane << "\n";
    }
    return kSat;
  } catch (const NotTransversal &e) {
    if (cfg.json) {
      Json j;
      j["command"] = "rebase";
      j["n"] = n;
      j["transversal"] = false;
      j["intersection_dimension"] = e.dimension();
      j["rank_intersection_dimension"] = dim;
      emit_json(out, j);
    }
    throw;
  }
}

//===----------------------------------------------------------------------===//
// selftest
//===----------------------------------------------------------------------===//

int cmd_selftest(const RunConfig &cfg, bool seed_given, std::ostream &out) {
  AcceptanceOptions opts;
  if (seed_given)
    opts.seed = cfg.seed;
  opts.only = cfg.criteria;
  int failed = 0;
  auto results = run_acceptance(opts, [&](const CriterionResult &r) {
    failed += !r.pass;
    if (!cfg.json)
      out << format_result(r) << "\n" << std::flush;
  });
  if (cfg.json) {
    Json j;
    j["command"] = "selftest";
    j["seed"] = opts.seed;
    Json cs = Json::array();
    for (const auto &r : results)
      cs.push_back({{"id", r.id},
                    {"title", r.title},
                    {"pass", r.pass},
                    {"seconds", r.seconds},
                    {"detail", r.detail}});
    j["criteria"] = cs;
    j["failed"] = failed;
    emit_json(out, j);
  } else {
    out << failed << " criterion(s) failed\n";
  }
  return failed == 0 ? kSat : kUnsat;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
        std::istream &in) {
  RunConfig cfg;
  CLI::App app{"wittsat: SAT through Clifford algebra and null-plane geometry", "wittsat"};
  app.require_subcommand(1);

  const std::map<std::string, Route> routes{{"algebra", Route::algebra},
                                            {"cover", Route::cover},
                                            {"dpll", Route::dpll},
                                            {"all", Route::all}};
  const std::map<std::string, ClauseOrder> orders{{"given", ClauseOrder::given},
                                                  {"activity", ClauseOrder::activity}};
  Route route_value = Route::all;

  auto common = [&](CLI::App *sub, bool needs_file) {
    sub->add_option("--route", route_value, "algebra, cover, dpll or all")
        ->transform(CLI::CheckedTransformer(routes));
    sub->add_option("--limit", cfg.limit, "term budget of the algebraic route")
        ->envname("WITTSAT_LIMIT")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "sampling seed");
    sub->add_option("--samples", cfg.samples, "Haar samples for the explorer");
    sub->add_option("--max-models", cfg.max_models, "cap on listed models/assignments")
        ->check(CLI::PositiveNumber);
    sub->add_option("--order", cfg.order, "clause order: given or activity")
        ->transform(CLI::CheckedTransformer(orders));
    sub->add_flag("--json", cfg.json, "JSON report");
    sub->add_flag("--solver-codes", cfg.solver_codes, "exit 10 for SAT, 20 for UNSAT");
    if (needs_file)
      sub->add_option("FILE", cfg.input, "input file, - for stdin")->required();
  };

  for (auto [name, help] : std::vector<std::pair<const char *, const char *>>{
           {"check", "decide satisfiability on the selected routes"},
           {"models", "count and list models from the algebraic element"},
           {"cover", "cover test of the induced sign patterns"},
           {"geometry", "clause planes and assignment planes"},
           {"rebase", "Witt basis for two transversal null planes"}}) {
    auto *sub = app.add_subcommand(name, help);
    common(sub, true);
  }
  auto *selftest = app.add_subcommand("selftest", "run the acceptance suite");
  common(selftest, false);
  selftest->add_option("--criteria", cfg.criteria, "criterion ids to run")->delimiter(',');

  // CLI11 wants arguments in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kInputError;
  }

  CLI::App *chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  bool route_given = false, seed_given = false;
  for (auto *opt : chosen->get_options()) {
    if (opt->get_name() == "--route" && opt->count() > 0)
      route_given = true;
    if (opt->get_name() == "--seed" && opt->count() > 0)
      seed_given = true;
  }
  if (route_given)
    cfg.route = route_value;

  try {
    if (cfg.command == "selftest")
      return cmd_selftest(cfg, seed_given, out);
    std::string text = read_input(cfg.input, in);
    if (cfg.command == "cover")
      return cmd_cover(cfg, text, out);
    if (cfg.command == "rebase")
      return cmd_rebase(cfg, text, out);
    CnfFormula f = parse_dimacs(text);
    if (cfg.command == "check")
      return cmd_check(cfg, f, out);
    if (cfg.command == "models")
      return cmd_models(cfg, f, out);
    return cmd_geometry(cfg, f, out);
  } catch (const Divergence &e) {
    err << "wittsat: route divergence: " << e.what() << "\n";
    return kDivergence;
  } catch (const ResourceLimit &e) {
    err << "wittsat: resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const Error &e) {
    err << "wittsat: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error &e) {
    err << "wittsat: internal inconsistency: " << e.what() << "\n";
    return kDivergence;
  }
}

} // namespace wittsat::cli
