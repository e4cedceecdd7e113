#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "profile_spec.hpp"
#include "rellich/constants.hpp"
#include "rellich/errors.hpp"
#include "rellich/functionals.hpp"
#include "rellich/oracle.hpp"
#include "rellich/profiles.hpp"
#include "rellich/spectra.hpp"

namespace rellich::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "rellich-lab 1.0.0";

struct Outcome {
  Json inputs = Json::object();
  Json results = Json::object();
  std::optional<std::uint64_t> seed;
  int code = kOk;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Json opt_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// ---------------------------------------------------------------- CSV

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, v);
  }
}

// A "rows" array of flat objects becomes a table; every other leaf is listed as key,value after it.
void write_csv(std::ostream& out, const Json& results) {
  Json rest = results;
  if (results.contains("rows") && results["rows"].is_array() && !results["rows"].empty()) {
    const Json& rows = results["rows"];
    bool first = true;
    for (const auto& [k, _] : rows[0].items()) {
      out << (first ? "" : ",") << k;
      first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
      first = true;
      for (const auto& [_, x] : row.items()) {
        out << (first ? "" : ",") << csv_cell(x);
        first = false;
      }
      out << '\n';
    }
    rest.erase("rows");
    if (rest.empty()) return;
    out << '\n';
  }
  std::vector<std::pair<std::string, Json>> leaves;
  flatten(rest, "", leaves);
  out << "key,value\n";
  for (const auto& [k, x] : leaves) out << k << ',' << csv_cell(x) << '\n';
}

// ---------------------------------------------------------------- shared pieces

Json report_json(const InequalityReport& r) {
  Json j;
  j["ineq_id"] = r.ineq_id;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["ratio"] = opt_number(r.ratio);
  j["constant_used"] = r.constant_used + 0.0;
  j["preconditions_met"] = r.preconditions_met;
  j["quadrature_tol"] = r.quadrature_tol;
  return j;
}

struct ModeArgs {
  std::string profile;
  std::string profile2;
  std::string modes = "0";
};

MultiModeFunction build_function(const ModeArgs& a, const Params& p, double R,
                                 std::optional<std::uint64_t>& seed, Json& inputs) {
  std::vector<int> js;
  for (const auto& s : split_list(a.modes)) {
    std::size_t used = 0;
    const int j = std::stoi(s, &used);
    if (used != s.size() || j < 0) throw std::invalid_argument("bad mode index '" + s + "'");
    js.push_back(j);
  }
  if (js.empty() || js.size() > 2) throw std::invalid_argument("--mode takes one or two indices");
  if (js.size() == 1 && !a.profile2.empty()) throw std::invalid_argument("--profile2 needs a second mode");
  std::vector<ModeFunction> terms;
  for (std::size_t k = 0; k < js.size(); ++k) {
    const std::string& spec = (k == 1 && !a.profile2.empty()) ? a.profile2 : a.profile;
    ParsedProfile pp = parse_profile(spec, {p, js[k], R});
    if (pp.seed && !seed) seed = pp.seed;
    terms.push_back({js[k], pp.profile});
  }
  inputs["mode"] = js;
  inputs["profile"] = a.profile;
  inputs["profile2"] = a.profile2.empty() ? Json(nullptr) : Json(a.profile2);
  return MultiModeFunction(std::move(terms));
}

int verdict(const InequalityReport& r, double tol) {
  return r.margin >= -tol * std::abs(r.lhs) ? kOk : kViolated;
}

const char* case_name(SchminckeCase c) {
  switch (c) {
    case SchminckeCase::sec2: return "sec2";
    case SchminckeCase::sec3_case_i: return "case_i";
    case SchminckeCase::sec3_case_ii: return "case_ii";
  }
  return "";
}

Json minimizer_json(const MinimizerResult& m) {
  Json j;
  j["value"] = m.value;
  j["argmin_j"] = m.argmin_j;
  j["scan_bound"] = m.scan_bound;
  return j;
}

// ---------------------------------------------------------------- commands

struct Common {
  int n = 0;
  double gamma = 0.0;
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--n", c.n, "dimension, n >= 2")->required()->check(CLI::Range(2, 1 << 20));
  sub->add_option("--gamma", c.gamma, "weight exponent")->required();
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

Json common_inputs(const Common& c) {
  Json j;
  j["n"] = c.n;
  j["gamma"] = c.gamma;
  return j;
}

Outcome cmd_constants(const Common& c, const std::string& which) {
  Outcome o;
  o.inputs = common_inputs(c);
  o.inputs["which"] = which;
  const Params p{c.n, c.gamma};
  check_params(p);
  for (const auto& item : split_list(which)) {
    if (item == "hardy") {
      Json j;
      j["value"] = hardy_constant(p);
      o.results["hardy"] = j;
    } else if (item == "rellich") {
      o.results["rellich"] = minimizer_json(rellich_constant(p));
    } else if (item == "hardy-rellich") {
      Json j = minimizer_json(hardy_rellich_constant(p));
      const auto b = lemma410_bound(p);
      j["lemma410_bound"] = b ? Json(*b) : Json(nullptr);
      o.results["hardy-rellich"] = j;
    } else if (item.rfind("alpha:", 0) == 0) {
      const std::string rest = item.substr(6);
      std::size_t used = 0;
      const int jj = rest.empty() ? -1 : std::stoi(rest, &used);
      if (jj < 0 || used != rest.size()) throw std::invalid_argument("bad mode in '" + item + "'");
      Json j;
      j["j"] = jj;
      j["value"] = hardy_rellich_alpha(p, jj);
      o.results[item] = j;
    } else {
      throw std::invalid_argument("unknown constant '" + item + "'");
    }
  }
  return o;
}

struct VerifyArgs {
  std::string ineq;
  ModeArgs modes;
  double alpha = 0, beta = 0, tau = 0, s = 0, R = 1.0, tol = 1e-10;
  int N = 1;
  std::optional<double> eta;
  bool abs_gamma = false;
};

Outcome cmd_verify(const Common& c, const VerifyArgs& a) {
  Outcome o;
  o.inputs = common_inputs(c);
  o.inputs["ineq"] = a.ineq;
  o.inputs["alpha"] = a.alpha;
  o.inputs["beta"] = a.beta;
  o.inputs["tau"] = a.tau;
  o.inputs["s"] = a.s;
  o.inputs["N"] = a.N;
  o.inputs["eta"] = opt_number(a.eta);
  o.inputs["R"] = a.R;
  o.inputs["abs_gamma"] = a.abs_gamma;
  o.inputs["tol"] = a.tol;
  const Params p{c.n, c.gamma};
  check_params(p);
  const MultiModeFunction f = build_function(a.modes, p, a.R, o.seed, o.inputs);
  InequalityParams ip;
  ip.alpha = a.alpha;
  ip.beta = a.beta;
  ip.tau = a.tau;
  ip.s = a.s;
  ip.N = a.N;
  ip.eta = a.eta;
  ip.R = a.R;
  ip.abs_gamma_variant = a.abs_gamma;
  QuadratureConfig cfg;
  cfg.rel_tol = std::min(cfg.rel_tol, a.tol);
  const InequalityReport r = verify(a.ineq, p, ip, f, cfg);
  o.results = report_json(r);
  if (a.ineq == "2.1" || a.ineq == "2.2") o.results["cauchy_valid"] = thm21_coefficients(a.alpha, a.beta, p).cauchy_valid;
  o.results["holds"] = verdict(r, a.tol) == kOk;
  o.code = verdict(r, a.tol);
  return o;
}

struct SharpnessArgs {
  std::optional<int> j0;
  double R = 1.0;
  double eps_start = 0.5;
  int eps_steps = 10;
  std::string target = "A";
};

Outcome cmd_sharpness(const Common& c, const SharpnessArgs& a) {
  Outcome o;
  o.inputs = common_inputs(c);
  const Params p{c.n, c.gamma};
  check_params(p);
  const bool target_A = a.target == "A";
  const MinimizerResult best = target_A ? hardy_rellich_constant(p) : rellich_constant(p);
  const int j0 = a.j0.value_or(best.argmin_j);
  o.inputs["j0"] = j0;
  o.inputs["R"] = a.R;
  o.inputs["eps_start"] = a.eps_start;
  o.inputs["eps_steps"] = a.eps_steps;
  o.inputs["target"] = a.target;
  if (j0 < 0) throw std::invalid_argument("--j0 must be >= 0");
  const std::vector<double> schedule = nested_epsilon_schedule(a.eps_start, a.eps_steps);
  const std::vector<SweepRow> rows = sharpness_sweep(p, j0, a.R, schedule, sweep_config(), target_A);
  const double limit = target_A ? hardy_rellich_alpha(p, j0) : rellich_mode_constant(p, j0);
  Json table = Json::array();
  bool decreasing = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    Json row;
    row["epsilon"] = rows[k].epsilon;
    row["hardy_rellich_q"] = rows[k].hardy_rellich_q;
    row["rellich_q"] = rows[k].rellich_q;
    table.push_back(row);
    if (k > 0) {
      const double prev = target_A ? rows[k - 1].hardy_rellich_q : rows[k - 1].rellich_q;
      const double cur = target_A ? rows[k].hardy_rellich_q : rows[k].rellich_q;
      decreasing = decreasing && cur <= prev;
    }
  }
  const double last = target_A ? rows.back().hardy_rellich_q : rows.back().rellich_q;
  o.results["rows"] = table;
  o.results["limit"] = limit;
  o.results["constant"] = best.value;
  o.results["gap_kind"] = limit > 0 ? "relative" : "absolute";
  o.results["final_gap"] = limit > 0 ? std::abs(last - limit) / limit : std::abs(last - limit);
  o.results["decreasing"] = decreasing;
  return o;
}

struct OracleArgs {
  int j = 0;
  std::string quotient = "hardy-rellich";
  double rmin = 1e-3, rmax = 1e3;
  int points = 1500;
};

Outcome cmd_oracle(const Common& c, const OracleArgs& a) {
  Outcome o;
  o.inputs = common_inputs(c);
  o.inputs["j"] = a.j;
  o.inputs["quotient"] = a.quotient;
  o.inputs["rmin"] = a.rmin;
  o.inputs["rmax"] = a.rmax;
  o.inputs["points"] = a.points;
  const Params p{c.n, c.gamma};
  check_params(p);
  if (a.j < 0) throw std::invalid_argument("--j must be >= 0");
  const bool rel = a.quotient == "rellich";
  const DiscretizedForms forms =
      discretize(p, a.j, {a.rmin, a.rmax, a.points}, rel ? Quotient::rellich : Quotient::hardy_rellich);
  const EigenResult er = min_quotient(forms);
  const double theory = rel ? rellich_mode_constant(p, a.j) : hardy_rellich_alpha(p, a.j);
  o.results["mu_min"] = er.mu_min;
  o.results["theoretical"] = theory;
  o.results["gap_kind"] = theory > 0 ? "relative" : "absolute";
  o.results["gap"] = theory > 0 ? (er.mu_min - theory) / theory : er.mu_min - theory;
  o.results["residual_norm"] = er.residual_norm;
  o.results["iterations"] = er.iterations;
  return o;
}

Outcome cmd_schmincke(const Common& c, const std::string& variant, const std::optional<double>& s) {
  Outcome o;
  o.inputs = common_inputs(c);
  o.inputs["variant"] = variant;
  o.inputs["s"] = opt_number(s);
  const Params p{c.n, c.gamma};
  check_params(p);
  const bool sec3 = variant == "sec3";
  const SchminckeRange range = schmincke_range(p, sec3 ? SchminckeVariant::sec3 : SchminckeVariant::sec2);
  o.results["s_min"] = range.s_min;
  o.results["case"] = case_name(range.case_tag);
  if (s) {
    o.results["rhs_constant"] = schmincke_rhs_constant(p, *s);
    o.results["admissible"] = *s >= range.s_min;
    if (sec3 && c.n == 3 && c.gamma == 0.0) {
      try {
        o.results["K"] = k3(*s);
      } catch (const DomainError&) {
        o.results["K"] = nullptr;
      }
    }
  }
  return o;
}

struct LogrefineArgs {
  std::string ineq;
  ModeArgs modes;
  int N = 1;
  double R = 1.0;
  std::string eta = "auto";
  double tol = 1e-10;
};

Outcome cmd_logrefine(const Common& c, const LogrefineArgs& a) {
  Outcome o;
  o.inputs = common_inputs(c);
  o.inputs["ineq"] = a.ineq;
  o.inputs["N"] = a.N;
  o.inputs["R"] = a.R;
  o.inputs["eta"] = a.eta;
  o.inputs["tol"] = a.tol;
  const Params p{c.n, c.gamma};
  check_params(p);
  std::optional<double> eta;
  if (a.eta != "auto") {
    std::size_t used = 0;
    eta = std::stod(a.eta, &used);
    if (used != a.eta.size()) throw std::invalid_argument("--eta takes 'auto' or a number");
  }
  const LogWeightParams w = eta ? LogWeightParams(a.N, *eta, a.R) : LogWeightParams::at_threshold(a.N, a.R);
  const MultiModeFunction f = build_function(a.modes, p, a.R, o.seed, o.inputs);
  for (const auto& t : f.terms())
    if (t.F.b() > a.R) throw DomainError("profile support must lie inside (0, R)");
  InequalityParams ip;
  ip.N = a.N;
  ip.eta = w.eta();
  ip.R = a.R;
  QuadratureConfig cfg;
  cfg.rel_tol = std::min(cfg.rel_tol, a.tol);
  const InequalityReport r = verify(a.ineq, p, ip, f, cfg);
  o.results = report_json(r);
  o.results["eta"] = w.eta();
  o.results["holds"] = verdict(r, a.tol) == kOk;
  o.code = verdict(r, a.tol);
  return o;
}

void emit(std::ostream& out, const std::string& command, const std::string& format, const Outcome& o) {
  if (format == "csv") {
    write_csv(out, o.results);
    return;
  }
  Json env;
  env["command"] = command;
  env["inputs"] = o.inputs;
  env["results"] = o.results;
  env["versions"] = kVersion;
  env["seed"] = o.seed ? Json(*o.seed) : Json(nullptr);
  out << env.dump(2) << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Rellich and Hardy-Rellich constants, verification and sharpness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common c;
  std::function<Outcome()> handler;

  auto* constants = app.add_subcommand("constants", "optimal constants with argmin metadata");
  add_common(constants, c);
  std::string which = "hardy,rellich,hardy-rellich";
  constants->add_option("--which", which, "comma list of hardy,rellich,hardy-rellich,alpha:<j>");
  constants->callback([&] { handler = [&] { return cmd_constants(c, which); }; });

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "evaluate one inequality on a profile");
  add_common(verify_cmd, c);
  verify_cmd->add_option("--ineq", va.ineq)->required()->check(CLI::IsMember(inequality_ids()));
  verify_cmd->add_option("--alpha", va.alpha);
  verify_cmd->add_option("--beta", va.beta);
  verify_cmd->add_option("--tau", va.tau);
  verify_cmd->add_option("--s", va.s);
  verify_cmd->add_option("--N", va.N)->check(CLI::Range(1, 4));
  verify_cmd->add_option("--eta", va.eta);
  verify_cmd->add_option("--R", va.R);
  verify_cmd->add_flag("--abs-gamma", va.abs_gamma, "use the 4(n-4-|gamma|) form of 2.17");
  verify_cmd->add_option("--profile", va.modes.profile)->required();
  verify_cmd->add_option("--mode", va.modes.modes, "j or j1,j2");
  verify_cmd->add_option("--profile2", va.modes.profile2);
  verify_cmd->add_option("--tol", va.tol)->check(CLI::PositiveNumber);
  verify_cmd->callback([&] { handler = [&] { return cmd_verify(c, va); }; });

  SharpnessArgs sa;
  auto* sharp = app.add_subcommand("sharpness", "trial-family quotient sweep");
  add_common(sharp, c);
  sharp->add_option("--j0", sa.j0, "default: argmin of the target constant");
  sharp->add_option("--R", sa.R)->check(CLI::PositiveNumber);
  sharp->add_option("--eps-start", sa.eps_start)->check(CLI::Range(0.0, 1.0));
  sharp->add_option("--eps-steps", sa.eps_steps)->check(CLI::Range(1, 60));
  sharp->add_option("--target", sa.target)->check(CLI::IsMember({"A", "C"}));
  sharp->callback([&] { handler = [&] { return cmd_sharpness(c, sa); }; });

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "discretized Rayleigh-quotient minimum");
  add_common(oracle, c);
  oracle->add_option("--j", oa.j);
  oracle->add_option("--quotient", oa.quotient)->check(CLI::IsMember({"rellich", "hardy-rellich"}));
  oracle->add_option("--rmin", oa.rmin);
  oracle->add_option("--rmax", oa.rmax);
  oracle->add_option("--points", oa.points);
  oracle->callback([&] { handler = [&] { return cmd_oracle(c, oa); }; });

  std::string variant;
  std::optional<double> s;
  auto* schm = app.add_subcommand("schmincke", "admissible s range and RHS constant");
  add_common(schm, c);
  schm->add_option("--variant", variant)->required()->check(CLI::IsMember({"sec2", "sec3"}));
  schm->add_option("--s", s);
  schm->callback([&] { handler = [&] { return cmd_schmincke(c, variant, s); }; });

  LogrefineArgs la;
  auto* logref = app.add_subcommand("logrefine", "logarithmically refined inequalities on a ball");
  add_common(logref, c);
  logref->add_option("--ineq", la.ineq)->required()->check(CLI::IsMember({"3.48a", "4.31"}));
  logref->add_option("--N", la.N)->check(CLI::Range(1, 4));
  logref->add_option("--R", la.R)->check(CLI::PositiveNumber);
  logref->add_option("--eta", la.eta, "auto or a number >= e_N R");
  logref->add_option("--profile", la.modes.profile)->required();
  logref->add_option("--mode", la.modes.modes);
  logref->add_option("--profile2", la.modes.profile2);
  logref->add_option("--tol", la.tol)->check(CLI::PositiveNumber);
  logref->callback([&] { handler = [&] { return cmd_logrefine(c, la); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Outcome o = handler();
    emit(out, command, c.format, o);
    return o.code;
  } catch (const UnsupportedCase& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "numerical: " << e.what() << " (best estimate " << e.best_estimate << ")\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "numerical: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace rellich::cli
