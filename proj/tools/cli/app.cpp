#include "cli/app.hpp"

#include "cli/emit.hpp"

#include "ebound/bounds.hpp"
#include "ebound/lp_protocol.hpp"
#include "ebound/special_functions.hpp"
#include "ebound/states.hpp"
#include "ebound/typical_sets.hpp"
#include "ebound/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ebound::cli {

namespace {

struct GlobalOptions {
  Format format = Format::json;
  bool format_given = false;
  OmegaStrategy strategy = OmegaStrategy::sorted_prescription;
  OmegaLogBase base = OmegaLogBase::base2;
  TraceDistanceMode trace = TraceDistanceMode::linearized;
  double total_error = 0.01;
};

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "table") return Format::table;
  return Format::json;
}

Format report_format(const GlobalOptions& g) { return g.format; }

Format sweep_format(const GlobalOptions& g) {
  return g.format_given ? g.format : Format::csv;
}

const char* strategy_name(OmegaStrategy s) {
  switch (s) {
    case OmegaStrategy::sorted_prescription:
      return "sorted";
    case OmegaStrategy::minimax_ordering:
      return "minimax";
    case OmegaStrategy::explicit_value:
      return "explicit";
  }
  return "sorted";
}

Json provenance(const GlobalOptions& g) {
  Json p = Json::object();
  p.add("omega_strategy", strategy_name(g.strategy));
  p.add("omega_log_base", g.base == OmegaLogBase::natural ? "e" : "2");
  p.add("trace_distance_mode",
        g.trace == TraceDistanceMode::exact_pure_state ? "exact" : "paper");
  p.add("total_error", g.total_error);
  if (g.total_error != 0.01) p.add("non_default_total_error", true);
  return p;
}

Json probs_json(const std::vector<double>& probs) {
  Json::Array a;
  for (double p : probs) a.push_back(p);
  return Json(std::move(a));
}

Json index_json(const std::vector<std::size_t>& idx) {
  Json::Array a;
  for (std::size_t i : idx) a.push_back(static_cast<long>(i));
  return Json(std::move(a));
}

Json omega_t_json(const OmegaT& t) {
  Json o = Json::object();
  o.add("value", t.value);
  o.add("strategy", strategy_name(t.strategy));
  o.add("log_base", t.log_base == OmegaLogBase::natural ? "e" : "2");
  o.add("max_abs_omega", t.max_abs_omega);
  o.add("ordering", index_json(t.ordering));
  return o;
}

constexpr std::size_t kMaxOrderingReportRank = 8;

int cmd_state(const std::string& probs_text, const GlobalOptions& g,
              std::ostream& out) {
  const SchmidtState s = SchmidtState::parse(probs_text);
  const double alpha = surprisal_stddev(s);

  Json r = Json::object();
  r.add("probs", probs_json(s.probs()));
  r.add("rank", static_cast<long>(s.rank()));
  r.add("entropy", entropy(s));
  r.add("alpha", alpha);
  r.add("degenerate", alpha == 0.0);

  if (s.rank() <= kMaxOrderingReportRank) {
    std::vector<std::size_t> idx(s.rank());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Json::Array orderings;
    do {
      const std::vector<double> omegas = omega_vector(s, idx, g.base);
      double max_abs = 0;
      for (double w : omegas) max_abs = std::max(max_abs, std::abs(w));
      Json o = Json::object();
      o.add("ordering", index_json(idx));
      o.add("omega", probs_json(omegas));
      o.add("max_abs", max_abs);
      orderings.push_back(std::move(o));
    } while (std::next_permutation(idx.begin(), idx.end()));
    r.add("omega_orderings", Json(std::move(orderings)));
  } else {
    r.add("omega_orderings_omitted", "rank exceeds 8");
    r.add("omega_stored_order", probs_json(omega_vector(s, g.base)));
  }

  Json caps = Json::object();
  caps.add("sorted",
           omega_t_json(omega_t(s, OmegaStrategy::sorted_prescription,
                                g.base)));
  if (s.rank() <= kMaxOrderingReportRank) {
    caps.add("minimax",
             omega_t_json(omega_t(s, OmegaStrategy::minimax_ordering,
                                  g.base)));
  } else {
    caps.add("minimax_omitted", "rank exceeds 8");
  }
  r.add("omega_t", caps);
  r.add("provenance", provenance(g));

  write_report(out, r, report_format(g));
  return 0;
}

ConversionBound evaluate_bound(bool want_cc, const SchmidtState& from,
                               const SchmidtState& to,
                               const ErrorBudget& budget,
                               const GlobalOptions& g) {
  if (from.rank() == 2) {
    const TwoTermState psi1 = TwoTermState::from_state(from);
    return want_cc ? cc_lower_bound_two_term(psi1, to, budget)
                   : ineff_lower_bound_two_term(psi1, to, budget);
  }
  return want_cc
             ? cc_lower_bound_general(from, to, budget, g.strategy, g.base)
             : ineff_lower_bound_general(from, to, budget, g.strategy,
                                         g.base);
}

int cmd_bound(bool want_cc, const std::string& from_text,
              const std::string& to_text, double eps2,
              const GlobalOptions& g, std::ostream& out) {
  const SchmidtState from = SchmidtState::parse(from_text);
  const SchmidtState to = SchmidtState::parse(to_text);
  const ErrorBudget budget(eps2, g.total_error);
  const ConversionBound b = evaluate_bound(want_cc, from, to, budget, g);

  Json r = Json::object();
  r.add("claim", static_cast<long>(b.claim));
  r.add("kind", want_cc ? "cc" : "ineff");
  r.add("coefficient", b.coefficient);
  r.add("vacuous", b.vacuous);
  r.add("clamped_coefficient", b.clamped());

  Json inputs = Json::object();
  inputs.add("psi1", probs_json(b.psi1));
  inputs.add("psi2", probs_json(b.psi2));
  inputs.add("eps2", b.eps2);
  inputs.add("entropy1", entropy(from));
  inputs.add("entropy2", entropy(to));
  inputs.add("alpha2", surprisal_stddev(to));
  if (b.omega_t) {
    inputs.add("fluctuation_cap", b.omega_t->value);
    inputs.add("k_multiplier", gamma_from_error_general(
                                   budget.eps_lp1_max(),
                                   static_cast<int>(from.rank())));
    inputs.add("omega_t_psi1", omega_t_json(*b.omega_t));
  } else {
    inputs.add("fluctuation_cap",
               surprisal_stddev(TwoTermState::from_state(from)));
    inputs.add("k_multiplier", gamma_ratio_budget(budget));
  }
  r.add("inputs", inputs);
  r.add("provenance", provenance(g));

  write_report(out, r, report_format(g));
  return 0;
}

std::vector<double> eps2_axis(double lo, double hi, long steps) {
  std::vector<double> axis;
  if (steps == 1) {
    axis.push_back(lo);
    return axis;
  }
  for (long i = 0; i < steps; ++i) {
    axis.push_back(lo + (hi - lo) * double(i) / double(steps - 1));
  }
  return axis;
}

struct SweepOptions {
  std::string quantity;
  double eps2_min = 0;
  std::optional<double> eps2_max;
  long steps = 100;
  std::string from;
  std::string to;
  std::string state;
  double gamma = 1.0;
  std::vector<long> n_list;
};

int cmd_sweep(const SweepOptions& sw, const GlobalOptions& g,
              std::ostream& out) {
  Grid grid;
  if (sw.quantity == "gamma-ratio") {
    const double hi = sw.eps2_max.value_or(0.99 * g.total_error);
    grid.columns = {"eps2", "gamma_ratio", "total_error"};
    for (double eps2 : eps2_axis(sw.eps2_min, hi, sw.steps)) {
      const ErrorBudget budget(eps2, g.total_error);
      grid.rows.push_back({eps2, gamma_ratio_budget(budget), g.total_error});
    }
  } else if (sw.quantity == "cc-coefficient" ||
             sw.quantity == "ineff-coefficient") {
    if (sw.from.empty() || sw.to.empty()) {
      throw std::invalid_argument(
          "coefficient sweeps need --from and --to states");
    }
    const bool want_cc = sw.quantity == "cc-coefficient";
    const SchmidtState from = SchmidtState::parse(sw.from);
    const SchmidtState to = SchmidtState::parse(sw.to);
    const double hi = sw.eps2_max.value_or(0.99 * g.total_error);
    grid.columns = {"eps2",    "coefficient", "vacuous",    "claim",
                    "minimax", "natural_log", "total_error"};
    for (double eps2 : eps2_axis(sw.eps2_min, hi, sw.steps)) {
      const ErrorBudget budget(eps2, g.total_error);
      const ConversionBound b = evaluate_bound(want_cc, from, to, budget, g);
      grid.rows.push_back(
          {eps2, b.coefficient, b.vacuous ? 1.0 : 0.0, double(b.claim),
           g.strategy == OmegaStrategy::minimax_ordering ? 1.0 : 0.0,
           g.base == OmegaLogBase::natural ? 1.0 : 0.0, g.total_error});
    }
  } else if (sw.quantity == "atypical-weight") {
    if (sw.state.empty() || sw.n_list.empty()) {
      throw std::invalid_argument(
          "atypical-weight sweeps need --state and --n-list");
    }
    const TwoTermState s =
        TwoTermState::from_state(SchmidtState::parse(sw.state));
    const double x = sw.gamma / surprisal_stddev(s);
    const double limit = atypical_weight_gaussian(x);
    std::vector<long> ns = sw.n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    grid.columns = {"n",            "p", "gamma", "x", "exact_weight",
                    "gaussian_limit", "ratio"};
    for (long n : ns) {
      const TypicalWindow w = typical_window(s, sw.gamma, n);
      const double exact = atypical_weight_exact(s, w);
      grid.rows.push_back({double(n), s.p(), sw.gamma, x, exact, limit,
                           exact / limit});
    }
  } else {
    throw std::invalid_argument("unknown sweep quantity: " + sw.quantity);
  }
  if (grid.rows.empty()) throw std::invalid_argument("empty sweep grid");
  write_grid(out, grid, sweep_format(g));
  return 0;
}

Json decomposition_json(const LPDecomposition& d, const GlobalOptions& g) {
  Json j = Json::object();
  j.add("mode", d.mode == LPMode::asymptotic ? "asymptotic" : "exact");
  j.add("d", d.mes_log2);
  j.add("sch_delta_log2", d.sch_delta_log2);
  j.add("entropy_delta", d.entropy_delta);
  j.add("eps_lp1", d.eps_lp1);
  if (d.eps_lp2_bound) j.add("eps_lp2_bound", *d.eps_lp2_bound);
  if (d.omega) j.add("omega", *d.omega);
  j.add("cc_cost_bits", d.cc_cost_bits);
  j.add("inefficiency_ebits", d.inefficiency_ebits);
  j.add("trace_distance_to_ideal", trace_distance_to_ideal(d, g.trace));
  const CcLedger ledger = cc_cost(d);
  Json l = Json::object();
  l.add("qubits_teleported", ledger.qubits_teleported);
  l.add("naive_bits", ledger.naive_bits);
  l.add("bits", ledger.bits);
  j.add("cc_ledger", l);
  if (d.omega_t) j.add("omega_t", omega_t_json(*d.omega_t));
  if (d.general) {
    Json diag = Json::object();
    diag.add("eps_lp1_box", d.general->eps_lp1_box);
    diag.add("eps_lp1_degeneracy_window",
             d.general->eps_lp1_degeneracy_window);
    diag.add("slab_class_count", d.general->slab_class_count);
    diag.add("degeneracy_window_class_count",
             d.general->degeneracy_window_class_count);
    diag.add("composition_count", d.general->composition_count);
    j.add("diagnostics", diag);
  }
  return j;
}

struct LpOptions {
  std::string state;
  long n = 0;
  std::optional<double> gamma;
  std::optional<double> eps_lp1;
  std::optional<double> omega;
  std::string mode = "both";
};

int cmd_lp(const LpOptions& lp, const GlobalOptions& g, std::ostream& out) {
  const SchmidtState s = SchmidtState::parse(lp.state);
  const bool general = s.rank() > 2;
  if (general && lp.omega) {
    throw std::invalid_argument(
        "--omega applies to rank-2 states only; the chopping stage is a "
        "rank-2 construction");
  }

  Json r = Json::object();
  r.add("probs", probs_json(s.probs()));
  r.add("n", lp.n);

  double gamma = 0;
  if (lp.eps_lp1) {
    if (general) {
      const OmegaT cap = omega_t(s, g.strategy, g.base);
      gamma = gamma_from_error_general(*lp.eps_lp1,
                                       static_cast<int>(s.rank())) *
              cap.value;
    } else {
      gamma = gamma_from_error_two_term(*lp.eps_lp1) *
              surprisal_stddev(TwoTermState::from_state(s));
    }
    r.add("gamma", gamma);
    r.add("gamma_source", "derived-from-eps-lp1");
    r.add("eps_lp1_target", *lp.eps_lp1);
  } else {
    gamma = *lp.gamma;
    r.add("gamma", gamma);
    r.add("gamma_source", "given");
  }

  const auto run_mode = [&](LPMode mode) {
    if (general) return decompose_general(s, lp.n, gamma, mode, g.strategy,
                                          g.base);
    return decompose(TwoTermState::from_state(s), lp.n, gamma, mode,
                     lp.omega);
  };

  if (lp.mode == "asymptotic" || lp.mode == "both") {
    r.add("asymptotic", decomposition_json(run_mode(LPMode::asymptotic), g));
  }
  if (lp.mode == "exact") {
    r.add("exact", decomposition_json(run_mode(LPMode::exact_finite_n), g));
  } else if (lp.mode == "both") {
    try {
      r.add("exact", decomposition_json(run_mode(LPMode::exact_finite_n), g));
    } catch (const std::exception& e) {
      r.add("exact_omitted", e.what());
    }
  }
  r.add("provenance", provenance(g));

  write_report(out, r, report_format(g));
  return 0;
}

int cmd_verify(const std::string& suite, const GlobalOptions& g,
               std::ostream& out) {
  std::vector<CheckResult> checks;
  if (suite == "special") {
    checks = verify_special();
  } else if (suite == "typical") {
    checks = verify_typical();
  } else if (suite == "lp") {
    checks = verify_lp();
  } else if (suite == "bounds") {
    checks = verify_bounds();
  } else {
    checks = verify_all();
  }
  long failed = 0;
  for (const auto& c : checks) {
    if (!c.pass) ++failed;
  }

  if (report_format(g) == Format::table) {
    for (const auto& c : checks) {
      out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
          << "  measured=" << format_double(c.measured, 6) << '\n';
      if (!c.detail.empty()) out << "       " << c.detail << '\n';
    }
    out << checks.size() - std::size_t(failed) << " passed, " << failed
        << " failed\n";
    return failed ? 1 : 0;
  }

  Json r = Json::object();
  r.add("suite", suite);
  Json::Array arr;
  for (const auto& c : checks) {
    Json item = Json::object();
    item.add("name", c.name);
    item.add("pass", c.pass);
    item.add("measured", c.measured);
    item.add("detail", c.detail);
    arr.push_back(std::move(item));
  }
  r.add("checks", Json(std::move(arr)));
  r.add("passed", static_cast<long>(checks.size()) - failed);
  r.add("failed", failed);
  r.add("provenance", provenance(g));
  write_report(out, r, report_format(g));
  return failed ? 1 : 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Typical-set accounting for entanglement dilution:\n"
               "windows, Lo-Popescu decompositions, and conversion bounds"};
  app.name("ebound");
  app.require_subcommand(1);

  GlobalOptions g;
  std::string format_name = "json";
  std::string strategy_name_opt = "sorted";
  std::string base_name = "2";
  std::string trace_name = "paper";
  long seed = 0;
  auto* format_opt =
      app.add_option("--format", format_name, "Output format")
          ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--omega-strategy", strategy_name_opt,
                 "Ordering strategy for the fluctuation cap")
      ->check(CLI::IsMember({"sorted", "minimax"}));
  app.add_option("--omega-log-base", base_name,
                 "Log base used in the per-axis coefficients")
      ->check(CLI::IsMember({"2", "e"}));
  app.add_option("--trace-distance", trace_name,
                 "paper: linearized 2*eps; exact: 2*sqrt(eps)")
      ->check(CLI::IsMember({"paper", "exact"}));
  app.add_option("--total-error", g.total_error,
                 "Total conversion error allowance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Reserved; nothing here is randomized");

  const auto resolve = [&] {
    g.format = parse_format(format_name);
    g.format_given = format_opt->count() > 0;
    g.strategy = strategy_name_opt == "minimax"
                     ? OmegaStrategy::minimax_ordering
                     : OmegaStrategy::sorted_prescription;
    g.base = base_name == "e" ? OmegaLogBase::natural : OmegaLogBase::base2;
    g.trace = trace_name == "exact" ? TraceDistanceMode::exact_pure_state
                                    : TraceDistanceMode::linearized;
  };

  int code = 0;

  auto* state = app.add_subcommand(
      "state", "Entropy, alpha, and omega report for a probability list");
  state->fallthrough();
  std::string state_probs;
  state->add_option("probs", state_probs, "Schmidt probabilities, e.g. 0.3,0.7")
      ->required();
  state->callback([&] {
    resolve();
    code = cmd_state(state_probs, g, out);
  });

  auto* bound =
      app.add_subcommand("bound", "Conversion lower-bound coefficients");
  bound->fallthrough();
  bound->require_subcommand(1);
  std::string bound_from;
  std::string bound_to;
  double bound_eps2 = 0;
  for (const bool want_cc : {true, false}) {
    auto* sub = bound->add_subcommand(
        want_cc ? "cc" : "ineff",
        want_cc ? "Classical communication per sqrt(n), in bits"
                : "Entanglement inefficiency per sqrt(n), in ebits");
    sub->fallthrough();
    sub->add_option("from", bound_from, "Source state probabilities")
        ->required();
    sub->add_option("to", bound_to, "Target state probabilities")->required();
    sub->add_option("--eps2", bound_eps2,
                    "Transformation-stage error share of the budget");
    sub->callback([&, want_cc] {
      resolve();
      code = cmd_bound(want_cc, bound_from, bound_to, bound_eps2, g, out);
    });
  }

  auto* sweep = app.add_subcommand("sweep", "Grid evaluation, plot-ready");
  sweep->fallthrough();
  SweepOptions sw;
  double sweep_eps2_max = 0;
  sweep
      ->add_option("quantity", sw.quantity,
                   "gamma-ratio | cc-coefficient | ineff-coefficient | "
                   "atypical-weight")
      ->required()
      ->check(CLI::IsMember({"gamma-ratio", "cc-coefficient",
                             "ineff-coefficient", "atypical-weight"}));
  sweep->add_option("--eps2-min", sw.eps2_min, "Axis start");
  auto* eps2_max_opt =
      sweep->add_option("--eps2-max", sweep_eps2_max, "Axis end");
  sweep->add_option("--steps", sw.steps, "Grid points")
      ->check(CLI::Range(1L, 1000000L));
  sweep->add_option("--from", sw.from, "Source state for coefficient sweeps");
  sweep->add_option("--to", sw.to, "Target state for coefficient sweeps");
  sweep->add_option("--state", sw.state, "State for atypical-weight sweeps");
  sweep->add_option("--gamma", sw.gamma, "Window coefficient");
  sweep->add_option("--n-list", sw.n_list, "Block sizes, comma separated")
      ->delimiter(',');
  sweep->callback([&] {
    resolve();
    if (eps2_max_opt->count() > 0) sw.eps2_max = sweep_eps2_max;
    code = cmd_sweep(sw, g, out);
  });

  auto* lp = app.add_subcommand(
      "lp", "Lo-Popescu decomposition ledger, asymptotic and exact");
  lp->fallthrough();
  LpOptions lpo;
  double lp_gamma = 0;
  double lp_eps1 = 0;
  double lp_omega = 0;
  lp->add_option("--state", lpo.state, "Schmidt probabilities")->required();
  lp->add_option("--n", lpo.n, "Number of copies")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* gamma_opt =
      lp->add_option("--gamma", lp_gamma, "Window coefficient");
  auto* eps1_opt = lp->add_option(
      "--eps-lp1", lp_eps1, "Target atypical weight; gamma is derived");
  gamma_opt->excludes(eps1_opt);
  eps1_opt->excludes(gamma_opt);
  auto* omega_opt = lp->add_option(
      "--omega", lp_omega, "Chopping exponent coefficient (rank 2 only)");
  lp->add_option("--mode", lpo.mode, "asymptotic | exact | both")
      ->check(CLI::IsMember({"asymptotic", "exact", "both"}));
  lp->callback([&] {
    resolve();
    if (gamma_opt->count() == 0 && eps1_opt->count() == 0) {
      throw CLI::RequiredError("--gamma or --eps-lp1");
    }
    if (gamma_opt->count() > 0) lpo.gamma = lp_gamma;
    if (eps1_opt->count() > 0) lpo.eps_lp1 = lp_eps1;
    if (omega_opt->count() > 0) lpo.omega = lp_omega;
    code = cmd_lp(lpo, g, out);
  });

  auto* verify = app.add_subcommand("verify", "Run the oracle suites");
  verify->fallthrough();
  std::string suite = "all";
  verify->add_option("suite", suite, "special | typical | lp | bounds | all")
      ->check(CLI::IsMember({"special", "typical", "lp", "bounds", "all"}));
  verify->callback([&] {
    resolve();
    code = cmd_verify(suite, g, out);
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}

}  // namespace ebound::cli
