#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "msvc/error.hpp"
#include "msvc/gaussian.hpp"
#include "msvc/graph.hpp"
#include "msvc/hardness.hpp"
#include "msvc/reduction.hpp"
#include "msvc/regular.hpp"
#include "msvc/solvers.hpp"
#include "msvc/unweighting.hpp"

#ifndef MSVC_TOOL_VERSION
#define MSVC_TOOL_VERSION "0.0.0"
#endif

namespace msvc::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormats = R"(File formats (text, LF-terminated, 0-based ids):
  graph:   msvc-graph 1
           n m
           u v w                    (m lines, decimal weight; unweighted graphs use w = 1)
  UG:      msvc-ug 1
           L |U| |V| m
           u v c                    (m lines, constraint x_u - x_v = c mod L)
  labels:  msvc-labels 1
           N
           label                    (N lines, left side first, then right side)
  config:  msvc-hardness 1
           k
           alpha rho                (k lines)
)";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

double round6(double x) { return std::round(x * 1e6) / 1e6; }

Json ordering_json(const Ordering& o) { return Json(std::vector<Vertex>(o.steps().begin(), o.steps().end())); }

// Flattens nested objects into dotted keys; arrays of scalars are joined
// with ';'.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array()) {
    bool scalar = true;
    for (const auto& x : j) scalar = scalar && !x.is_structured();
    if (scalar) {
      std::string s;
      for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ";" : "") + (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      rows.emplace_back(prefix, s);
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
    }
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string to_csv(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) {
    const bool quote = v.find_first_of(",\"\n") != std::string::npos;
    std::string cell = v;
    if (quote) {
      cell.clear();
      for (char c : v) cell += c == '"' ? std::string("\"\"") : std::string(1, c);
      cell = "\"" + cell + "\"";
    }
    out += k + "," + cell + "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

struct Options {
  // global
  std::string format = "json";
  unsigned threads = 1;
  // shared
  std::string input, out, config, labels, graph, report, emit_curve;
  std::uint64_t seed = 0;
  double rho = -0.52, x = 0.5, y = 0.5, r = 0.5, gamma = 0.0, eps = 0.0, alpha = kAlphaLLZ, delta = 0.01;
  std::size_t nodes = kIntegralNodes;
  std::string method = "exact", kvc = "exact";
  std::uint32_t restarts = 16, budget = 200;
  std::uint64_t trials = 0, steps = 100000, opt_steps = 4000;
  std::size_t k = 0, points = 200;
  double step = 1e-3, lo = -1.0, hi = 0.0, eps_step = 1e-5;
  int alphabet = 2, degree = 2;
  std::int32_t side = 2;
  int grid = kDefaultGridExponent, depth = kDefaultDepth, m = 8;
  std::uint32_t verify_trials = 10000;
  std::int64_t p = 1, q = 10, scale = 1;
  bool verify = false;
  std::optional<double> msvc_value;
};

KvcMode kvc_mode(const Options& o) {
  if (o.kvc == "exact") return KvcMode::exact_mode();
  return KvcMode::local_search(o.restarts, o.seed);
}

Json cmd_gaussian_gamma(const Options& o) {
  return {{"rho", o.rho}, {"x", o.x}, {"y", o.y}, {"value", gamma_rho(Correlation(o.rho), o.x, o.y)}};
}

Json cmd_gaussian_integral(const Options& o) {
  return {{"rho", o.rho}, {"nodes", o.nodes}, {"value", integral_gamma(Correlation(o.rho), o.nodes)}};
}

Json cmd_gaussian_deriv(const Options& o) {
  return {{"rho", o.rho}, {"r", o.r}, {"value", gamma_rho_diag_deriv(Correlation(o.rho), o.r)}};
}

Json cmd_solve(const Options& o) {
  const auto g = load_graph(o.input);
  SolveResult res;
  if (o.method == "exact") res = msvc_exact_dp(g);
  else if (o.method == "brute") res = msvc_bruteforce(g);
  else if (o.method == "greedy") res = msvc_greedy(g);
  else if (o.method == "two-phase") res = flt_two_phase(g, kvc_mode(o));
  else res = msvc_random(g, o.seed);
  return {{"value", res.value}, {"ordering", ordering_json(res.ordering)}, {"method", res.method},
          {"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"total_weight", g.total_weight()}};
}

Json cmd_density(const Options& o) {
  const auto g = load_graph(o.input);
  const auto mode = o.trials > 0 ? DensityMode::sampled(o.trials, o.seed) : DensityMode::exhaustive_mode();
  const auto rep = min_subset_density(g, o.k, mode);
  return {{"k", rep.k}, {"r", rep.r}, {"min_density", rep.min_density}, {"witness", rep.witness},
          {"mode", rep.exhaustive ? "exhaustive" : "sampled (upper estimate)"}, {"subsets_checked", rep.subsets_checked}};
}

Json cmd_kvc(const Options& o) {
  const auto g = load_graph(o.input);
  const auto rep = max_kvc(g, o.k, kvc_mode(o));
  return {{"k", o.k}, {"subset", rep.subset}, {"covered", rep.covered}, {"total_weight", g.total_weight()},
          {"exact", rep.exact}};
}

Json cmd_hardness_single(const Options& o) {
  const Correlation rho(o.rho);
  const double ratio = single_ratio(rho);
  return {{"rho", o.rho}, {"integral", integral_gamma(rho)}, {"completeness", completeness_limit(rho)},
          {"ratio", round6(ratio)}, {"ratio_full", ratio}};
}

Json cmd_hardness_scan(const Options& o) {
  if (!(o.step > 0.0) || !(o.lo <= o.hi)) throw DomainError("scan needs step > 0 and lo <= hi");
  const auto count = static_cast<std::size_t>(std::floor((o.hi - o.lo) / o.step + 1e-9));
  double best = -1.0, arg = 0.0;
  std::string curve = "rho,ratio\n";
  for (std::size_t i = 0; i <= count; ++i) {
    const double rho = std::min(o.hi, o.lo + o.step * static_cast<double>(i));
    const double v = single_ratio(Correlation(rho));
    if (!o.emit_curve.empty()) curve += format_double(rho) + "," + format_double(v) + "\n";
    if (v > best) {
      best = v;
      arg = rho;
    }
  }
  if (!o.emit_curve.empty()) write_text(o.emit_curve, curve);
  return {{"lo", o.lo}, {"hi", o.hi}, {"step", o.step}, {"points", count + 1}, {"best_rho", arg},
          {"ratio", round6(best)}, {"ratio_full", best}};
}

Json cmd_hardness_limit(const Options& o) {
  return {{"rho", o.rho}, {"gamma", o.gamma}, {"value", completeness_limit(Correlation(o.rho), o.gamma)}};
}

HardnessConfig config_of(const Options& o) { return o.config.empty() ? figure1_config() : load_config(o.config); }

ProfileOptions profile_of(const Options& o) { return {o.gamma, o.eps, o.depth, o.grid}; }

Json cmd_hardness_composite(const Options& o) {
  const auto cfg = config_of(o);
  const auto rep = composite_ratio(cfg, o.steps, profile_of(o));
  Json j = {{"k", cfg.size()}, {"steps", rep.steps}, {"completeness_value", rep.completeness_value},
            {"soundness_value", rep.soundness_value}, {"ratio", round6(rep.ratio)}, {"ratio_full", rep.ratio},
            {"completeness_runs", rep.completeness_trace.size()}, {"soundness_runs", rep.soundness_trace.size()}};
  if (!o.report.empty()) {
    Json t;
    for (const auto& [name, trace] : {std::pair{"completeness", &rep.completeness_trace},
                                      std::pair{"soundness", &rep.soundness_trace}}) {
      Json runs = Json::array();
      for (const auto& [i, c] : *trace) runs.push_back({i, c});
      t[name] = runs;
    }
    write_text(o.report, t.dump() + "\n");
  }
  return j;
}

Json cmd_hardness_optimize(const Options& o) {
  const auto cfg = config_of(o);
  OptimizeOptions opt;
  opt.budget = o.budget;
  opt.steps = o.opt_steps;
  opt.profile = profile_of(o);
  const auto res = optimize_config(cfg, opt);
  if (!o.out.empty()) write_text(o.out, write_config(res.config));
  Json pairs = Json::array();
  for (const auto& p : res.config.pairs()) pairs.push_back({p.alpha, p.rho});
  return {{"k", res.config.size()}, {"budget", o.budget}, {"steps", o.opt_steps}, {"evaluations", res.evaluations},
          {"seed_ratio", round6(res.seed_ratio)}, {"ratio", round6(res.ratio)}, {"ratio_full", res.ratio},
          {"pairs", pairs}};
}

Json cmd_reduce_build(const Options& o) {
  const auto ug = load_ug(o.input);
  const auto lc = build_long_code_graph(ug, Correlation(o.rho));
  if (!o.out.empty()) save_graph(lc.graph, o.out);
  return {{"L", ug.alphabet()}, {"rho", o.rho}, {"vertices", lc.graph.vertex_count()}, {"edges", lc.graph.edge_count()},
          {"total_weight", lc.graph.total_weight()}, {"dropped_loops", lc.dropped_loops},
          {"dropped_weight", lc.dropped_weight}};
}

Json cmd_reduce_instance(const Options& o) {
  const auto pi = perfect_circulant_ug(o.alphabet, o.side, o.degree, o.seed);
  write_text(o.out, write_ug(pi.instance));
  if (!o.labels.empty()) write_text(o.labels, write_labels(pi.labeling));
  return {{"L", o.alphabet}, {"u_count", pi.instance.u_count()}, {"v_count", pi.instance.v_count()},
          {"edges", pi.instance.edges().size()}, {"ug_value", ug_value(pi.instance, pi.labeling)}};
}

Json report_json(const ReductionReport& r) {
  return {{"passes", r.passes}, {"vertex_count_ok", r.vertex_count_ok}, {"expected_incident", r.expected_incident},
          {"max_incident_deviation", r.max_incident_deviation}, {"expected_total", r.expected_total},
          {"unordered_total", r.unordered_total}, {"kept_total", r.kept_total}, {"loop_weight", r.loop_weight},
          {"total_deviation", r.total_deviation}, {"max_weight_set_deviation", r.max_weight_set_deviation}};
}

Json cmd_reduce_verify(const Options& o, int& status) {
  const auto ug = load_ug(o.input);
  const Correlation rho(o.rho);
  const WeightedGraph g = o.graph.empty() ? build_long_code_graph(ug, rho).graph : load_graph(o.graph);
  const auto rep = verify_reduction(g, ug, rho);
  if (!rep.passes) status = 1;
  return report_json(rep);
}

Json cmd_reduce_order(const Options& o) {
  const auto ug = load_ug(o.input);
  const auto z = load_labels(o.labels);
  const auto order = completeness_ordering(ug, z);
  if (!o.out.empty()) {
    std::string text;
    for (Vertex v : order.steps()) text += std::to_string(v) + "\n";
    write_text(o.out, text);
  }
  const Correlation rho(o.rho);
  const auto lc = build_long_code_graph(ug, rho);
  const double norm = static_cast<double>(lc.graph.vertex_count()) * lc.graph.total_weight();
  const double value = svc_value(lc.graph, order);
  const double sat = ug_value(ug, z);
  return {{"ug_value", sat}, {"svc_value", value}, {"normalized_svc", norm > 0.0 ? value / norm : 0.0},
          {"bound", 1.0 / (3.0 - o.rho) + std::ldexp(1.0, -ug.alphabet()) + 3.0 * (1.0 - sat)},
          {"ordering", ordering_json(order)}};
}

Json cmd_unweight(const Options& o) {
  const auto g = load_graph(o.input);
  GadgetOptions gopt;
  gopt.verify_trials = o.verify_trials;
  const auto res = unweight(g, o.m, o.eps, o.seed, gopt, o.threads);
  if (!o.out.empty()) save_graph(res.graph, o.out);
  Json hist = Json::object();
  for (const auto& [d, c] : res.degree_histogram) hist[std::to_string(d)] = c;
  double worst3 = std::numeric_limits<double>::infinity(), worst2 = worst3;
  int max_attempt = 0;
  for (const auto& gd : res.gadgets) {
    worst3 = std::min(worst3, gd.bound_3eps - gd.max_deviation);
    worst2 = std::min(worst2, gd.bound_2eps - gd.max_deviation);
    max_attempt = std::max(max_attempt, gd.attempt);
  }
  if (!o.report.empty()) {
    Json gs = Json::array();
    for (std::size_t e = 0; e < res.gadgets.size(); ++e) {
      const auto& gd = res.gadgets[e];
      gs.push_back({{"edge", e}, {"w", g.edge(e).w}, {"degree", gd.degree}, {"attempt", gd.attempt},
                    {"resamples", gd.resamples}, {"added", gd.added}, {"removed", gd.removed},
                    {"added_bound", gd.added_bound}, {"max_deviation", gd.max_deviation},
                    {"margin_3eps", gd.bound_3eps - gd.max_deviation}, {"margin_2eps", gd.bound_2eps - gd.max_deviation},
                    {"exhaustive", gd.exhaustive}, {"subsets_checked", gd.subsets_checked}});
    }
    Json rep = {{"m", o.m}, {"eps", o.eps}, {"seed", o.seed}, {"degree_histogram", hist},
                {"degree_spread", res.degree_spread}, {"gadgets", gs}};
    write_text(o.report, rep.dump(2) + "\n");
  }
  return {{"m", o.m}, {"eps", o.eps}, {"vertices", res.graph.vertex_count()}, {"edges", res.graph.edge_count()},
          {"gadgets", res.gadgets.size()}, {"degree_spread", res.degree_spread}, {"degree_histogram", hist},
          {"max_attempt", max_attempt},
          {"min_margin_3eps", res.gadgets.empty() ? 0.0 : worst3},
          {"min_margin_2eps", res.gadgets.empty() ? 0.0 : worst2}};
}

Json cmd_regular_ratio(const Options& o) {
  const auto a = minimize_flt_ratio(o.alpha, o.eps_step);
  if (!o.emit_curve.empty()) {
    std::string text = "eps,ratio\n";
    for (const auto& [e, r] : flt_curve(o.alpha, o.points)) text += format_double(e) + "," + format_double(r) + "\n";
    write_text(o.emit_curve, text);
  }
  return {{"alpha", a.alpha}, {"optimal_eps", a.optimal_eps}, {"optimal_ratio", a.optimal_ratio},
          {"greedy_branch", a.greedy_branch}, {"sup_branch", a.sup_branch}, {"branches_cross", a.branches_cross}};
}

Json cmd_regular_counterexample(const Options& o) {
  const CounterexampleParams params{o.p, o.q, o.scale};
  const auto cx = resolve_counterexample(params);
  if (!o.out.empty()) save_graph(counterexample_graph(cx), o.out);
  Json j = {{"p", o.p}, {"q", o.q}, {"scale", o.scale}, {"delta", cx.delta}, {"n", cx.n}, {"t", cx.t}, {"s", cx.s}};
  if (!o.verify) return j;
  const auto rep = verify_counterexample(params);
  const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  j["m"] = rep.m;
  j["staged_value"] = rep.staged_value;
  j["staged_formula"] = rep.staged_formula;
  j["analytic_cost"] = rep.analytic_cost;
  j["exact_value"] = opt(rep.exact_value);
  j["exact_note"] = rep.exact_value ? "subset DP" : "n > 24, exact DP infeasible";
  j["best_half_cover"] = opt(rep.best_half_cover);
  j["coverage_cap"] = rep.coverage_cap;
  j["uncovered_after_half"] = rep.best_half_cover ? Json(static_cast<double>(rep.m) - *rep.best_half_cover) : Json(nullptr);
  j["sqrt_delta_m"] = rep.sqrt_delta_m;
  j["vertex_cover_number"] = rep.vertex_cover_number;
  j["staged_over_n2"] = rep.staged_over_n2;
  j["exact_over_n2"] = opt(rep.exact_over_n2);
  j["target_over_n2"] = rep.target_over_n2;
  return j;
}

Json cmd_regular_check(const Options& o) {
  const auto g = load_graph(o.input);
  const auto rep = coverage_bound_check(g, o.delta, o.msvc_value);
  return {{"n", rep.n}, {"total_weight", rep.total_weight}, {"msvc", rep.msvc}, {"msvc_exact", rep.msvc_exact},
          {"per_mn", rep.per_mn}, {"per_n2", rep.per_n2}, {"delta", o.delta}, {"delta_eff", rep.delta_eff},
          {"applicable", rep.applicable}, {"best_half_cover", rep.best_half_cover}, {"required", rep.required},
          {"margin", rep.margin}, {"holds", rep.holds}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  CLI::App app{"Minimum Sum Vertex Cover hardness toolkit"};
  app.footer(kFormats);
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads for parallel stages")->check(CLI::Range(1U, 1024U))->capture_default_str();
  app.set_version_flag("--version", MSVC_TOOL_VERSION);

  std::function<Json()> action;
  int status = 0;
  std::string name;
  std::vector<CLI::App*> leaves;
  const auto leaf = [&](CLI::App* sub, std::string full, std::function<Json()> fn) {
    sub->footer(kFormats);
    sub->callback([&, full, fn] {
      name = full;
      action = fn;
    });
    leaves.push_back(sub);
    return sub;
  };
  const auto input = [&](CLI::App* sub, const char* what, std::string& target, bool required = true) {
    auto* opt = sub->add_option("--input", target, what)->check(CLI::ExistingFile);
    if (required) opt->required();
  };

  // gaussian
  auto* gaussian = app.add_subcommand("gaussian", "Normal and bivariate-normal quantities");
  gaussian->require_subcommand(1);
  gaussian->footer(kFormats);
  {
    auto* s = leaf(gaussian->add_subcommand("gamma", "Gamma_rho(x, y)"), "gaussian gamma", [&] { return cmd_gaussian_gamma(o); });
    s->add_option("--rho", o.rho, "Correlation in [-1, 1]")->required();
    s->add_option("--x", o.x, "First probability")->required();
    s->add_option("--y", o.y, "Second probability")->required();
    s = leaf(gaussian->add_subcommand("integral", "Integral of Gamma_rho(r) over [0, 1]"), "gaussian integral",
             [&] { return cmd_gaussian_integral(o); });
    s->add_option("--rho", o.rho, "Correlation in [-1, 1]")->required();
    s->add_option("--nodes", o.nodes, "Simpson nodes (odd, >= 2049)")->capture_default_str();
    s = leaf(gaussian->add_subcommand("deriv", "d/dr Gamma_rho(r, r)"), "gaussian deriv", [&] { return cmd_gaussian_deriv(o); });
    s->add_option("--rho", o.rho, "Correlation in (-1, 1)")->required();
    s->add_option("--r", o.r, "Probability in (0, 1)")->required();
  }

  // solvers
  {
    auto* s = leaf(app.add_subcommand("solve", "Solve MSVC on a graph file"), "solve", [&] { return cmd_solve(o); });
    s->add_option("--method", o.method, "Solver")
        ->check(CLI::IsMember({"exact", "brute", "greedy", "two-phase", "random"}))
        ->capture_default_str();
    input(s, "Graph file", o.input);
    s->add_option("--seed", o.seed, "Seed for random orderings and local search")->capture_default_str();
    s->add_option("--kvc", o.kvc, "Max-k-VC mode for two-phase")->check(CLI::IsMember({"exact", "local"}))->capture_default_str();
    s->add_option("--restarts", o.restarts, "Local-search restarts")->capture_default_str();

    s = leaf(app.add_subcommand("density", "Minimum internal weight over k-subsets"), "density", [&] { return cmd_density(o); });
    input(s, "Graph file", o.input);
    s->add_option("--k", o.k, "Subset size")->required();
    s->add_option("--trials", o.trials, "Sample this many subsets instead of enumerating")->capture_default_str();
    s->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();

    s = leaf(app.add_subcommand("kvc", "Max-k-Vertex-Cover"), "kvc", [&] { return cmd_kvc(o); });
    input(s, "Graph file", o.input);
    s->add_option("--k", o.k, "Subset size")->required();
    s->add_option("--mode", o.kvc, "exact or local")->check(CLI::IsMember({"exact", "local"}))->capture_default_str();
    s->add_option("--restarts", o.restarts, "Local-search restarts")->capture_default_str();
    s->add_option("--seed", o.seed, "Local-search seed")->capture_default_str();
  }

  // hardness
  auto* hardness = app.add_subcommand("hardness", "Inapproximability ratio computations");
  hardness->require_subcommand(1);
  hardness->footer(kFormats);
  {
    auto* s = leaf(hardness->add_subcommand("single", "Single-graph ratio (3 - rho) * integral"), "hardness single",
                   [&] { return cmd_hardness_single(o); });
    s->add_option("--rho", o.rho, "Correlation in [-1, 0]")->required();

    s = leaf(hardness->add_subcommand("scan", "Maximize the single-graph ratio over a rho grid"), "hardness scan",
             [&] { return cmd_hardness_scan(o); });
    s->add_option("--step", o.step, "Grid step")->capture_default_str();
    s->add_option("--lo", o.lo, "Lowest rho")->capture_default_str();
    s->add_option("--hi", o.hi, "Highest rho")->capture_default_str();
    s->add_option("--emit-curve", o.emit_curve, "Write (rho, ratio) CSV here");

    s = leaf(hardness->add_subcommand("limit", "Completeness recurrence fixed point"), "hardness limit",
             [&] { return cmd_hardness_limit(o); });
    s->add_option("--rho", o.rho, "Correlation in [-1, 0]")->required();
    s->add_option("--gamma", o.gamma, "Bad-edge slack")->capture_default_str();

    const auto profile_flags = [&](CLI::App* sub) {
      sub->add_option("--config", o.config, "Config file (default: bundled 60-pair config)")->check(CLI::ExistingFile);
      sub->add_option("--gamma", o.gamma, "Completeness slack")->capture_default_str();
      sub->add_option("--eps", o.eps, "Soundness slack")->capture_default_str();
      sub->add_option("--grid", o.grid, "Profile grid exponent g (2^g + 1 nodes)")->capture_default_str();
      sub->add_option("--depth", o.depth, "Recurrence depth")->capture_default_str();
    };
    s = leaf(hardness->add_subcommand("composite", "Greedy composite-instance ratio"), "hardness composite",
             [&] { return cmd_hardness_composite(o); });
    profile_flags(s);
    s->add_option("--steps", o.steps, "Steps per graph (>= 1000)")->capture_default_str();
    s->add_option("--trace", o.report, "Write the run-length schedule traces here (JSON)");

    s = leaf(hardness->add_subcommand("optimize", "Improve a config by grid refinement and gradient ascent"),
             "hardness optimize", [&] { return cmd_hardness_optimize(o); });
    profile_flags(s);
    s->add_option("--budget", o.budget, "Maximum composite evaluations")->capture_default_str();
    s->add_option("--steps", o.opt_steps, "Steps per graph during the search")->capture_default_str();
    s->add_option("--out", o.out, "Write the optimized config here");
  }

  // reduction
  auto* reduce = app.add_subcommand("reduce", "Long-code reduction from an affine UG instance");
  reduce->footer(kFormats);
  reduce->require_subcommand(0, 1);
  {
    input(reduce, "UG file", o.input, false);
    reduce->add_option("--rho", o.rho, "Correlation in (-1, 0)")->capture_default_str();
    reduce->add_option("--out", o.out, "Write the long-code graph here");
    reduce->callback([&] {
      if (!reduce->get_subcommands().empty()) return;
      if (o.input.empty()) throw CLI::RequiredError("--input");
      name = "reduce";
      action = [&] { return cmd_reduce_build(o); };
    });

    auto* s = reduce->add_subcommand("verify", "Check regularity, total weight and weight set");
    s->footer(kFormats);
    input(s, "UG file", o.input);
    s->add_option("--rho", o.rho, "Correlation in (-1, 0)")->required();
    s->add_option("--graph", o.graph, "Graph to check (default: rebuild from the instance)")->check(CLI::ExistingFile);
    s->final_callback([&] {
      name = "reduce verify";
      action = [&] { return cmd_reduce_verify(o, status); };
    });

    s = reduce->add_subcommand("instance", "Generate a satisfiable circulant affine UG instance");
    s->footer(kFormats);
    s->add_option("--L", o.alphabet, "Alphabet size")->capture_default_str();
    s->add_option("--side", o.side, "Vertices per side")->capture_default_str();
    s->add_option("--degree", o.degree, "Degree of every vertex")->capture_default_str();
    s->add_option("--seed", o.seed, "Seed for the planted labeling")->capture_default_str();
    s->add_option("--out", o.out, "Write the instance here")->required();
    s->add_option("--labels", o.labels, "Write the planted labeling here");
    s->final_callback([&] {
      name = "reduce instance";
      action = [&] { return cmd_reduce_instance(o); };
    });

    s = reduce->add_subcommand("order", "Completeness ordering for a labeling");
    s->footer(kFormats);
    input(s, "UG file", o.input);
    s->add_option("--labels", o.labels, "Labels file")->required()->check(CLI::ExistingFile);
    s->add_option("--rho", o.rho, "Correlation in (-1, 0), used to evaluate the ordering")->capture_default_str();
    s->add_option("--out", o.out, "Write the ordering here, one vertex per line");
    s->final_callback([&] {
      name = "reduce order";
      action = [&] { return cmd_reduce_order(o); };
    });
  }

  // unweighting
  {
    auto* s = leaf(app.add_subcommand("unweight", "Replace weighted edges by sampled regular gadgets"), "unweight",
                   [&] { return cmd_unweight(o); });
    input(s, "Graph file", o.input);
    s->add_option("--m", o.m, "Blow-up factor")->required();
    s->add_option("--eps", o.eps, "Degree slack in (0, 1/2)")->required();
    s->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    s->add_option("--out", o.out, "Write the unweighted graph here");
    s->add_option("--report", o.report, "Write the per-gadget JSON report here");
    s->add_option("--trials", o.verify_trials, "Random subsets per gadget when m > 12")->capture_default_str();
  }

  // regular-graph analysis
  auto* regular = app.add_subcommand("regular", "Regular-graph approximation analysis");
  regular->require_subcommand(1);
  regular->footer(kFormats);
  {
    auto* s = leaf(regular->add_subcommand("ratio", "Optimize the two-phase approximation ratio over eps"),
                   "regular ratio", [&] { return cmd_regular_ratio(o); });
    s->add_option("--alpha", o.alpha, "Max-k-VC approximation constant")->capture_default_str();
    s->add_option("--step", o.eps_step, "eps grid step")->capture_default_str();
    s->add_option("--emit-curve", o.emit_curve, "Write (eps, ratio) CSV here");
    s->add_option("--points", o.points, "Curve samples")->capture_default_str();

    s = leaf(regular->add_subcommand("counterexample", "K_{2,2} / K_3 counterexample with sqrt(delta) = p/q"),
             "regular counterexample", [&] { return cmd_regular_counterexample(o); });
    s->add_option("--p", o.p, "Numerator of sqrt(delta)")->capture_default_str();
    s->add_option("--q", o.q, "Denominator of sqrt(delta), q > 6p")->capture_default_str();
    s->add_option("--scale", o.scale, "Multiple of the smallest size")->capture_default_str();
    s->add_flag("--verify", o.verify, "Simulate, solve exactly and check coverage");
    s->add_option("--out", o.out, "Write the graph here");

    s = leaf(regular->add_subcommand("check", "Coverage of the best n/2 prefix on a regular graph"), "regular check",
             [&] { return cmd_regular_check(o); });
    input(s, "Graph file", o.input);
    s->add_option("--delta", o.delta, "delta in [0, 1/4)")->required();
    s->add_option("--msvc", o.msvc_value, "Supply the MSVC value instead of solving");
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (!action) {
    err << "error: no subcommand selected\n";
    return 2;
  }

  Json result;
  try {
    result = action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  // Manifest: every option of the selected command chain.
  Json params = Json::object();
  Json digests = Json::object();
  std::optional<std::uint64_t> seed;
  for (CLI::App* a = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); a;
       a = a->get_subcommands().empty() ? nullptr : a->get_subcommands().front()) {
    for (const CLI::Option* opt : a->get_options()) {
      if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
      const std::string key = "--" + opt->get_lnames().front();
      std::string value = opt->count() ? opt->as<std::string>() : opt->get_default_str();
      if (opt->get_type_size() == 0) value = opt->count() ? "true" : "false";
      params[key.substr(2)] = value;
      if (key == "--seed") seed = o.seed;
      const bool is_file = key == "--input" || key == "--config" || key == "--labels" || key == "--graph";
      if (is_file && opt->count()) digests[value] = sha256_file(value);
    }
  }
  params["format"] = o.format;
  params["threads"] = o.threads;
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json manifest = {{"subcommand", name}, {"parameters", params}, {"seed", seed ? Json(*seed) : Json(nullptr)},
                   {"version", MSVC_TOOL_VERSION}, {"input_digests", digests}, {"wall_time_s", wall}};
  err << Json{{"manifest", manifest}}.dump() << "\n";

  if (o.format == "csv") {
    out << to_csv(result);
  } else {
    out << result.dump(2) << "\n";
  }
  return status;
}

}  // namespace msvc::cli
