#include "msvc/regular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "msvc/error.hpp"
#include "msvc/solvers.hpp"

namespace msvc {

namespace {

double greedy_branch(double eps) { return 4.0 / (3.0 + 12.0 * eps); }

double sup_integrand(double delta, double alpha) {
  return ((-5.0 * alpha + 5.0 * alpha * std::sqrt(delta)) / 12.0 + 2.0 / 3.0) / (0.25 + delta);
}

constexpr std::size_t kDeltaGrid = 100'000;

template <class F>
double golden_max(const F& f, double lo, double hi, double& arg) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    }
  }
  arg = 0.5 * (a + b);
  return f(arg);
}

}  // namespace

FltRatio flt_ratio(double eps, double alpha) {
  if (!(eps > 0.0 && eps < 0.25)) throw DomainError("flt_ratio requires 0 < eps < 1/4");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  FltRatio r;
  r.eps = eps;
  r.greedy_branch = greedy_branch(eps);
  const auto f = [alpha](double d) { return sup_integrand(d, alpha); };
  std::size_t best_i = 1;
  double best = -1.0;
  for (std::size_t i = 1; i <= kDeltaGrid; ++i) {
    const double v = f(eps * static_cast<double>(i) / kDeltaGrid);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = eps * static_cast<double>(best_i - 1) / kDeltaGrid;
  const double hi = eps * static_cast<double>(std::min(best_i + 1, kDeltaGrid)) / kDeltaGrid;
  double arg = eps * static_cast<double>(best_i) / kDeltaGrid;
  double refined_arg;
  const double refined = golden_max(f, std::max(lo, 1e-300), hi, refined_arg);
  if (refined > best) {
    best = refined;
    arg = refined_arg;
  }
  r.sup_branch = best;
  r.argmax_delta = arg;
  r.ratio = std::max(r.greedy_branch, r.sup_branch);
  return r;
}

RatioAnalysis minimize_flt_ratio(double alpha, double step) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(step > 0.0 && step < 0.01)) throw DomainError("eps step must lie in (0, 0.01)");
  // The greedy branch decreases in eps and the running supremum increases,
  // so the maximum of the two is unimodal.
  const auto count = static_cast<std::size_t>(std::floor(0.25 / step));
  double running = -1.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_j = 1;
  for (std::size_t j = 1; j < count; ++j) {
    const double eps = step * static_cast<double>(j);
    running = std::max(running, sup_integrand(eps, alpha));
    const double v = std::max(greedy_branch(eps), running);
    if (v < best) {
      best = v;
      best_j = j;
    }
  }
  // Bisect greedy - sup on the bracketing cells.
  double lo = step * static_cast<double>(best_j > 1 ? best_j - 1 : 1);
  double hi = std::min(step * static_cast<double>(best_j + 1), 0.25 - 1e-12);
  const auto diff = [alpha](double e) {
    const FltRatio r = flt_ratio(e, alpha);
    return r.greedy_branch - r.sup_branch;
  };
  if (diff(lo) > 0.0 && diff(hi) < 0.0) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) > 0.0 ? lo : hi) = mid;
    }
  }
  RatioAnalysis a;
  a.alpha = alpha;
  const FltRatio at_lo = flt_ratio(lo, alpha);
  const FltRatio at_hi = flt_ratio(hi, alpha);
  const FltRatio& opt = at_lo.ratio <= at_hi.ratio ? at_lo : at_hi;
  a.optimal_eps = opt.eps;
  a.optimal_ratio = opt.ratio;
  a.greedy_branch = opt.greedy_branch;
  a.sup_branch = opt.sup_branch;
  a.branches_cross = std::abs(opt.greedy_branch - opt.sup_branch) <= 1e-4;
  return a;
}

std::vector<std::pair<double, double>> flt_curve(double alpha, std::size_t points) {
  if (points < 2) throw DomainError("curve needs at least two points");
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double eps = 0.25 * static_cast<double>(i + 1) / static_cast<double>(points + 1);
    out.emplace_back(eps, flt_ratio(eps, alpha).ratio);
  }
  return out;
}

Counterexample resolve_counterexample(const CounterexampleParams& params) {
  const auto [p, q, scale] = params;
  if (p < 1) throw DomainError("counterexample needs p >= 1");
  if (q <= 6 * p) throw DomainError("counterexample needs q > 6p so that t is positive");
  if (scale < 1) throw DomainError("counterexample needs scale >= 1");
  if (q > 1'000'000) throw DomainError("counterexample denominator too large");
  Counterexample cx;
  cx.params = params;
  cx.delta = static_cast<double>(p * p) / static_cast<double>(q * q);
  // t = n (q - 6p) / (2q) and s = 2pn / q; n = 4q always works.
  for (std::int64_t n = 1; n <= 4 * q; ++n) {
    const std::int64_t tn = n * (q - 6 * p);
    if (tn % (2 * q) != 0 || (tn / (2 * q)) % 2 != 0 || (2 * p * n) % q != 0) continue;
    cx.n = n * scale;
    cx.t = tn / (2 * q) * scale;
    cx.s = 2 * p * n / q * scale;
    break;
  }
  if (cx.n > std::numeric_limits<Vertex>::max() / 4) throw DomainError("counterexample too large");
  return cx;
}

WeightedGraph counterexample_graph(const Counterexample& cx) {
  const auto t = static_cast<Vertex>(cx.t);
  const auto s = static_cast<Vertex>(cx.s);
  if (t < 0 || s < 0 || t % 2 != 0) throw DomainError("counterexample needs non-negative s and even t");
  std::vector<Edge> edges;
  for (Vertex b = 0; b < t / 2; ++b) {
    const Vertex l0 = 2 * b, l1 = 2 * b + 1, r0 = t + 2 * b, r1 = t + 2 * b + 1;
    edges.push_back({l0, r0, 1.0});
    edges.push_back({l0, r1, 1.0});
    edges.push_back({l1, r0, 1.0});
    edges.push_back({l1, r1, 1.0});
  }
  for (Vertex c = 0; c < s; ++c) {
    const Vertex a = 2 * t + 3 * c;
    edges.push_back({a, a + 1, 1.0});
    edges.push_back({a, a + 2, 1.0});
    edges.push_back({a + 1, a + 2, 1.0});
  }
  return WeightedGraph(2 * t + 3 * s, std::move(edges));
}

Ordering staged_ordering(const Counterexample& cx) {
  const auto t = static_cast<Vertex>(cx.t);
  const auto s = static_cast<Vertex>(cx.s);
  const Vertex n = 2 * t + 3 * s;
  std::vector<Vertex> perm;
  std::vector<bool> used(n, false);
  const auto take = [&](Vertex v) {
    perm.push_back(v);
    used[v] = true;
  };
  for (Vertex v = 0; v < t; ++v) take(v);
  for (Vertex c = 0; c < s; ++c) take(2 * t + 3 * c);
  for (Vertex c = 0; c < s; ++c) take(2 * t + 3 * c + 1);
  for (Vertex v = 0; v < n; ++v) {
    if (!used[v]) take(v);
  }
  return Ordering(std::move(perm));
}

CounterexampleReport verify_counterexample(const CounterexampleParams& params) {
  CounterexampleReport rep;
  rep.cx = resolve_counterexample(params);
  const auto g = counterexample_graph(rep.cx);
  const double t = static_cast<double>(rep.cx.t);
  const double s = static_cast<double>(rep.cx.s);
  const double n = static_cast<double>(rep.cx.n);
  const double sq = static_cast<double>(params.p) / static_cast<double>(params.q);
  rep.m = static_cast<std::int64_t>(g.edge_count());
  rep.staged_value = svc_value(g, staged_ordering(rep.cx));
  rep.staged_formula = t * (t + 1.0) + 2.0 * s * t + s * (s + 1.0) + s * (t + s) + s * (s + 1.0) / 2.0;
  rep.analytic_cost = t * t + 3.0 * s * t + 2.5 * s * s;
  rep.coverage_cap = (1.0 - sq) * static_cast<double>(rep.m);
  rep.sqrt_delta_m = sq * static_cast<double>(rep.m);
  rep.vertex_cover_number = rep.cx.t + 2 * rep.cx.s;
  rep.staged_over_n2 = rep.staged_value / (n * n);
  rep.target_over_n2 = 0.25 + rep.cx.delta;
  if (g.vertex_count() <= kMaxDpVertices) {
    rep.exact_value = msvc_exact_dp(g).value;
    rep.exact_over_n2 = *rep.exact_value / (n * n);
  }
  const auto half = static_cast<std::size_t>(g.vertex_count() / 2);
  if (binomial(static_cast<std::uint64_t>(g.vertex_count()), half) <= kExhaustiveSubsetBudget) {
    rep.best_half_cover = max_kvc(g, half).covered;
  }
  return rep;
}

CoverageReport coverage_bound_check(const WeightedGraph& g, double delta, std::optional<double> msvc_value) {
  if (!(delta >= 0.0 && delta < 0.25)) throw DomainError("delta must lie in [0, 1/4)");
  const Vertex n = g.vertex_count();
  if (n == 0 || n % 2 != 0) throw DomainError("coverage check needs an even, positive vertex count");
  const auto inc = g.incident_weights();
  const auto [lo, hi] = std::minmax_element(inc.begin(), inc.end());
  if (*hi - *lo > 1e-12 * std::max(1.0, *hi)) throw DomainError("coverage check needs a regular graph");

  CoverageReport rep;
  rep.n = n;
  rep.total_weight = g.total_weight();
  if (msvc_value) {
    rep.msvc = *msvc_value;
  } else {
    rep.msvc = msvc_exact_dp(g).value;
    rep.msvc_exact = true;
  }
  const double nd = n;
  rep.per_mn = rep.total_weight > 0.0 ? rep.msvc / (rep.total_weight * nd) : 0.0;
  rep.per_n2 = rep.msvc / (nd * nd);
  // A cover at step i sits at continuous time i - 1/2, hence the 1/(2n).
  rep.delta_eff = rep.per_mn - 0.25 - 0.5 / nd;
  rep.applicable = std::abs(rep.delta_eff - delta) <= 1e-9;
  rep.best_half_cover = max_kvc(g, static_cast<std::size_t>(n / 2)).covered;
  rep.required = (1.0 - std::sqrt(delta)) * rep.total_weight;
  rep.margin = rep.best_half_cover - rep.required;
  rep.holds = !rep.applicable || rep.margin >= -1e-9;
  return rep;
}

}  // namespace msvc
