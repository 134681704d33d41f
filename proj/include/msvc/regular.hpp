#pragma once

// Approximation ratio of the two-phase algorithm on regular graphs, and the
// K_{2,2} / K_3 counterexample to the (1 - delta) coverage bound.

#include <cstdint>
#include <optional>
#include <vector>

#include "msvc/graph.hpp"

namespace msvc {

/// Max-2-Sat with a bisection constraint, Lewin-Livnat-Zwick.
inline constexpr double kAlphaLLZ = 0.9401;

struct FltRatio {
  double eps = 0.0;
  double greedy_branch = 0.0;  ///< 4 / (3 + 12 eps)
  double sup_branch = 0.0;     ///< sup over delta in (0, eps]
  double argmax_delta = 0.0;
  double ratio = 0.0;          ///< max of the two branches
};

/// Requires 0 < eps < 1/4. The supremum uses a 10^5-point grid on (0, eps]
/// refined by golden-section search around the best node.
FltRatio flt_ratio(double eps, double alpha = kAlphaLLZ);

struct RatioAnalysis {
  double alpha = kAlphaLLZ;
  double optimal_eps = 0.0;
  double optimal_ratio = 0.0;
  double greedy_branch = 0.0;
  double sup_branch = 0.0;
  /// The two branches agree to 1e-4 at the optimum.
  bool branches_cross = false;
};

/// Scans eps on a uniform grid of the given step, then refines the crossing
/// of the two branches by bisection.
RatioAnalysis minimize_flt_ratio(double alpha = kAlphaLLZ, double step = 1e-5);

/// (eps, ratio) samples for plotting.
std::vector<std::pair<double, double>> flt_curve(double alpha, std::size_t points);

struct CounterexampleParams {
  std::int64_t p = 1;
  std::int64_t q = 10;
  std::int64_t scale = 1;
};

/// Sizes derived from sqrt(delta) = p/q: t = (1/2 - 3 sqrt(delta)) n and
/// s = 2 sqrt(delta) n, with n the smallest size making both integers and t
/// even, times `scale`.
struct Counterexample {
  CounterexampleParams params;
  double delta = 0.0;
  std::int64_t n = 0;
  std::int64_t t = 0;
  std::int64_t s = 0;
};

/// DomainError unless p >= 1, q > 6p and scale >= 1.
Counterexample resolve_counterexample(const CounterexampleParams& params);

/// t/2 copies of K_{2,2} then s copies of K_3. K_{2,2} block b has left
/// vertices 2b, 2b+1 and right vertices t+2b, t+2b+1; triangle c uses
/// 2t+3c, 2t+3c+1, 2t+3c+2.
WeightedGraph counterexample_graph(const Counterexample& cx);

/// Left sides of the K_{2,2} blocks, then one vertex of every triangle, then a
/// second vertex of every triangle, then the rest by id.
Ordering staged_ordering(const Counterexample& cx);

struct CounterexampleReport {
  Counterexample cx;
  std::int64_t m = 0;
  double staged_value = 0.0;        ///< simulated
  double staged_formula = 0.0;      ///< t(t+1) + 2st + s(s+1) + s(t+s) + s(s+1)/2
  double analytic_cost = 0.0;       ///< t^2 + 3st + 5s^2/2
  std::optional<double> exact_value;  ///< subset DP, n <= 24
  std::optional<double> best_half_cover;  ///< exhaustive Max-(n/2)-VC
  double coverage_cap = 0.0;        ///< (1 - sqrt(delta)) m
  double sqrt_delta_m = 0.0;
  std::int64_t vertex_cover_number = 0;  ///< t + 2s
  double staged_over_n2 = 0.0;
  std::optional<double> exact_over_n2;
  double target_over_n2 = 0.0;      ///< 1/4 + delta
};

CounterexampleReport verify_counterexample(const CounterexampleParams& params);

struct CoverageReport {
  Vertex n = 0;
  double total_weight = 0.0;
  double msvc = 0.0;
  bool msvc_exact = false;       ///< computed here rather than supplied
  double per_mn = 0.0;           ///< MSVC / (W(E) n)
  double per_n2 = 0.0;           ///< MSVC / n^2
  double delta_eff = 0.0;        ///< per_mn - 1/4 - 1/(2n)
  bool applicable = false;       ///< |delta_eff - delta| <= 1e-9
  double best_half_cover = 0.0;  ///< exact Max-(n/2)-VC
  double required = 0.0;         ///< (1 - sqrt(delta)) W(E)
  double margin = 0.0;
  bool holds = true;             ///< vacuous when not applicable
};

/// Checks that a Max-(n/2)-VC solution covers at least (1 - sqrt(delta)) of
/// the weight whenever MSVC equals (1/4 + delta) n W(E) up to the discrete
/// correction 1/(2n). DomainError for non-regular graphs or odd n.
CoverageReport coverage_bound_check(const WeightedGraph& g, double delta,
                                    std::optional<double> msvc_value = std::nullopt);

}  // namespace msvc
