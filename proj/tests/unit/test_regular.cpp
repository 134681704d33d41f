#include <cmath>

#include "doctest.h"
#include "msvc/error.hpp"
#include "msvc/regular.hpp"
#include "msvc/solvers.hpp"

using namespace msvc;

TEST_CASE("flt ratio branches") {
  const auto r = flt_ratio(1e-6);
  CHECK(r.greedy_branch == doctest::Approx(4.0 / 3.0).epsilon(1e-5));
  CHECK(r.ratio >= r.greedy_branch);
  CHECK(r.ratio >= r.sup_branch);
  CHECK(r.argmax_delta > 0.0);
  CHECK(r.argmax_delta <= r.eps);
  for (double eps = 0.001; eps < 0.25; eps += 0.01) CHECK(flt_ratio(eps).ratio >= 1.0);
  CHECK_THROWS_AS(flt_ratio(0.0), DomainError);
  CHECK_THROWS_AS(flt_ratio(0.25), DomainError);
  CHECK_THROWS_AS(flt_ratio(0.1, 1.5), DomainError);
}

TEST_CASE("sup branch against a dense direct scan") {
  const double alpha = kAlphaLLZ, eps = 0.05;
  double best = 0.0;
  for (int i = 1; i <= 200000; ++i) {
    const double d = eps * i / 200000.0;
    best = std::max(best, ((-5 * alpha + 5 * alpha * std::sqrt(d)) / 12 + 2.0 / 3.0) / (0.25 + d));
  }
  CHECK(flt_ratio(eps, alpha).sup_branch == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("optimized two-phase ratio") {
  const auto a = minimize_flt_ratio();
  CHECK(std::abs(a.optimal_ratio - 1.225) < 1e-3);
  CHECK(a.branches_cross);
  CHECK(std::abs(a.greedy_branch - a.sup_branch) < 1e-4);
  const auto curve = flt_curve(kAlphaLLZ, 50);
  CHECK(curve.size() == 50);
  for (const auto& [e, r] : curve) CHECK(r >= a.optimal_ratio - 1e-9);
}

TEST_CASE("counterexample sizes") {
  const auto cx = resolve_counterexample({1, 10, 1});
  CHECK(cx.n == 10);
  CHECK(cx.t == 2);
  CHECK(cx.s == 2);
  CHECK(cx.delta == doctest::Approx(0.01));
  const auto twice = resolve_counterexample({1, 10, 2});
  CHECK(twice.n == 20);
  CHECK(twice.t == 4);
  CHECK(twice.s == 4);
  CHECK_THROWS_AS(resolve_counterexample({1, 6, 1}), DomainError);
  CHECK_THROWS_AS(resolve_counterexample({0, 10, 1}), DomainError);
  CHECK_THROWS_AS(resolve_counterexample({1, 10, 0}), DomainError);
}

TEST_CASE("counterexample graph is 2-regular with canonical numbering") {
  const auto cx = resolve_counterexample({1, 10, 2});
  const auto g = counterexample_graph(cx);
  CHECK(g.vertex_count() == 20);
  CHECK(g.edge_count() == 20);
  for (double d : g.incident_weights()) CHECK(d == 2.0);
  // First K_{2,2}: left {0, 1}, right {t, t+1}.
  const auto adj = g.adjacency();
  for (auto [v, idx] : adj[0]) CHECK((v == cx.t || v == cx.t + 1));
  // First triangle starts at 2t.
  for (auto [v, idx] : adj[2 * cx.t]) CHECK((v == 2 * cx.t + 1 || v == 2 * cx.t + 2));
  CHECK(staged_ordering(cx).size() == 20);
}

TEST_CASE("counterexample verification at n = 10 and n = 20") {
  const auto a = verify_counterexample({1, 10, 1});
  CHECK(a.staged_value == 31.0);
  CHECK(a.staged_formula == 31.0);
  REQUIRE(a.exact_value);
  CHECK(*a.exact_value <= a.staged_value);
  REQUIRE(a.best_half_cover);
  CHECK(*a.best_half_cover == 9.0);
  CHECK(a.coverage_cap == 9.0);
  CHECK(a.m - *a.best_half_cover == a.sqrt_delta_m);
  CHECK(a.vertex_cover_number == 6);
  CHECK(a.target_over_n2 == doctest::Approx(0.26));
  CHECK(*a.exact_over_n2 - 0.26 > 0.0);

  const auto b = verify_counterexample({1, 10, 2});
  CHECK(b.staged_value == b.staged_formula);
  CHECK(std::abs(b.staged_over_n2 - 0.26) < std::abs(a.staged_over_n2 - 0.26));
  if (b.exact_over_n2) CHECK(std::abs(*b.exact_over_n2 - 0.26) < std::abs(*a.exact_over_n2 - 0.26));
}

TEST_CASE("coverage check") {
  const auto cx = resolve_counterexample({1, 10, 1});
  const auto rep = coverage_bound_check(counterexample_graph(cx), 0.01);
  CHECK(rep.applicable);
  CHECK(rep.msvc_exact);
  CHECK(rep.best_half_cover == 9.0);
  CHECK(rep.required == doctest::Approx(9.0));
  CHECK(rep.holds);

  const WeightedGraph k4(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  const auto vac = coverage_bound_check(k4, 0.01);
  CHECK_FALSE(vac.applicable);
  CHECK(vac.holds);

  const WeightedGraph two(4, {{0, 1, 1}, {2, 3, 1}});
  const auto ok = coverage_bound_check(two, 0.0);
  CHECK(ok.applicable);
  CHECK(ok.best_half_cover == 2.0);
  CHECK(ok.holds);
  CHECK(ok.margin >= 0.0);

  const auto supplied = coverage_bound_check(two, 0.0, msvc_exact_dp(two).value);
  CHECK_FALSE(supplied.msvc_exact);
  CHECK(supplied.applicable);

  CHECK_THROWS_AS(coverage_bound_check(WeightedGraph(4, {{0, 1, 1}, {1, 2, 1}}), 0.0), DomainError);
  CHECK_THROWS_AS(coverage_bound_check(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}), 0.0), DomainError);
  CHECK_THROWS_AS(coverage_bound_check(two, 0.3), DomainError);
}
