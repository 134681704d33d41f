#include <cmath>
#include <set>

#include "doctest.h"
#include "msvc/error.hpp"
#include "msvc/reduction.hpp"
#include "msvc/solvers.hpp"
#include "msvc/unweighting.hpp"
#include "support.hpp"

using namespace msvc;

TEST_CASE("blow-up shape") {
  const WeightedGraph edge(2, {{0, 1, 1}});
  const auto b = blow_up(edge, 2);
  CHECK(b.graph.vertex_count() == 4);
  CHECK(b.graph.edge_count() == 4);
  CHECK(b.graph.total_weight() == 4.0);
  CHECK(b.original(3) == 1);
  CHECK(b.block_begin(1) == 2);
  CHECK(blow_up(edge, 1).graph == edge);
  CHECK_THROWS_AS(blow_up(edge, 0), DomainError);
}

TEST_CASE("blow-up does not raise the normalized optimum") {
  const WeightedGraph k3(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  const auto b = blow_up(k3, 3);
  const double small = msvc_exact_dp(k3).value / (3.0 * k3.total_weight());
  const double big = msvc_exact_dp(b.graph).value / (9.0 * b.graph.total_weight());
  CHECK(big <= small + 1e-9);
}

TEST_CASE("blow-up preserves densities of block unions") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = testing::random_graph(rng, 6, 0.6, true);
    const Vertex m = 3;
    const auto b = blow_up(g, m);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      std::vector<bool> in(6), big(18);
      for (Vertex v = 0; v < 6; ++v) {
        in[v] = (mask >> v) & 1U;
        for (Vertex i = 0; i < m; ++i) big[b.block_begin(v) + i] = in[v];
      }
      CHECK(inner_weight(b.graph, big) == m * m * inner_weight(g, in));
    }
  }
}

TEST_CASE("density transfer at sub-block granularity") {
  // Exhaustive over all |S'| = k|V'|/n with n*m = 20, against the coarse
  // density function shifted by its measured modulus on the 1/n grid.
  Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = testing::random_graph(rng, 5, 0.7, true);
    if (g.edge_count() == 0) continue;
    const auto b = blow_up(g, 4);
    std::vector<double> coarse;
    for (std::size_t k = 0; k <= 5; ++k) coarse.push_back(min_subset_density(g, k).min_density);
    double modulus = 0.0;
    for (std::size_t k = 0; k < 5; ++k) modulus = std::max(modulus, coarse[k + 1] - coarse[k]);
    for (std::size_t k = 1; k < 5; ++k) {
      const double fine = min_subset_density(b.graph, 4 * k).min_density;
      CHECK(fine <= coarse[k] + 1e-12);
      CHECK(fine >= coarse[k] - modulus - 1e-9);
    }
  }
}

TEST_CASE("hoeffding minimal side") {
  const int m = hoeffding_min_m(0.5, 0.25);
  CHECK(m > 0);
  const double e = 0.25 * 0.5;
  CHECK(2 * e * e * m * m > (2.0 * m + 1) * std::log(2.0));
  CHECK(4.0 * m * std::exp(-2.0 * e * e * m) < 1.0);
  CHECK(hoeffding_min_m(0.5, 0.1) > m);
}

TEST_CASE("gadget at m=8, w=1/2, eps=1/4 is 5-regular") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto gd = sample_gadget({8, 0.5, 0.25, seed});
    CHECK(gd.degree == 5);
    CHECK(gd.edges.size() == 40);
    std::vector<int> dl(8), dr(8);
    std::set<std::pair<int, int>> seen;
    for (auto [l, r] : gd.edges) {
      ++dl[l];
      ++dr[r];
      CHECK(seen.insert({l, r}).second);
    }
    for (int i = 0; i < 8; ++i) {
      CHECK(dl[i] == 5);
      CHECK(dr[i] == 5);
    }
    CHECK(gd.exhaustive);
    CHECK(gd.subsets_checked == 256);
    CHECK(gd.max_deviation <= gd.bound_3eps);
    CHECK(gd.bound_3eps == doctest::Approx(3 * 0.25 * 64 * 0.5));
    CHECK(static_cast<double>(gd.added) <= gd.added_bound);
  }
}

TEST_CASE("gadget sampling is deterministic") {
  const auto a = sample_gadget({10, 0.5, 0.2, 1});
  const auto b = sample_gadget({10, 0.5, 0.2, 1});
  CHECK(a.edges == b.edges);
  CHECK(a.max_deviation == b.max_deviation);
  CHECK(a.degree == 6);
  CHECK(a.max_deviation <= a.bound_3eps);
  CHECK(sample_gadget({10, 0.5, 0.2, 2}).edges != a.edges);
}

TEST_CASE("forced complete gadget") {
  // (1 + 1/3) * 0.75 * 4 = 4 = m.
  const auto gd = sample_gadget({4, 0.75, 1.0 / 3.0, 3});
  CHECK(gd.edges.size() == 16);
  CHECK(gd.degree == 4);
}

TEST_CASE("sampled verification for larger gadgets") {
  GadgetOptions opt;
  opt.verify_trials = 500;
  const auto gd = sample_gadget({16, 0.5, 0.25, 4}, opt);
  CHECK_FALSE(gd.exhaustive);
  CHECK(gd.subsets_checked == 500);
  CHECK(gd.degree == 10);
}

TEST_CASE("unrealizable gadget parameters") {
  CHECK_THROWS_AS(sample_gadget({8, 0.5, 0.3, 0}), ParameterError);
  CHECK_THROWS_AS(sample_gadget({8, 0.5, 0.0, 0}), ParameterError);
  CHECK_THROWS_AS(sample_gadget({8, 1.0, 0.25, 0}), ParameterError);
  try {
    unweight(WeightedGraph(2, {{0, 1, 0.35}}), 8, 0.25, 0);
    FAIL("expected a parameter error");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("0.35") != std::string::npos);
  }
}

TEST_CASE("unweighting a single edge") {
  const auto res = unweight(WeightedGraph(2, {{0, 1, 0.5}}), 8, 0.25, 7);
  CHECK(res.graph.vertex_count() == 16);
  CHECK(res.graph.edge_count() == 40);
  CHECK(res.degree_spread == 0);
  CHECK(res.degree_histogram == std::map<std::int64_t, std::uint64_t>{{5, 16}});
  for (const auto& e : res.graph.edges()) CHECK(e.w == 1.0);
}

TEST_CASE("unweighting a reduction output is exactly regular") {
  const auto pi = perfect_circulant_ug(2, 2, 2, 0);
  const auto lc = build_long_code_graph(pi.instance, Correlation(-0.5));
  // Weights are 1/64, 3/64 and 9/64; with eps = 1/3 and m = 96 the target
  // degrees are 2, 6 and 18.
  GadgetOptions opt;
  opt.verify_trials = 200;
  const auto one = unweight(lc.graph, 96, 1.0 / 3.0, 5, opt, 1);
  const auto four = unweight(lc.graph, 96, 1.0 / 3.0, 5, opt, 4);
  CHECK(one.graph == four.graph);
  CHECK(one.degree_spread == 0);
  CHECK(one.degree_histogram.size() == 1);
  std::uint64_t expected_edges = 0;
  for (std::size_t e = 0; e < lc.graph.edge_count(); ++e) {
    const auto& gd = one.gadgets[e];
    CHECK(gd.max_deviation <= gd.bound_3eps);
    CHECK(gd.edges.empty());
    expected_edges += static_cast<std::uint64_t>(std::llround((4.0 / 3.0) * lc.graph.edge(e).w * 96 * 96));
  }
  CHECK(one.graph.edge_count() == expected_edges);
}
