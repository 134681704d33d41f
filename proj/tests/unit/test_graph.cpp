#include "doctest.h"
#include "msvc/error.hpp"
#include "msvc/graph.hpp"
#include "support.hpp"

using namespace msvc;

namespace {

WeightedGraph triangle() { return WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

}  // namespace

TEST_CASE("svc value of a triangle under the identity ordering") {
  const auto g = triangle();
  CHECK(svc_value(g, Ordering::identity(3)) == 4.0);
  CHECK(svc_value_suffix(g, Ordering::identity(3)) == 4.0);
  const auto times = cover_times(g, Ordering({2, 0, 1}));
  CHECK(times == std::vector<std::size_t>{2, 1, 1});
}

TEST_CASE("both svc evaluations agree on random weighted graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_graph(rng, 2 + static_cast<Vertex>(rng.below(12)), 0.4, true);
    std::vector<Vertex> perm(g.vertex_count());
    for (Vertex i = 0; i < g.vertex_count(); ++i) perm[i] = i;
    rng.shuffle(std::span<Vertex>(perm));
    const Ordering o(perm);
    CHECK(svc_value(g, o) == svc_value_suffix(g, o));
  }
}

TEST_CASE("orderings must be permutations of the vertex set") {
  CHECK_THROWS_AS(Ordering({0, 0, 1}), InvalidOrdering);
  CHECK_THROWS_AS(Ordering({0, 3, 1}), InvalidOrdering);
  CHECK_THROWS_AS(svc_value(triangle(), Ordering::identity(2)), InvalidOrdering);
  CHECK(Ordering({2, 0, 1}).positions() == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("graph construction rejects bad edges") {
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 1}}), DomainError);
  CHECK_THROWS_AS(WeightedGraph(2, {{1, 1, 1}}), DomainError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 0}}), DomainError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, -1}}), DomainError);
  const WeightedGraph par(2, {{0, 1, 0.5}, {1, 0, 0.25}});
  CHECK(par.edge_count() == 2);
  CHECK(par.total_weight() == 0.75);
  CHECK(par.incident_weights() == std::vector<double>{0.75, 0.75});
}

TEST_CASE("graph text format round-trips") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_graph(rng, 1 + static_cast<Vertex>(rng.below(10)), 0.5, true);
    CHECK(read_graph(write_graph(g)) == g);
  }
  const WeightedGraph odd(2, {{0, 1, 0.1}, {0, 1, 1.0 / 3.0}});
  CHECK(read_graph(write_graph(odd)) == odd);
  CHECK(read_graph("msvc-graph 1\r\n2 1\r\n0 1 2.5\r\n\n").total_weight() == 2.5);
}

TEST_CASE("graph parse errors carry line numbers") {
  const auto line_of = [](const char* text) {
    try {
      read_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{999};
  };
  CHECK(line_of("msvc-graph 2\n0 0\n") == 1);
  CHECK(line_of("msvc-graph 1\n3\n") == 2);
  CHECK(line_of("msvc-graph 1\n3 2\n0 1 1\n0 7 1\n") == 4);
  CHECK(line_of("msvc-graph 1\n3 1\n0 1 -2\n") == 3);
  CHECK(line_of("msvc-graph 1\n3 1\n1 1 1\n") == 3);
  CHECK(line_of("msvc-graph 1\n3 1\n0 1 x\n") == 3);
  CHECK(line_of("msvc-graph 1\n3 2\n0 1 1\n") == 4);
  CHECK(line_of("msvc-graph 1\n3 1\n0 1 1\n0 2 1\n") == 4);
  CHECK_THROWS_AS(load_graph("/nonexistent/graph"), Error);
}

TEST_CASE("min subset density") {
  // Path 0-1-2-3: the best 2-subset {0,2} spans nothing.
  const WeightedGraph path(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  const auto rep = min_subset_density(path, 2);
  CHECK(rep.min_density == 0.0);
  CHECK(rep.witness == std::vector<Vertex>{0, 2});
  CHECK(rep.subsets_checked == 6);
  CHECK(rep.r == 0.5);
  const auto full = min_subset_density(path, 4);
  CHECK(full.min_density == 1.0);
  CHECK_THROWS_AS(min_subset_density(path, 5), DomainError);

  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = testing::random_graph(rng, 10, 0.5, true);
    const auto exact = min_subset_density(g, 4);
    const auto est = min_subset_density(g, 4, DensityMode::sampled(50, trial));
    CHECK_FALSE(est.exhaustive);
    CHECK(est.min_density >= exact.min_density);
    std::vector<bool> in(10, false);
    for (Vertex v : exact.witness) in[v] = true;
    CHECK(inner_weight(g, in) / g.total_weight() == doctest::Approx(exact.min_density).epsilon(1e-15));
  }
  const WeightedGraph big(60, {{0, 1, 1}});
  CHECK_THROWS_AS(min_subset_density(big, 30), BudgetExceeded);
}

TEST_CASE("binomial saturates") {
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ULL);
  CHECK(binomial(200, 100) == UINT64_MAX);
}

TEST_CASE("aggregation and relabeling") {
  const WeightedGraph par(3, {{0, 1, 0.5}, {1, 0, 0.25}, {1, 2, 1}});
  const auto agg = aggregate_parallel(par);
  CHECK(agg.edge_count() == 2);
  CHECK(agg.edge(0) == Edge{0, 1, 0.75});
  const std::vector<Vertex> map{2, 0, 1};
  const auto r = relabeled(par, map);
  CHECK(r.edge(2) == Edge{0, 1, 1});
  CHECK(svc_value(r, Ordering({2, 0, 1})) == svc_value(par, Ordering::identity(3)));
  const std::vector<Vertex> bad{0, 0, 1};
  CHECK_THROWS_AS(relabeled(par, bad), InvalidOrdering);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
