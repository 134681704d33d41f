#include "msvc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "msvc/error.hpp"
#include "msvc/rng.hpp"
#include "text_io.hpp"

namespace msvc {

WeightedGraph::WeightedGraph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw DomainError("vertex count must be non-negative");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw DomainError("edge " + std::to_string(i) + " has a vertex id outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw DomainError("edge " + std::to_string(i) + " is a self-loop");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw DomainError("edge " + std::to_string(i) + " has a non-positive or non-finite weight");
    }
    total_ += e.w;
  }
}

std::vector<double> WeightedGraph::incident_weights() const {
  std::vector<double> d(n_, 0.0);
  for (const Edge& e : edges_) {
    d[e.u] += e.w;
    d[e.v] += e.w;
  }
  return d;
}

std::vector<std::vector<std::pair<Vertex, std::size_t>>> WeightedGraph::adjacency() const {
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    adj[edges_[i].u].emplace_back(edges_[i].v, i);
    adj[edges_[i].v].emplace_back(edges_[i].u, i);
  }
  return adj;
}

Ordering::Ordering(std::vector<Vertex> perm) : perm_(std::move(perm)) {
  std::vector<bool> seen(perm_.size(), false);
  for (Vertex v : perm_) {
    if (v < 0 || static_cast<std::size_t>(v) >= perm_.size()) {
      throw InvalidOrdering("ordering entry " + std::to_string(v) + " is out of range");
    }
    if (seen[v]) throw InvalidOrdering("ordering visits vertex " + std::to_string(v) + " twice");
    seen[v] = true;
  }
}

Ordering Ordering::identity(Vertex n) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  return Ordering(std::move(p));
}

std::vector<std::size_t> Ordering::positions() const {
  std::vector<std::size_t> pos(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) pos[perm_[i]] = i;
  return pos;
}

namespace {

void check_ordering(const WeightedGraph& g, const Ordering& order) {
  if (order.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw InvalidOrdering("ordering has " + std::to_string(order.size()) + " entries for a graph with " +
                          std::to_string(g.vertex_count()) + " vertices");
  }
}

}  // namespace

std::vector<std::size_t> cover_times(const WeightedGraph& g, const Ordering& order) {
  check_ordering(g, order);
  const auto pos = order.positions();
  std::vector<std::size_t> times;
  times.reserve(g.edge_count());
  for (const Edge& e : g.edges()) times.push_back(std::min(pos[e.u], pos[e.v]) + 1);
  return times;
}

double svc_value(const WeightedGraph& g, const Ordering& order) {
  const auto times = cover_times(g, order);
  double total = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) total += g.edge(i).w * static_cast<double>(times[i]);
  return total;
}

double svc_value_suffix(const WeightedGraph& g, const Ordering& order) {
  check_ordering(g, order);
  const auto adj = g.adjacency();
  std::vector<bool> covered(g.edge_count(), false);
  double uncovered = g.total_weight();
  double total = 0.0;
  for (std::size_t t = 0; t < order.size(); ++t) {
    total += uncovered;
    for (auto [nbr, idx] : adj[order.at(t)]) {
      if (!covered[idx]) {
        covered[idx] = true;
        uncovered -= g.edge(idx).w;
      }
    }
  }
  return total;
}

double inner_weight(const WeightedGraph& g, const std::vector<bool>& in_set) {
  double w = 0.0;
  for (const Edge& e : g.edges()) {
    if (in_set[e.u] && in_set[e.v]) w += e.w;
  }
  return w;
}

double covered_weight(const WeightedGraph& g, const std::vector<bool>& in_set) {
  double w = 0.0;
  for (const Edge& e : g.edges()) {
    if (in_set[e.u] || in_set[e.v]) w += e.w;
  }
  return w;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t f = n - k + i;
    if (r > UINT64_MAX / f) return UINT64_MAX;
    r = r * f / i;
  }
  return r;
}

namespace {

// Depth-first enumeration of k-subsets in lexicographic order, carrying the
// internal weight incrementally.
struct DensitySearch {
  const std::vector<std::vector<std::pair<Vertex, std::size_t>>>& adj;
  const WeightedGraph& g;
  std::size_t k;
  std::vector<bool> in;
  std::vector<Vertex> chosen;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vertex> best_set;
  std::uint64_t visited = 0;

  void run(Vertex next, double inner) {
    if (chosen.size() == k) {
      ++visited;
      if (inner < best) {
        best = inner;
        best_set = chosen;
      }
      return;
    }
    const Vertex n = g.vertex_count();
    for (Vertex v = next; v <= n - static_cast<Vertex>(k - chosen.size()); ++v) {
      double add = 0.0;
      for (auto [u, idx] : adj[v]) {
        if (in[u]) add += g.edge(idx).w;
      }
      in[v] = true;
      chosen.push_back(v);
      run(v + 1, inner + add);
      chosen.pop_back();
      in[v] = false;
    }
  }
};

}  // namespace

SubsetDensityReport min_subset_density(const WeightedGraph& g, std::size_t k, DensityMode mode) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (k > n) throw DomainError("subset size " + std::to_string(k) + " exceeds vertex count " + std::to_string(n));
  SubsetDensityReport rep;
  rep.k = k;
  rep.r = n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
  const double total = g.total_weight();
  const auto normalize = [total](double w) { return total > 0.0 ? w / total : 0.0; };

  if (mode.kind == DensityMode::Kind::exhaustive) {
    if (binomial(n, k) > kExhaustiveSubsetBudget) {
      throw BudgetExceeded("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds the exhaustive budget of 10^7 subsets");
    }
    const auto adj = g.adjacency();
    DensitySearch search{adj, g, k, std::vector<bool>(n, false), {}, std::numeric_limits<double>::infinity(), {}, 0};
    search.chosen.reserve(k);
    search.run(0, 0.0);
    rep.min_density = normalize(search.best);
    rep.witness = std::move(search.best_set);
    rep.subsets_checked = search.visited;
    rep.exhaustive = true;
    return rep;
  }

  if (mode.trials == 0) throw DomainError("sampled mode needs at least one trial");
  Rng rng(mode.seed);
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<bool> in(n, false);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t trial = 0; trial < mode.trials; ++trial) {
    // Partial Fisher-Yates: the first k entries form a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    std::fill(in.begin(), in.end(), false);
    for (std::size_t i = 0; i < k; ++i) in[pool[i]] = true;
    const double w = inner_weight(g, in);
    if (w < best) {
      best = w;
      rep.witness.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
  }
  std::sort(rep.witness.begin(), rep.witness.end());
  rep.min_density = normalize(best);
  rep.subsets_checked = mode.trials;
  rep.exhaustive = false;
  return rep;
}

WeightedGraph aggregate_parallel(const WeightedGraph& g) {
  std::map<std::pair<Vertex, Vertex>, double> merged;
  for (const Edge& e : g.edges()) merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
  std::vector<Edge> out;
  out.reserve(merged.size());
  for (const auto& [key, w] : merged) out.push_back({key.first, key.second, w});
  return WeightedGraph(g.vertex_count(), std::move(out));
}

WeightedGraph relabeled(const WeightedGraph& g, std::span<const Vertex> relabel) {
  if (relabel.size() != static_cast<std::size_t>(g.vertex_count())) throw DomainError("relabeling has the wrong length");
  Ordering check(std::vector<Vertex>(relabel.begin(), relabel.end()));
  std::vector<Edge> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.push_back({relabel[e.u], relabel[e.v], e.w});
  return WeightedGraph(g.vertex_count(), std::move(out));
}

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

WeightedGraph read_graph(std::string_view text) {
  detail::LineReader in(text);
  in.expect_header("msvc-graph");
  auto counts = in.tokens_exact(2, "'n m'");
  const auto n = in.integer<std::int64_t>(counts[0], "vertex count");
  const auto m = in.integer<std::int64_t>(counts[1], "edge count");
  if (n < 0 || n > std::numeric_limits<Vertex>::max()) in.fail("vertex count out of range");
  if (m < 0) in.fail("negative edge count");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    auto t = in.tokens_exact(3, "edge 'u v w'");
    const auto u = in.integer<std::int64_t>(t[0], "vertex id");
    const auto v = in.integer<std::int64_t>(t[1], "vertex id");
    const double w = in.real(t[2], "weight");
    if (u < 0 || v < 0) in.fail("negative vertex id");
    if (u >= n || v >= n) in.fail("vertex id >= n (" + std::to_string(n) + ")");
    if (u == v) in.fail("self-loop on vertex " + std::to_string(u));
    if (w < 0.0) in.fail("negative weight");
    if (!(w > 0.0) || !std::isfinite(w)) in.fail("weight must be positive and finite");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
  }
  in.expect_end();
  return WeightedGraph(static_cast<Vertex>(n), std::move(edges));
}

std::string write_graph(const WeightedGraph& g) {
  std::string out = "msvc-graph 1\n";
  out += std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + format_double(e.w) + "\n";
  }
  return out;
}

WeightedGraph load_graph(const std::string& path) { return read_graph(detail::read_file(path)); }

void save_graph(const WeightedGraph& g, const std::string& path) { detail::write_file(path, write_graph(g)); }

}  // namespace msvc
