#include "msvc/solvers.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>

#include "msvc/error.hpp"
#include "msvc/rng.hpp"

namespace msvc {

namespace {

// Dense symmetric weight matrix; parallel edges are summed.
std::vector<double> weight_matrix(const WeightedGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<double> w(n * n, 0.0);
  for (const Edge& e : g.edges()) {
    w[e.u * n + e.v] += e.w;
    w[e.v * n + e.u] += e.w;
  }
  return w;
}

SolveResult finish(const WeightedGraph& g, std::vector<Vertex> perm, std::string method) {
  SolveResult r;
  r.ordering = Ordering(std::move(perm));
  r.value = svc_value(g, r.ordering);
  r.method = std::move(method);
  return r;
}

// Greedy visiting with incremental gains. A vertex's gain is the uncovered
// weight on its edges; the set keeps (-gain, id) so begin() is the choice.
class GreedyState {
 public:
  explicit GreedyState(const WeightedGraph& g)
      : g_(g), adj_(g.adjacency()), gain_(g.incident_weights()), covered_(g.edge_count(), false),
        visited_(g.vertex_count(), false) {}

  void visit(Vertex v, std::vector<Vertex>& out) {
    visited_[v] = true;
    out.push_back(v);
    for (auto [u, idx] : adj_[v]) {
      if (covered_[idx]) continue;
      covered_[idx] = true;
      const double w = g_.edge(idx).w;
      gain_[v] -= w;
      if (!visited_[u]) update(u, gain_[u] - w);
    }
  }

  /// Greedily visits every vertex in `pool` (unvisited ones only).
  void run(const std::vector<Vertex>& pool, std::vector<Vertex>& out) {
    queue_.clear();
    in_queue_.assign(g_.vertex_count(), false);
    for (Vertex v : pool) {
      if (visited_[v]) continue;
      queue_.insert({-gain_[v], v});
      in_queue_[v] = true;
    }
    while (!queue_.empty()) {
      const Vertex v = queue_.begin()->second;
      queue_.erase(queue_.begin());
      in_queue_[v] = false;
      visit(v, out);
    }
  }

 private:
  void update(Vertex u, double g) {
    if (in_queue_.size() == gain_.size() && in_queue_[u]) {
      queue_.erase({-gain_[u], u});
      gain_[u] = g;
      queue_.insert({-gain_[u], u});
    } else {
      gain_[u] = g;
    }
  }

  const WeightedGraph& g_;
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj_;
  std::vector<double> gain_;
  std::vector<bool> covered_;
  std::vector<bool> visited_;
  std::vector<bool> in_queue_;
  std::set<std::pair<double, Vertex>> queue_;
};

}  // namespace

SolveResult msvc_exact_dp(const WeightedGraph& g) {
  const Vertex n = g.vertex_count();
  if (n > kMaxDpVertices) {
    throw BudgetExceeded("exact DP supports at most 24 vertices, got " + std::to_string(n));
  }
  if (n == 0) return finish(g, {}, "exact-dp");
  const auto N = static_cast<std::size_t>(n);
  const auto w = weight_matrix(g);
  const std::size_t full = (std::size_t{1} << N) - 1;

  // uncovered[S]: weight of edges with both endpoints outside S.
  // cost[S]: cheapest way to visit exactly S first, counting for each step
  // the weight still uncovered before it.
  std::vector<double> uncovered(full + 1);
  std::vector<double> cost(full + 1);
  std::vector<std::uint8_t> last(full + 1, 0);
  uncovered[0] = g.total_weight();
  cost[0] = 0.0;
  for (std::size_t s = 1; s <= full; ++s) {
    const auto low = static_cast<std::size_t>(std::countr_zero(s));
    const std::size_t rest = s & (s - 1);
    double lost = 0.0;
    for (std::size_t u = 0; u < N; ++u) {
      if (!((s >> u) & 1U)) lost += w[low * N + u];
    }
    uncovered[s] = uncovered[rest] - lost;

    double best = std::numeric_limits<double>::infinity();
    std::uint8_t arg = 0;
    for (std::size_t bits = s; bits != 0; bits &= bits - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(bits));
      const std::size_t prev = s & ~(std::size_t{1} << v);
      const double c = cost[prev] + uncovered[prev];
      if (c < best) {
        best = c;
        arg = static_cast<std::uint8_t>(v);
      }
    }
    cost[s] = best;
    last[s] = arg;
  }

  std::vector<Vertex> perm(N);
  std::size_t s = full;
  for (std::size_t i = N; i-- > 0;) {
    perm[i] = last[s];
    s &= ~(std::size_t{1} << last[s]);
  }
  return finish(g, std::move(perm), "exact-dp");
}

SolveResult msvc_bruteforce(const WeightedGraph& g) {
  const Vertex n = g.vertex_count();
  if (n > kMaxBruteVertices) {
    throw BudgetExceeded("brute force supports at most 8 vertices, got " + std::to_string(n));
  }
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Vertex> best = perm;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pos(n);
  do {
    for (Vertex i = 0; i < n; ++i) pos[perm[i]] = static_cast<std::size_t>(i);
    double value = 0.0;
    for (const Edge& e : g.edges()) value += e.w * static_cast<double>(std::min(pos[e.u], pos[e.v]) + 1);
    if (value < best_value) {
      best_value = value;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return finish(g, std::move(best), "brute");
}

SolveResult msvc_greedy(const WeightedGraph& g) {
  std::vector<Vertex> all(g.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Vertex> perm;
  perm.reserve(all.size());
  GreedyState state(g);
  state.run(all, perm);
  return finish(g, std::move(perm), "greedy");
}

SolveResult msvc_random(const WeightedGraph& g, std::uint64_t seed) {
  std::vector<Vertex> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<Vertex>(perm));
  return finish(g, std::move(perm), "random(" + std::to_string(seed) + ")");
}

namespace {

struct KvcSearch {
  const WeightedGraph& g;
  const std::vector<std::vector<std::pair<Vertex, std::size_t>>>& adj;
  std::size_t k;
  std::vector<bool> in;
  std::vector<Vertex> chosen;
  double best = -1.0;
  std::vector<Vertex> best_set;

  void run(Vertex next, double covered) {
    if (chosen.size() == k) {
      if (covered > best) {
        best = covered;
        best_set = chosen;
      }
      return;
    }
    const Vertex n = g.vertex_count();
    for (Vertex v = next; v <= n - static_cast<Vertex>(k - chosen.size()); ++v) {
      double add = 0.0;
      for (auto [u, idx] : adj[v]) {
        if (!in[u]) add += g.edge(idx).w;
      }
      in[v] = true;
      chosen.push_back(v);
      run(v + 1, covered + add);
      chosen.pop_back();
      in[v] = false;
    }
  }
};

KvcResult kvc_local_search(const WeightedGraph& g, std::size_t k, const KvcMode& mode) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const auto adj = g.adjacency();
  Rng rng(mode.seed);
  KvcResult best;
  best.covered = -1.0;
  best.exact = false;
  std::vector<Vertex> pool(n);
  std::vector<bool> in(n);
  std::vector<double> outside(n);  // weight from v to vertices outside S
  std::vector<double> to_a(n, 0.0);
  const std::uint32_t restarts = std::max<std::uint32_t>(mode.restarts, 1);
  for (std::uint32_t r = 0; r < restarts; ++r) {
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    std::fill(in.begin(), in.end(), false);
    for (std::size_t i = 0; i < k; ++i) in[pool[i]] = true;

    while (true) {
      for (std::size_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (auto [u, idx] : adj[v]) {
          if (!in[u]) s += g.edge(idx).w;
        }
        outside[v] = s;
      }
      // Swapping a (in S) for b (outside): delta = outside[b] - outside[a] + w(a,b).
      double best_delta = 1e-12;
      Vertex best_a = -1, best_b = -1;
      for (std::size_t a = 0; a < n; ++a) {
        if (!in[a]) continue;
        for (auto [u, idx] : adj[a]) to_a[u] += g.edge(idx).w;
        for (std::size_t b = 0; b < n; ++b) {
          if (in[b]) continue;
          const double delta = outside[b] - outside[a] + to_a[b];
          if (delta > best_delta) {
            best_delta = delta;
            best_a = static_cast<Vertex>(a);
            best_b = static_cast<Vertex>(b);
          }
        }
        for (auto [u, idx] : adj[a]) to_a[u] = 0.0;
      }
      if (best_a < 0) break;
      in[best_a] = false;
      in[best_b] = true;
    }
    const double cov = covered_weight(g, in);
    if (cov > best.covered) {
      best.covered = cov;
      best.subset.clear();
      for (std::size_t v = 0; v < n; ++v) {
        if (in[v]) best.subset.push_back(static_cast<Vertex>(v));
      }
    }
  }
  return best;
}

}  // namespace

KvcResult max_kvc(const WeightedGraph& g, std::size_t k, KvcMode mode) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (k > n) throw DomainError("subset size " + std::to_string(k) + " exceeds vertex count " + std::to_string(n));
  if (mode.kind == KvcMode::Kind::local_search) return kvc_local_search(g, k, mode);
  if (binomial(n, k) > kExhaustiveSubsetBudget) {
    throw BudgetExceeded("C(" + std::to_string(n) + "," + std::to_string(k) +
                         ") exceeds the exhaustive budget of 10^7 subsets");
  }
  const auto adj = g.adjacency();
  KvcSearch search{g, adj, k, std::vector<bool>(n, false), {}, -1.0, {}};
  search.chosen.reserve(k);
  search.run(0, 0.0);
  return {std::move(search.best_set), search.best, true};
}

SolveResult flt_two_phase(const WeightedGraph& g, KvcMode mode) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const KvcResult first = max_kvc(g, n / 2, mode);
  std::vector<bool> in(n, false);
  for (Vertex v : first.subset) in[v] = true;
  std::vector<Vertex> rest;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in[v]) rest.push_back(static_cast<Vertex>(v));
  }
  std::vector<Vertex> perm;
  perm.reserve(n);
  GreedyState state(g);
  state.run(first.subset, perm);
  state.run(rest, perm);
  SolveResult two = finish(g, std::move(perm), "two-phase");
  SolveResult greedy = msvc_greedy(g);
  if (greedy.value < two.value) {
    two.ordering = std::move(greedy.ordering);
    two.value = greedy.value;
  }
  return two;
}

}  // namespace msvc
