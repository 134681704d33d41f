#pragma once

// Weighted multigraphs, vertex orderings and the Sum Vertex Cover objective.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace msvc {

using Vertex = std::int32_t;

struct Edge {
  Vertex u;
  Vertex v;
  double w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph with positive edge weights. Parallel edges are kept
/// distinct; self-loops are rejected. Immutable once constructed.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Throws DomainError on out-of-range ids, self-loops, or non-positive /
  /// non-finite weights.
  WeightedGraph(Vertex n, std::vector<Edge> edges);

  Vertex vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  /// Sum of all edge weights, W(E).
  double total_weight() const noexcept { return total_; }

  /// Incident weight W(v, N(v)) per vertex.
  std::vector<double> incident_weights() const;

  /// Adjacency as (neighbour, edge index) lists.
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adjacency() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  double total_ = 0.0;
};

/// A bijection step -> vertex. `at(i)` is the vertex visited at 0-based step i.
class Ordering {
 public:
  Ordering() = default;
  /// Throws InvalidOrdering unless `perm` is a permutation of {0..size-1}.
  explicit Ordering(std::vector<Vertex> perm);

  static Ordering identity(Vertex n);

  std::size_t size() const noexcept { return perm_.size(); }
  Vertex at(std::size_t step) const { return perm_[step]; }
  std::span<const Vertex> steps() const noexcept { return perm_; }
  /// Inverse map: 0-based step at which each vertex is visited.
  std::vector<std::size_t> positions() const;

  friend bool operator==(const Ordering&, const Ordering&) = default;

 private:
  std::vector<Vertex> perm_;
};

/// Per-edge cover times (1-indexed), in edge-list order.
std::vector<std::size_t> cover_times(const WeightedGraph& g, const Ordering& order);

/// SVC value: sum over edges of w_e * min(pos(u), pos(v)), positions 1-indexed.
double svc_value(const WeightedGraph& g, const Ordering& order);

/// The same value evaluated as sum_{t=0}^{n-1} of the weight still uncovered
/// after t steps.
double svc_value_suffix(const WeightedGraph& g, const Ordering& order);

/// Weight of edges with both endpoints in `in_set` (a membership mask).
double inner_weight(const WeightedGraph& g, const std::vector<bool>& in_set);

/// Weight of edges with at least one endpoint in `in_set`.
double covered_weight(const WeightedGraph& g, const std::vector<bool>& in_set);

struct SubsetDensityReport {
  std::size_t k = 0;
  double r = 0.0;            ///< k / n
  double min_density = 0.0;  ///< min of w(S,S) over checked subsets
  std::vector<Vertex> witness;
  bool exhaustive = true;    ///< false: seeded upper estimate of the minimum
  std::uint64_t subsets_checked = 0;
};

struct DensityMode {
  enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  static DensityMode exhaustive_mode() { return {}; }
  static DensityMode sampled(std::uint64_t trials, std::uint64_t seed) {
    return {Kind::sampled, trials, seed};
  }
};

inline constexpr std::uint64_t kExhaustiveSubsetBudget = 10'000'000;

/// Minimum normalized internal weight w(S,S) over k-subsets. Exhaustive mode
/// requires C(n,k) <= 10^7.
SubsetDensityReport min_subset_density(const WeightedGraph& g, std::size_t k,
                                       DensityMode mode = {});

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Merges parallel edges into one edge carrying their summed weight.
WeightedGraph aggregate_parallel(const WeightedGraph& g);

/// Relabels vertex v as relabel[v]; edges keep their order.
WeightedGraph relabeled(const WeightedGraph& g, std::span<const Vertex> relabel);

// Text format, LF-terminated:
//   msvc-graph 1
//   n m
//   u v w        (m lines, 0-based ids, decimal weight)
WeightedGraph read_graph(std::string_view text);
std::string write_graph(const WeightedGraph& g);
WeightedGraph load_graph(const std::string& path);
void save_graph(const WeightedGraph& g, const std::string& path);

/// Shortest decimal that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace msvc
