#pragma once

// Vertex blow-up and the sampled regular gadgets that remove edge weights.

#include <cstdint>
#include <map>
#include <vector>

#include "msvc/graph.hpp"

namespace msvc {

struct BlowUp {
  WeightedGraph graph;
  Vertex m = 1;
  /// Original vertex v owns ids [v*m, v*m + m).
  Vertex block_begin(Vertex v) const { return v * m; }
  Vertex original(Vertex id) const { return id / m; }
};

/// Replaces each vertex by m copies and each edge by the m^2 edges between
/// the two blocks, keeping its weight.
BlowUp blow_up(const WeightedGraph& g, Vertex m);

struct GadgetSpec {
  int m = 0;
  double w = 0.0;
  double eps = 0.0;
  std::uint64_t seed = 0;
};

struct GadgetOptions {
  int attempts = 64;
  std::uint32_t verify_trials = 10'000;  ///< random subsets when m > 12
};

inline constexpr int kExhaustiveGadgetSide = 12;

/// Bipartite gadget between two sides of m vertices, d-regular with
/// d = (1+eps) w m.
struct Gadget {
  int m = 0;
  int degree = 0;
  std::vector<std::pair<int, int>> edges;  ///< (left, right), row-major order
  int attempt = 0;                         ///< 0-based attempt that succeeded
  std::uint64_t resamples = 0;             ///< local resampling rounds in that attempt
  std::uint64_t added = 0;                 ///< edges beyond the resampled Bernoulli graph
  std::uint64_t removed = 0;               ///< edges of that graph dropped during repair
  double added_bound = 0.0;                ///< 2 eps w m^2
  double max_deviation = 0.0;              ///< max |e(S_u,S_v) - w|S_u||S_v||
  double bound_3eps = 0.0;                 ///< 3 eps m^2 w
  double bound_2eps = 0.0;                 ///< 2 eps m^2 w
  bool exhaustive = true;
  std::uint64_t subsets_checked = 0;
};

/// Smallest m for which the union of the subset and degree Hoeffding bounds
/// drops below one.
int hoeffding_min_m(double w, double eps);

/// Samples Bernoulli(w) edges, locally resamples out-of-window vertices,
/// repairs what remains, pads to exact regularity and verifies the
/// subset-deviation bound. ParameterError when the spec is unrealizable,
/// SamplingFailure when every attempt fails.
Gadget sample_gadget(const GadgetSpec& spec, const GadgetOptions& opt = {});

struct UnweightResult {
  WeightedGraph graph;  ///< unit weights, n*m vertices
  Vertex m = 1;
  std::vector<Gadget> gadgets;  ///< one per edge of the input, edge lists cleared
  std::map<std::int64_t, std::uint64_t> degree_histogram;
  std::int64_t degree_spread = 0;
};

/// Blows up by m and replaces every block by a gadget seeded with
/// derive_seed(seed, edge index). Work is spread over `threads` workers
/// without affecting the output.
UnweightResult unweight(const WeightedGraph& g, int m, double eps, std::uint64_t seed,
                        const GadgetOptions& opt = {}, unsigned threads = 1);

}  // namespace msvc
