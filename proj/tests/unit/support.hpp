#pragma once

#include <string>
#include <vector>

#include "msvc/graph.hpp"
#include "msvc/rng.hpp"

namespace testing {

/// Random simple graph on n vertices; each pair is an edge with probability p.
/// Weights are 1, or multiples of 1/8 in (0, 2] when `dyadic`, so every sum
/// the solvers form is exact in binary floating point.
inline msvc::WeightedGraph random_graph(msvc::Rng& rng, msvc::Vertex n, double p, bool dyadic) {
  std::vector<msvc::Edge> edges;
  for (msvc::Vertex u = 0; u < n; ++u) {
    for (msvc::Vertex v = u + 1; v < n; ++v) {
      if (!rng.bernoulli(p)) continue;
      const double w = dyadic ? static_cast<double>(1 + rng.below(16)) / 8.0 : 1.0;
      edges.push_back({u, v, w});
    }
  }
  return msvc::WeightedGraph(n, std::move(edges));
}

inline std::string data_path(const std::string& name) { return std::string(MSVC_DATA_DIR) + "/" + name; }

}  // namespace testing
