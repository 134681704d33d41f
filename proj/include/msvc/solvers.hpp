#pragma once

// Exact and heuristic Minimum Sum Vertex Cover solvers, plus Max-k-Vertex-Cover.

#include <cstdint>
#include <string>
#include <vector>

#include "msvc/graph.hpp"

namespace msvc {

struct SolveResult {
  double value = 0.0;
  Ordering ordering;
  /// exact-dp | brute | greedy | two-phase | random(<seed>)
  std::string method;
};

inline constexpr Vertex kMaxDpVertices = 24;
inline constexpr Vertex kMaxBruteVertices = 8;

/// Subset DP over all 2^n visited sets. BudgetExceeded for n > 24.
SolveResult msvc_exact_dp(const WeightedGraph& g);

/// Minimum over all n! orderings. BudgetExceeded for n > 8.
SolveResult msvc_bruteforce(const WeightedGraph& g);

/// Repeatedly visits the vertex covering the most uncovered weight; ties go
/// to the lowest id.
SolveResult msvc_greedy(const WeightedGraph& g);

/// Uniformly random ordering.
SolveResult msvc_random(const WeightedGraph& g, std::uint64_t seed);

struct KvcMode {
  enum class Kind { exact, local_search } kind = Kind::exact;
  std::uint32_t restarts = 16;
  std::uint64_t seed = 0;

  static KvcMode exact_mode() { return {}; }
  static KvcMode local_search(std::uint32_t restarts, std::uint64_t seed) {
    return {Kind::local_search, restarts, seed};
  }
};

struct KvcResult {
  std::vector<Vertex> subset;  ///< sorted ascending
  double covered = 0.0;        ///< w(S, V)
  bool exact = true;
};

/// k-subset maximizing covered weight. Exact mode needs C(n,k) <= 10^7 and
/// returns the lexicographically first maximizer.
KvcResult max_kvc(const WeightedGraph& g, std::size_t k, KvcMode mode = {});

/// Visits a Max-(n/2)-VC solution first (greedy order inside it), then the
/// rest greedily. Returns this or msvc_greedy, whichever is cheaper.
SolveResult flt_two_phase(const WeightedGraph& g, KvcMode mode = {});

}  // namespace msvc
