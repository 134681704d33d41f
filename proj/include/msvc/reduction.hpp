#pragma once

// Long-code reduction from affine Unique Games to weighted MSVC instances.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "msvc/gaussian.hpp"
#include "msvc/graph.hpp"

namespace msvc {

/// Constraint x_u - x_v = c (mod L) between u in the left side and v in the right.
struct UGEdge {
  std::int32_t u;
  std::int32_t v;
  std::int32_t c;

  friend bool operator==(const UGEdge&, const UGEdge&) = default;
};

/// Biregular bipartite constraint multigraph with affine shifts.
class AffineUGInstance {
 public:
  AffineUGInstance() = default;
  /// Throws DomainError on bad ids or shifts, or when the instance is not
  /// biregular.
  AffineUGInstance(int L, std::int32_t u_count, std::int32_t v_count, std::vector<UGEdge> edges);

  int alphabet() const noexcept { return L_; }
  std::int32_t u_count() const noexcept { return u_count_; }
  std::int32_t v_count() const noexcept { return v_count_; }
  const std::vector<UGEdge>& edges() const noexcept { return edges_; }
  int u_degree() const noexcept { return du_; }
  int v_degree() const noexcept { return dv_; }

  friend bool operator==(const AffineUGInstance&, const AffineUGInstance&) = default;

 private:
  int L_ = 1;
  std::int32_t u_count_ = 0;
  std::int32_t v_count_ = 0;
  std::vector<UGEdge> edges_;
  int du_ = 0;
  int dv_ = 0;
};

/// One residue mod L per vertex: left side first, then right side.
using UGLabeling = std::vector<std::int32_t>;

/// Fraction of satisfied constraints; 1 for an instance without constraints.
double ug_value(const AffineUGInstance& ug, const UGLabeling& z);

/// z + a (mod L) on every vertex.
UGLabeling shift_labeling(const UGLabeling& z, int a, int L);

/// Circulant instance (v = u + j mod side for j < degree) whose shifts are
/// chosen so a seeded random labeling satisfies every constraint.
struct PerfectInstance {
  AffineUGInstance instance;
  UGLabeling labeling;
};
PerfectInstance perfect_circulant_ug(int L, std::int32_t side, int degree, std::uint64_t seed);

inline constexpr int kMaxLongCodeAlphabet = 14;
inline constexpr std::uint64_t kMaxLongCodeEdges = 20'000'000;

/// Vertex (v, x) gets id v * 2^L + x, with x_j the j-th bit of x.
inline Vertex long_code_vertex(std::int32_t v, std::uint32_t x, int L) {
  return static_cast<Vertex>((static_cast<std::int64_t>(v) << L) | x);
}

struct LongCodeGraph {
  WeightedGraph graph;
  /// Self-loops (v1 = v2 and x = y) are not representable and are dropped.
  std::uint64_t dropped_loops = 0;
  double dropped_weight = 0.0;
  /// Per vertex, twice the dropped loop weight (a loop counts at both ends).
  std::vector<double> dropped_incident;
};

/// For every u, every ordered pair (e1, e2) of edges at u (e1 = e2 included)
/// and every x, y: an edge v1^x -- v2^y of weight nu^{(x)L}(x o pi_e1, y o pi_e2).
/// Requires L <= 14, -1 < rho < 0 and at most 2*10^7 edges.
LongCodeGraph build_long_code_graph(const AffineUGInstance& ug, Correlation rho);

/// Sorts long-code vertices by (x_{z_1(v)}, ..., x_{z_L(v)}, v) with
/// z_i(v) = z(v) + i mod L, the first key most significant.
Ordering completeness_ordering(const AffineUGInstance& ug, const UGLabeling& z);

struct ReductionReport {
  double expected_incident = 0.0;        ///< D_u D_v 2^{1-L}
  double max_incident_deviation = 0.0;   ///< relative, loops counted back in
  double expected_total = 0.0;           ///< |U| D_u^2 (ordered pairs)
  double unordered_total = 0.0;          ///< |U| D_u (D_u + 1) / 2
  double kept_total = 0.0;
  double loop_weight = 0.0;              ///< recomputed from the instance
  double total_deviation = 0.0;          ///< relative
  double max_weight_set_deviation = 0.0; ///< relative distance to the nearest allowed value
  bool vertex_count_ok = false;
  bool passes = false;
};

/// Recomputes the regularity, total-weight and weight-set claims on `g`.
ReductionReport verify_reduction(const WeightedGraph& g, const AffineUGInstance& ug, Correlation rho,
                                 double tolerance = 1e-9);

// Text formats:
//   msvc-ug 1            msvc-labels 1
//   L |U| |V| m          N
//   u v c  (m lines)     label  (N lines, left side first)
AffineUGInstance read_ug(std::string_view text);
std::string write_ug(const AffineUGInstance& ug);
AffineUGInstance load_ug(const std::string& path);
UGLabeling read_labels(std::string_view text);
std::string write_labels(const UGLabeling& z);
UGLabeling load_labels(const std::string& path);

}  // namespace msvc
