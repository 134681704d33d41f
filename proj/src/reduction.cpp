#include "msvc/reduction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "msvc/error.hpp"
#include "msvc/rng.hpp"
#include "text_io.hpp"

namespace msvc {

AffineUGInstance::AffineUGInstance(int L, std::int32_t u_count, std::int32_t v_count, std::vector<UGEdge> edges)
    : L_(L), u_count_(u_count), v_count_(v_count), edges_(std::move(edges)) {
  if (L < 1) throw DomainError("alphabet size must be at least 1");
  if (u_count < 0 || v_count < 0) throw DomainError("side sizes must be non-negative");
  std::vector<int> du(u_count, 0), dv(v_count, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const UGEdge& e = edges_[i];
    if (e.u < 0 || e.u >= u_count || e.v < 0 || e.v >= v_count) {
      throw DomainError("constraint " + std::to_string(i) + " has an endpoint out of range");
    }
    if (e.c < 0 || e.c >= L) throw DomainError("constraint " + std::to_string(i) + " has a shift outside Z_L");
    ++du[e.u];
    ++dv[e.v];
  }
  const auto uniform = [](const std::vector<int>& d) {
    return std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end();
  };
  if (!uniform(du)) throw DomainError("constraint graph is not regular on the left side");
  if (!uniform(dv)) throw DomainError("constraint graph is not regular on the right side");
  du_ = du.empty() ? 0 : du.front();
  dv_ = dv.empty() ? 0 : dv.front();
}

namespace {

void check_labeling(const AffineUGInstance& ug, const UGLabeling& z) {
  const auto need = static_cast<std::size_t>(ug.u_count()) + static_cast<std::size_t>(ug.v_count());
  if (z.size() != need) {
    throw DomainError("labeling has " + std::to_string(z.size()) + " entries, expected " + std::to_string(need));
  }
  for (auto label : z) {
    if (label < 0 || label >= ug.alphabet()) throw DomainError("label " + std::to_string(label) + " outside Z_L");
  }
}

int mod(long long a, int L) {
  const auto r = static_cast<int>(a % L);
  return r < 0 ? r + L : r;
}

// Bit j of the result is bit (j - c mod L) of x.
std::uint32_t rotate(std::uint32_t x, int c, int L) {
  if (c == 0) return x;
  const std::uint32_t mask = (L == 32) ? ~0U : ((1U << L) - 1U);
  return ((x << c) | (x >> (L - c))) & mask;
}

// nu^{(x)L}(X, Y) depends only on the Hamming distance of X and Y.
std::vector<double> weight_table(Correlation rho, int L) {
  const double same = (1.0 + rho.value()) / 4.0;
  const double diff = (1.0 - rho.value()) / 4.0;
  std::vector<double> tab(L + 1);
  for (int h = 0; h <= L; ++h) tab[h] = std::pow(same, L - h) * std::pow(diff, h);
  return tab;
}

std::vector<std::vector<std::size_t>> edges_by_u(const AffineUGInstance& ug) {
  std::vector<std::vector<std::size_t>> at(ug.u_count());
  for (std::size_t i = 0; i < ug.edges().size(); ++i) at[ug.edges()[i].u].push_back(i);
  return at;
}

}  // namespace

double ug_value(const AffineUGInstance& ug, const UGLabeling& z) {
  check_labeling(ug, z);
  if (ug.edges().empty()) return 1.0;
  std::size_t ok = 0;
  for (const UGEdge& e : ug.edges()) {
    if (mod(static_cast<long long>(z[e.u]) - z[ug.u_count() + e.v], ug.alphabet()) == e.c) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(ug.edges().size());
}

UGLabeling shift_labeling(const UGLabeling& z, int a, int L) {
  UGLabeling out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = mod(static_cast<long long>(z[i]) + a, L);
  return out;
}

PerfectInstance perfect_circulant_ug(int L, std::int32_t side, int degree, std::uint64_t seed) {
  if (side < 1 || degree < 0 || degree > side) throw DomainError("circulant instance needs 0 <= degree <= side");
  if (L < 1) throw DomainError("alphabet size must be at least 1");
  Rng rng(seed);
  UGLabeling z(2 * static_cast<std::size_t>(side));
  for (auto& label : z) label = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(L)));
  std::vector<UGEdge> edges;
  for (std::int32_t u = 0; u < side; ++u) {
    for (int j = 0; j < degree; ++j) {
      const std::int32_t v = (u + j) % side;
      edges.push_back({u, v, mod(static_cast<long long>(z[u]) - z[side + v], L)});
    }
  }
  return {AffineUGInstance(L, side, side, std::move(edges)), std::move(z)};
}

LongCodeGraph build_long_code_graph(const AffineUGInstance& ug, Correlation rho) {
  const int L = ug.alphabet();
  if (L > kMaxLongCodeAlphabet) throw BudgetExceeded("long-code construction supports L <= 14, got " + std::to_string(L));
  if (!(rho.value() > -1.0 && rho.value() < 0.0)) throw DomainError("long-code construction requires -1 < rho < 0");
  const std::uint64_t cube = std::uint64_t{1} << L;
  const std::uint64_t blocks =
      static_cast<std::uint64_t>(ug.u_count()) * static_cast<std::uint64_t>(ug.u_degree()) * ug.u_degree();
  if (blocks > 0 && blocks > kMaxLongCodeEdges / (cube * cube)) {
    throw BudgetExceeded("long-code graph would exceed 2*10^7 edges");
  }
  if (static_cast<std::uint64_t>(ug.v_count()) * cube > static_cast<std::uint64_t>(std::numeric_limits<Vertex>::max())) {
    throw BudgetExceeded("long-code graph has too many vertices");
  }
  const auto tab = weight_table(rho, L);
  const auto n = static_cast<Vertex>(static_cast<std::uint64_t>(ug.v_count()) * cube);

  LongCodeGraph out;
  out.dropped_incident.assign(n, 0.0);
  std::vector<Edge> edges;
  edges.reserve(blocks * cube * cube);
  std::vector<std::uint32_t> ry(cube);
  for (const auto& incident : edges_by_u(ug)) {
    for (std::size_t i1 : incident) {
      for (std::size_t i2 : incident) {
        const UGEdge& e1 = ug.edges()[i1];
        const UGEdge& e2 = ug.edges()[i2];
        for (std::uint32_t y = 0; y < cube; ++y) ry[y] = rotate(y, e2.c, L);
        for (std::uint32_t x = 0; x < cube; ++x) {
          const std::uint32_t rx = rotate(x, e1.c, L);
          const Vertex a = long_code_vertex(e1.v, x, L);
          for (std::uint32_t y = 0; y < cube; ++y) {
            const double w = tab[std::popcount(rx ^ ry[y])];
            const Vertex b = long_code_vertex(e2.v, y, L);
            if (a == b) {
              ++out.dropped_loops;
              out.dropped_weight += w;
              out.dropped_incident[a] += 2.0 * w;
              continue;
            }
            edges.push_back({a, b, w});
          }
        }
      }
    }
  }
  out.graph = WeightedGraph(n, std::move(edges));
  return out;
}

Ordering completeness_ordering(const AffineUGInstance& ug, const UGLabeling& z) {
  check_labeling(ug, z);
  const int L = ug.alphabet();
  if (L > kMaxLongCodeAlphabet) throw BudgetExceeded("long-code construction supports L <= 14");
  const std::uint32_t cube = 1U << L;
  struct Key {
    std::uint32_t bits;
    std::int32_t v;
    std::uint32_t x;
  };
  std::vector<Key> keys;
  keys.reserve(static_cast<std::size_t>(ug.v_count()) * cube);
  for (std::int32_t v = 0; v < ug.v_count(); ++v) {
    const int zv = z[ug.u_count() + v];
    for (std::uint32_t x = 0; x < cube; ++x) {
      std::uint32_t bits = 0;
      for (int i = 1; i <= L; ++i) bits = (bits << 1) | ((x >> mod(zv + i, L)) & 1U);
      keys.push_back({bits, v, x});
    }
  }
  std::sort(keys.begin(), keys.end(),
            [](const Key& a, const Key& b) { return a.bits != b.bits ? a.bits < b.bits : a.v < b.v; });
  std::vector<Vertex> perm;
  perm.reserve(keys.size());
  for (const Key& k : keys) perm.push_back(long_code_vertex(k.v, k.x, L));
  return Ordering(std::move(perm));
}

ReductionReport verify_reduction(const WeightedGraph& g, const AffineUGInstance& ug, Correlation rho,
                                 double tolerance) {
  const int L = ug.alphabet();
  if (L > kMaxLongCodeAlphabet) throw BudgetExceeded("long-code construction supports L <= 14");
  const std::uint32_t cube = 1U << L;
  const auto tab = weight_table(rho, L);
  ReductionReport rep;
  const double du = ug.u_degree();
  const double dv = ug.v_degree();
  rep.expected_incident = du * dv * std::ldexp(1.0, 1 - L);
  rep.expected_total = static_cast<double>(ug.u_count()) * du * du;
  rep.unordered_total = static_cast<double>(ug.u_count()) * du * (du + 1.0) / 2.0;
  rep.vertex_count_ok = static_cast<std::uint64_t>(g.vertex_count()) == static_cast<std::uint64_t>(ug.v_count()) * cube;
  if (!rep.vertex_count_ok) return rep;

  // Loop mass straight from the instance: pairs of constraints at u that
  // land on the same right vertex.
  std::vector<double> incident(g.vertex_count(), 0.0);
  for (const auto& at : edges_by_u(ug)) {
    for (std::size_t i1 : at) {
      for (std::size_t i2 : at) {
        const UGEdge& e1 = ug.edges()[i1];
        const UGEdge& e2 = ug.edges()[i2];
        if (e1.v != e2.v) continue;
        for (std::uint32_t x = 0; x < cube; ++x) {
          const double w = tab[std::popcount(rotate(x, e1.c, L) ^ rotate(x, e2.c, L))];
          rep.loop_weight += w;
          incident[long_code_vertex(e1.v, x, L)] += 2.0 * w;
        }
      }
    }
  }
  for (const Edge& e : g.edges()) {
    incident[e.u] += e.w;
    incident[e.v] += e.w;
    double nearest = std::numeric_limits<double>::infinity();
    for (double t : tab) nearest = std::min(nearest, std::abs(e.w - t) / t);
    rep.max_weight_set_deviation = std::max(rep.max_weight_set_deviation, nearest);
  }
  const auto rel = [](double got, double want) {
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
  };
  for (double d : incident) rep.max_incident_deviation = std::max(rep.max_incident_deviation, rel(d, rep.expected_incident));
  rep.kept_total = g.total_weight();
  rep.total_deviation = rel(rep.kept_total + rep.loop_weight, rep.expected_total);
  rep.passes = rep.max_incident_deviation <= tolerance && rep.total_deviation <= tolerance &&
               rep.max_weight_set_deviation <= tolerance;
  return rep;
}

AffineUGInstance read_ug(std::string_view text) {
  detail::LineReader in(text);
  in.expect_header("msvc-ug");
  auto t = in.tokens_exact(4, "'L |U| |V| m'");
  const auto L = in.integer<std::int64_t>(t[0], "alphabet size");
  const auto nu = in.integer<std::int64_t>(t[1], "left side size");
  const auto nv = in.integer<std::int64_t>(t[2], "right side size");
  const auto m = in.integer<std::int64_t>(t[3], "constraint count");
  if (L < 1 || L > 30) in.fail("alphabet size must lie in [1, 30]");
  if (nu < 0 || nv < 0 || nu > std::numeric_limits<std::int32_t>::max() || nv > std::numeric_limits<std::int32_t>::max()) {
    in.fail("side size out of range");
  }
  if (m < 0) in.fail("negative constraint count");
  std::vector<UGEdge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    auto e = in.tokens_exact(3, "constraint 'u v c'");
    const auto u = in.integer<std::int64_t>(e[0], "left vertex id");
    const auto v = in.integer<std::int64_t>(e[1], "right vertex id");
    const auto c = in.integer<std::int64_t>(e[2], "shift");
    if (u < 0 || u >= nu) in.fail("left vertex id out of range");
    if (v < 0 || v >= nv) in.fail("right vertex id out of range");
    if (c < 0 || c >= L) in.fail("shift outside [0, L)");
    edges.push_back({static_cast<std::int32_t>(u), static_cast<std::int32_t>(v), static_cast<std::int32_t>(c)});
  }
  in.expect_end();
  try {
    return AffineUGInstance(static_cast<int>(L), static_cast<std::int32_t>(nu), static_cast<std::int32_t>(nv),
                            std::move(edges));
  } catch (const DomainError& err) {
    in.fail(err.what());
  }
}

std::string write_ug(const AffineUGInstance& ug) {
  std::string out = "msvc-ug 1\n" + std::to_string(ug.alphabet()) + " " + std::to_string(ug.u_count()) + " " +
                    std::to_string(ug.v_count()) + " " + std::to_string(ug.edges().size()) + "\n";
  for (const UGEdge& e : ug.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + std::to_string(e.c) + "\n";
  return out;
}

AffineUGInstance load_ug(const std::string& path) { return read_ug(detail::read_file(path)); }

UGLabeling read_labels(std::string_view text) {
  detail::LineReader in(text);
  in.expect_header("msvc-labels");
  const auto n = in.integer<std::int64_t>(in.tokens_exact(1, "'N'")[0], "label count");
  if (n < 0) in.fail("negative label count");
  UGLabeling z;
  z.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const auto label = in.integer<std::int64_t>(in.tokens_exact(1, "label")[0], "label");
    if (label < 0 || label > std::numeric_limits<std::int32_t>::max()) in.fail("label out of range");
    z.push_back(static_cast<std::int32_t>(label));
  }
  in.expect_end();
  return z;
}

std::string write_labels(const UGLabeling& z) {
  std::string out = "msvc-labels 1\n" + std::to_string(z.size()) + "\n";
  for (auto label : z) out += std::to_string(label) + "\n";
  return out;
}

UGLabeling load_labels(const std::string& path) { return read_labels(detail::read_file(path)); }

}  // namespace msvc
