#include "msvc/unweighting.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <mutex>
#include <thread>

#include "msvc/error.hpp"
#include "msvc/rng.hpp"

namespace msvc {

BlowUp blow_up(const WeightedGraph& g, Vertex m) {
  if (m < 1) throw DomainError("blow-up factor must be at least 1");
  const auto n = static_cast<std::int64_t>(g.vertex_count()) * m;
  if (n > std::numeric_limits<Vertex>::max()) throw BudgetExceeded("blow-up vertex count overflows");
  const auto mm = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m);
  if (g.edge_count() > 0 && mm > 200'000'000ULL / g.edge_count()) throw BudgetExceeded("blow-up would exceed 2*10^8 edges");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * mm);
  for (const Edge& e : g.edges()) {
    for (Vertex i = 0; i < m; ++i) {
      for (Vertex j = 0; j < m; ++j) edges.push_back({e.u * m + i, e.v * m + j, e.w});
    }
  }
  return {WeightedGraph(static_cast<Vertex>(n), std::move(edges)), m};
}

int hoeffding_min_m(double w, double eps) {
  const double c = 2.0 * eps * eps * w * w;
  for (int m = 1; m < 100'000'000; ++m) {
    const double md = m;
    const bool subsets = c * md * md > (2.0 * md + 1.0) * std::log(2.0);
    const bool degrees = 4.0 * md * std::exp(-c * md) < 1.0;
    if (subsets && degrees) return m;
  }
  return std::numeric_limits<int>::max();
}

namespace {

int exact_degree(const GadgetSpec& spec) {
  if (spec.m < 1) throw ParameterError("gadget side m must be at least 1");
  if (!(spec.eps > 0.0 && spec.eps < 0.5)) throw ParameterError("gadget eps must lie in (0, 1/2)");
  if (!(spec.w > 0.0 && spec.w < 1.0)) {
    throw ParameterError("edge weight " + format_double(spec.w) + " must lie in (0, 1)");
  }
  const double d = (1.0 + spec.eps) * spec.w * spec.m;
  const double r = std::round(d);
  if (std::abs(d - r) > 1e-9) {
    throw ParameterError("edge weight " + format_double(spec.w) + ": target degree (1+eps)*w*m = " + format_double(d) +
                         " is not an integer");
  }
  if (r > spec.m) throw ParameterError("edge weight " + format_double(spec.w) + ": target degree exceeds m");
  return static_cast<int>(r);
}

// Dense bipartite graph between left 0..m-1 and right 0..m-1. Vertex ids in
// the degree array put the right side at m..2m-1.
class Bipartite {
 public:
  explicit Bipartite(int m) : m_(m), adj_(static_cast<std::size_t>(m) * m, 0), deg_(2 * m, 0) {}

  int m() const { return m_; }
  bool has(int i, int j) const { return adj_[idx(i, j)] != 0; }
  int degree(int v) const { return deg_[v]; }

  void set(int i, int j, bool on) {
    char& cell = adj_[idx(i, j)];
    if ((cell != 0) == on) return;
    cell = on ? 1 : 0;
    const int d = on ? 1 : -1;
    deg_[i] += d;
    deg_[m_ + j] += d;
  }

  // Other-side vertex k of vertex v, as a (left, right) pair.
  std::pair<int, int> pair_of(int v, int k) const { return v < m_ ? std::pair{v, k} : std::pair{k, v - m_}; }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * m_ + j; }
  int m_;
  std::vector<char> adj_;
  std::vector<int> deg_;
};

struct Attempt {
  std::uint64_t resamples = 0;
  std::uint64_t removed = 0;
};

bool repair(Bipartite& h, int lo, int hi, Attempt& st) {
  const int m = h.m();
  for (int pass = 0; pass < 8; ++pass) {
    bool clean = true;
    for (int v = 0; v < 2 * m; ++v) {
      // Over-full: drop edges to the fullest neighbours first.
      while (h.degree(v) > hi) {
        clean = false;
        int best = -1;
        for (int k = 0; k < m; ++k) {
          auto [i, j] = h.pair_of(v, k);
          if (!h.has(i, j)) continue;
          const int other = v < m ? m + k : k;
          if (best < 0 || h.degree(other) > h.degree(v < m ? m + best : best)) best = k;
        }
        auto [i, j] = h.pair_of(v, best);
        h.set(i, j, false);
        ++st.removed;
      }
      // Under-full: connect to the emptiest non-neighbours with room.
      while (h.degree(v) < lo) {
        clean = false;
        int best = -1;
        for (int k = 0; k < m; ++k) {
          auto [i, j] = h.pair_of(v, k);
          const int other = v < m ? m + k : k;
          if (h.has(i, j) || h.degree(other) >= hi) continue;
          if (best < 0 || h.degree(other) < h.degree(v < m ? m + best : best)) best = k;
        }
        if (best < 0) return false;
        auto [i, j] = h.pair_of(v, best);
        h.set(i, j, true);
      }
    }
    if (clean) return true;
  }
  return false;
}

// Adds edges until every vertex has degree exactly d. When the neediest left
// vertex is already joined to every deficient right vertex, one edge is
// rerouted through a third vertex.
bool pad(Bipartite& h, int d, Attempt& st) {
  const int m = h.m();
  while (true) {
    int i = -1;
    for (int a = 0; a < m; ++a) {
      if (h.degree(a) < d && (i < 0 || h.degree(a) < h.degree(i))) i = a;
    }
    if (i < 0) break;
    int j = -1;
    for (int b = 0; b < m; ++b) {
      if (h.degree(m + b) < d && !h.has(i, b) && (j < 0 || h.degree(m + b) < h.degree(m + j))) j = b;
    }
    if (j >= 0) {
      h.set(i, j, true);
      continue;
    }
    int jd = -1;
    for (int b = 0; b < m && jd < 0; ++b) {
      if (h.degree(m + b) < d) jd = b;
    }
    if (jd < 0) return false;
    bool rerouted = false;
    for (int i2 = 0; i2 < m && !rerouted; ++i2) {
      if (i2 == i || h.has(i2, jd)) continue;
      for (int j2 = 0; j2 < m; ++j2) {
        if (h.has(i2, j2) && !h.has(i, j2)) {
          h.set(i2, j2, false);
          h.set(i2, jd, true);
          h.set(i, j2, true);
          ++st.removed;
          rerouted = true;
          break;
        }
      }
    }
    if (!rerouted) return false;
  }
  for (int b = 0; b < m; ++b) {
    if (h.degree(m + b) != d) return false;
  }
  return true;
}

// Max over S_u of max over S_v of |e(S_u, S_v) - w |S_u||S_v||. For a fixed
// S_u the best S_v takes every right vertex whose excess has the right sign.
void verify(const Bipartite& h, double w, std::uint64_t seed, const GadgetOptions& opt, Gadget& out) {
  const int m = h.m();
  const int words = (m + 63) / 64;
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(m) * words, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (h.has(i, j)) cols[static_cast<std::size_t>(j) * words + i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  std::vector<std::uint64_t> s(words);
  const auto check = [&] {
    int size = 0;
    for (auto x : s) size += std::popcount(x);
    const double expect = w * size;
    double plus = 0.0, minus = 0.0;
    for (int j = 0; j < m; ++j) {
      int nj = 0;
      for (int k = 0; k < words; ++k) nj += std::popcount(cols[static_cast<std::size_t>(j) * words + k] & s[k]);
      const double diff = nj - expect;
      if (diff > 0) plus += diff; else minus -= diff;
    }
    out.max_deviation = std::max({out.max_deviation, plus, minus});
  };
  out.max_deviation = 0.0;
  if (m <= kExhaustiveGadgetSide) {
    out.exhaustive = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      s[0] = mask;
      check();
    }
    out.subsets_checked = std::uint64_t{1} << m;
  } else {
    out.exhaustive = false;
    Rng rng(seed);
    for (std::uint32_t t = 0; t < opt.verify_trials; ++t) {
      for (int k = 0; k < words; ++k) s[k] = rng.next();
      if (m % 64 != 0) s[words - 1] &= (std::uint64_t{1} << (m % 64)) - 1;
      check();
    }
    out.subsets_checked = opt.verify_trials;
  }
}

}  // namespace

Gadget sample_gadget(const GadgetSpec& spec, const GadgetOptions& opt) {
  const int d = exact_degree(spec);
  const int m = spec.m;
  const double wm = spec.w * m;
  const int lo = static_cast<int>(std::ceil((1.0 - spec.eps) * wm - 1e-9));
  const int hi = d;
  const std::uint64_t resample_cap = 32ULL * static_cast<std::uint64_t>(m);

  Gadget g;
  g.m = m;
  g.degree = d;
  g.added_bound = 2.0 * spec.eps * spec.w * m * m;
  g.bound_3eps = 3.0 * spec.eps * m * m * spec.w;
  g.bound_2eps = 2.0 * spec.eps * m * m * spec.w;
  std::string last_reason = "no attempt made";

  for (int a = 0; a < opt.attempts; ++a) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(a)));
    Bipartite h(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) h.set(i, j, rng.bernoulli(spec.w));
    }
    Attempt st;
    // Local resampling of the lowest-id vertex outside the degree window.
    while (st.resamples < resample_cap) {
      int bad = -1;
      for (int v = 0; v < 2 * m && bad < 0; ++v) {
        if (h.degree(v) < lo || h.degree(v) > hi) bad = v;
      }
      if (bad < 0) break;
      for (int k = 0; k < m; ++k) {
        auto [i, j] = h.pair_of(bad, k);
        h.set(i, j, rng.bernoulli(spec.w));
      }
      ++st.resamples;
    }
    std::vector<char> sampled(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) sampled[static_cast<std::size_t>(i) * m + j] = h.has(i, j) ? 1 : 0;
    }
    if (!repair(h, lo, hi, st)) {
      last_reason = "degree repair stalled";
      continue;
    }
    if (!pad(h, d, st)) {
      last_reason = "padding to exact degree stalled";
      continue;
    }
    std::uint64_t added = 0, removed = 0;
    g.edges.clear();
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const bool was = sampled[static_cast<std::size_t>(i) * m + j] != 0;
        if (h.has(i, j)) g.edges.emplace_back(i, j);
        if (h.has(i, j) && !was) ++added;
        if (!h.has(i, j) && was) ++removed;
      }
    }
    if (static_cast<double>(added) > g.added_bound + 1e-9) {
      last_reason = "added edges exceed 2*eps*w*m^2";
      continue;
    }
    verify(h, spec.w, derive_seed(spec.seed, 0x5eed0000ULL + static_cast<std::uint64_t>(a)), opt, g);
    if (g.max_deviation > g.bound_3eps + 1e-9) {
      last_reason = "subset deviation " + format_double(g.max_deviation) + " exceeds 3*eps*m^2*w";
      continue;
    }
    g.attempt = a;
    g.resamples = st.resamples;
    g.added = added;
    g.removed = removed;
    return g;
  }
  throw SamplingFailure("gadget sampling failed after " + std::to_string(opt.attempts) + " attempts (last: " +
                        last_reason + "); the Hoeffding bound suggests m >= " +
                        std::to_string(hoeffding_min_m(spec.w, spec.eps)) + " for w = " + format_double(spec.w) +
                        ", eps = " + format_double(spec.eps));
}

UnweightResult unweight(const WeightedGraph& g, int m, double eps, std::uint64_t seed, const GadgetOptions& opt,
                        unsigned threads) {
  if (m < 1) throw ParameterError("blow-up factor m must be at least 1");
  const auto n = static_cast<std::int64_t>(g.vertex_count()) * m;
  if (n > std::numeric_limits<Vertex>::max()) throw BudgetExceeded("unweighted graph vertex count overflows");
  // Reject unrealizable weights before any sampling.
  std::set<double> weights;
  for (const Edge& e : g.edges()) weights.insert(e.w);
  for (double w : weights) exact_degree({m, w, eps, 0});

  const std::size_t count = g.edge_count();
  std::vector<Gadget> gadgets(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  const auto worker = [&] {
    while (!failed) {
      const std::size_t e = next++;
      if (e >= count) return;
      try {
        gadgets[e] = sample_gadget({m, g.edge(e).w, eps, derive_seed(seed, e)}, opt);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
      }
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Edge> edges;
  std::size_t total = 0;
  for (const auto& gd : gadgets) total += gd.edges.size();
  edges.reserve(total);
  for (std::size_t e = 0; e < count; ++e) {
    const Edge& src = g.edge(e);
    for (auto [i, j] : gadgets[e].edges) edges.push_back({src.u * m + i, src.v * m + j, 1.0});
    gadgets[e].edges.clear();
    gadgets[e].edges.shrink_to_fit();
  }
  UnweightResult res;
  res.graph = WeightedGraph(static_cast<Vertex>(n), std::move(edges));
  res.m = m;
  res.gadgets = std::move(gadgets);
  std::vector<std::int64_t> deg(n, 0);
  for (const Edge& e : res.graph.edges()) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (auto d : deg) ++res.degree_histogram[d];
  if (!res.degree_histogram.empty()) {
    res.degree_spread = res.degree_histogram.rbegin()->first - res.degree_histogram.begin()->first;
  }
  return res;
}

}  // namespace msvc
