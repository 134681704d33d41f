#include "msvc/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "msvc/error.hpp"
#include "msvc/graph.hpp"
#include "text_io.hpp"

namespace msvc {

BitPairDistribution nu(Correlation rho) {
  const double same = (1.0 + rho.value()) / 4.0;
  const double diff = (1.0 - rho.value()) / 4.0;
  return {same, diff, diff, same};
}

namespace {

void require_nonpositive(Correlation rho, const char* what) {
  if (rho.value() > 0.0) throw DomainError(std::string(what) + " requires rho in [-1, 0]");
}

void require_grid(int g) {
  if (g < 10 || g > 24) throw DomainError("grid exponent must lie in [10, 24]");
}

}  // namespace

double completeness_limit(Correlation rho, double gamma) {
  require_nonpositive(rho, "completeness_limit");
  if (!(gamma >= 0.0)) throw DomainError("gamma must be non-negative");
  const double r = rho.value();
  double t = (3.0 + r) / 8.0;
  for (int it = 0; it < 10000; ++it) {
    const double next = 0.25 + (1.0 + r) / 4.0 * t + (1.0 - r) / 4.0 * gamma;
    const double change = std::abs(next - t);
    t = next;
    if (change < 1e-12) break;
  }
  return t;
}

double single_ratio(Correlation rho) {
  require_nonpositive(rho, "single_ratio");
  return integral_gamma(rho) * (3.0 - rho.value());
}

CoverProfile::CoverProfile(Kind kind, std::vector<double> values) : kind_(kind), values_(std::move(values)) {
  if (values_.size() < 2) throw DomainError("a cover profile needs at least two nodes");
}

double CoverProfile::operator()(double t) const {
  const auto m = static_cast<double>(intervals());
  const double x = std::clamp(t, 0.0, 1.0) * m;
  const auto i = std::min(static_cast<std::size_t>(x), intervals() - 1);
  const double frac = x - static_cast<double>(i);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

double CoverProfile::uncovered_area() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) s += 1.0 - 0.5 * (values_[i] + values_[i + 1]);
  return s / static_cast<double>(intervals());
}

CoverProfile completeness_profile(Correlation rho, double gamma, int depth, int g) {
  require_nonpositive(rho, "completeness_profile");
  require_grid(g);
  if (depth < 1) throw DomainError("recurrence depth must be at least 1");
  if (!(gamma >= 0.0)) throw DomainError("gamma must be non-negative");
  const auto n = nu(rho);
  const double r = rho.value();
  const std::size_t M = std::size_t{1} << g;
  const std::size_t half = M / 2;
  const auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };

  std::vector<double> c(M + 1);
  for (std::size_t j = 0; j <= M; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(M);
    c[j] = j == 0 ? 0.0 : clamp01(j <= half ? (1.0 - r) * t - 2.0 * gamma : (3.0 - r) / 4.0 - 2.0 * gamma);
  }
  std::vector<double> next(M + 1);
  int it = 1;
  for (; it < depth; ++it) {
    double change = 0.0;
    for (std::size_t j = 0; j <= M; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(M);
      const double v = j <= half ? n.p00 * c[2 * j] + (1.0 - r) * t - 2.0 * gamma
                                 : (3.0 - r) / 4.0 + n.p11 * c[2 * j - M] - 2.0 * gamma;
      next[j] = clamp01(v);
      change = std::max(change, std::abs(next[j] - c[j]));
    }
    c.swap(next);
    if (change < 1e-9) break;
  }
  CoverProfile p(CoverProfile::Kind::completeness, std::move(c));
  p.iterations = std::min(it + 1, depth);
  return p;
}

CoverProfile soundness_profile(Correlation rho, double eps, int g) {
  require_nonpositive(rho, "soundness_profile");
  require_grid(g);
  if (!(eps >= 0.0)) throw DomainError("eps must be non-negative");
  const std::size_t M = std::size_t{1} << g;
  std::vector<double> s(M + 1);
  for (std::size_t j = 0; j <= M; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(M);
    s[j] = std::clamp(1.0 - gamma_rho_diag(rho, 1.0 - t) + eps, 0.0, 1.0);
  }
  return CoverProfile(CoverProfile::Kind::soundness, std::move(s));
}

HardnessConfig::HardnessConfig(std::vector<HardnessPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw DomainError("a hardness config needs at least one pair");
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto& p = pairs_[i];
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
      throw DomainError("alpha_" + std::to_string(i + 1) + " must be positive and finite");
    }
    if (!(p.rho > -1.0 && p.rho <= 0.0)) throw DomainError("rho_" + std::to_string(i + 1) + " must lie in (-1, 0]");
  }
}

HardnessConfig figure1_config() {
  static const double alpha[60] = {
      1,      40.20,  40.22,  43.78,  43.78,  43.81,  43.82,  47.74,  47.81,  53.19,  53.50,  53.53,
      53.76,  54.10,  58.75,  59.14,  63.07,  63.09,  67.61,  67.64,  72.36,  72.41,  79.84,  79.94,
      81.10,  81.21,  94.5,   94.67,  96.14,  96.27,  98.32,  98.5,   118.05, 118.25, 120.76, 121,
      123.61, 123.94, 145.96, 146.39, 150.07, 150.58, 169.25, 169.78, 186.55, 187.22, 214.35, 217.53,
      222.30, 222.94, 260.16, 265.34, 299.47, 306.72, 353.2,  361.89, 436.79, 448.42, 607.90, 608.43};
  static const double rho[60] = {
      -0.979, -0.974, -0.975, -0.968, -0.970, -0.972, -0.973, -0.962, -0.964, -0.929, -0.931, -0.936,
      -0.937, -0.970, -0.921, -0.923, -0.912, -0.914, -0.903, -0.905, -0.894, -0.896, -0.876, -0.879,
      -0.882, -0.884, -0.856, -0.859, -0.862, -0.866, -0.857, -0.860, -0.840, -0.844, -0.841, -0.846,
      -0.841, -0.844, -0.837, -0.840, -0.838, -0.840, -0.837, -0.842, -0.841, -0.844, -0.839, -0.845,
      -0.847, -0.851, -0.853, -0.858, -0.865, -0.865, -0.876, -0.878, -0.891, -0.895, -0.916, -0.917};
  std::vector<HardnessPair> pairs;
  for (int i = 0; i < 60; ++i) pairs.push_back({alpha[i], rho[i]});
  return HardnessConfig(std::move(pairs));
}

HardnessConfig read_config(std::string_view text) {
  detail::LineReader in(text);
  in.expect_header("msvc-hardness");
  const auto k = in.integer<std::int64_t>(in.tokens_exact(1, "'k'")[0], "pair count");
  if (k < 1) in.fail("pair count must be at least 1");
  std::vector<HardnessPair> pairs;
  for (std::int64_t i = 0; i < k; ++i) {
    auto t = in.tokens_exact(2, "'alpha rho'");
    const double a = in.real(t[0], "alpha");
    const double r = in.real(t[1], "rho");
    if (!(a > 0.0) || !std::isfinite(a)) in.fail("alpha must be positive and finite");
    if (!(r > -1.0 && r <= 0.0)) in.fail("rho must lie in (-1, 0]");
    pairs.push_back({a, r});
  }
  in.expect_end();
  return HardnessConfig(std::move(pairs));
}

std::string write_config(const HardnessConfig& cfg) {
  std::string out = "msvc-hardness 1\n" + std::to_string(cfg.size()) + "\n";
  for (const auto& p : cfg.pairs()) out += format_double(p.alpha) + " " + format_double(p.rho) + "\n";
  return out;
}

HardnessConfig load_config(const std::string& path) { return read_config(detail::read_file(path)); }

namespace {

struct ProfilePair {
  CoverProfile completeness;
  CoverProfile soundness;
};

class ProfileCache {
 public:
  explicit ProfileCache(const ProfileOptions& opt) : opt_(opt) {}

  const ProfilePair& get(double rho) {
    auto it = cache_.find(rho);
    if (it == cache_.end()) {
      const Correlation r(rho);
      it = cache_
               .emplace(rho, ProfilePair{completeness_profile(r, opt_.gamma, opt_.depth, opt_.grid_exponent),
                                         soundness_profile(r, opt_.eps, opt_.grid_exponent)})
               .first;
    }
    return it->second;
  }

 private:
  ProfileOptions opt_;
  std::map<double, ProfilePair> cache_;
};

double schedule(const std::vector<const CoverProfile*>& profiles, const std::vector<double>& alpha,
                std::uint64_t steps, ScheduleTrace* trace) {
  const std::size_t k = profiles.size();
  const double N = static_cast<double>(steps);
  std::vector<std::uint64_t> clock(k, 0);
  const auto gain = [&](std::size_t i) {
    const CoverProfile& p = *profiles[i];
    return alpha[i] * (p(static_cast<double>(clock[i] + 1) / N) - p(static_cast<double>(clock[i]) / N));
  };
  // Max-heap on gain; on equal gain the lower index wins.
  using Item = std::pair<double, std::uint32_t>;
  const auto worse = [](const Item& a, const Item& b) {
    return a.first < b.first || (a.first == b.first && a.second > b.second);
  };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
  double uncovered = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    uncovered += alpha[i] * (1.0 - (*profiles[i])(0.0));
    heap.push({gain(i), static_cast<std::uint32_t>(i)});
  }
  double area = 0.0;
  while (!heap.empty()) {
    const auto [g, i] = heap.top();
    heap.pop();
    const double after = uncovered - g;
    area += 0.5 * (uncovered + after);
    uncovered = after;
    if (trace) {
      if (!trace->empty() && trace->back().first == i) {
        ++trace->back().second;
      } else {
        trace->push_back({i, 1});
      }
    }
    if (++clock[i] < steps) heap.push({gain(i), i});
  }
  return area / N;
}

RatioReport composite_with(ProfileCache& cache, const HardnessConfig& cfg, std::uint64_t steps, bool traces) {
  if (steps < kMinSteps) throw DomainError("composite_ratio needs at least 1000 steps per graph");
  std::vector<const CoverProfile*> comp, sound;
  std::vector<double> alpha;
  for (const auto& p : cfg.pairs()) {
    const ProfilePair& pp = cache.get(p.rho);
    comp.push_back(&pp.completeness);
    sound.push_back(&pp.soundness);
    alpha.push_back(p.alpha);
  }
  RatioReport rep;
  rep.steps = steps;
  rep.completeness_value = schedule(comp, alpha, steps, traces ? &rep.completeness_trace : nullptr);
  rep.soundness_value = schedule(sound, alpha, steps, traces ? &rep.soundness_trace : nullptr);
  rep.ratio = rep.soundness_value / rep.completeness_value;
  return rep;
}

}  // namespace

RatioReport composite_ratio(const HardnessConfig& cfg, std::uint64_t steps, const ProfileOptions& opt) {
  ProfileCache cache(opt);
  return composite_with(cache, cfg, steps, true);
}

namespace {

constexpr double kRhoLow = -0.999;
constexpr double kRhoHigh = 0.0;

// Search coordinates: log alpha_i for i < k, then rho_i.
class Objective {
 public:
  Objective(const HardnessConfig& seed, const OptimizeOptions& opt)
      : k_(seed.size()), opt_(opt), cache_(opt.profile) {}

  std::vector<double> encode(const HardnessConfig& cfg) const {
    std::vector<double> x;
    for (const auto& p : cfg.pairs()) x.push_back(std::log(p.alpha));
    for (const auto& p : cfg.pairs()) x.push_back(p.rho);
    return x;
  }

  HardnessConfig decode(const std::vector<double>& x) const {
    std::vector<HardnessPair> pairs;
    for (std::size_t i = 0; i < k_; ++i) pairs.push_back({std::exp(x[i]), std::clamp(x[k_ + i], kRhoLow, kRhoHigh)});
    return HardnessConfig(std::move(pairs));
  }

  void clamp(std::vector<double>& x) const {
    for (std::size_t i = 0; i < k_; ++i) x[k_ + i] = std::clamp(x[k_ + i], kRhoLow, kRhoHigh);
  }

  bool exhausted() const { return evaluations_ >= opt_.budget; }
  std::uint32_t evaluations() const { return evaluations_; }

  double operator()(const std::vector<double>& x) {
    ++evaluations_;
    return composite_with(cache_, decode(x), opt_.steps, false).ratio;
  }

 private:
  std::size_t k_;
  OptimizeOptions opt_;
  ProfileCache cache_;
  std::uint32_t evaluations_ = 0;
};

}  // namespace

OptimizeResult optimize_config(const HardnessConfig& seed, const OptimizeOptions& opt) {
  if (opt.steps < kMinSteps) throw DomainError("optimizer steps must be at least 1000");
  Objective f(seed, opt);
  std::vector<double> x = f.encode(seed);
  const std::size_t dim = x.size();
  const std::size_t k = seed.size();

  OptimizeResult res;
  res.config = seed;
  res.seed_ratio = f(x);
  double best = res.seed_ratio;
  const auto try_point = [&](std::vector<double> y) {
    if (f.exhausted()) return false;
    f.clamp(y);
    if (y == x) return false;
    const double v = f(y);
    if (v > best) {
      best = v;
      x = std::move(y);
      return true;
    }
    return false;
  };

  // Coordinate refinement. log-alpha moves are scaled up since the ratio is
  // far less sensitive to them.
  for (double h : {0.1, 0.03, 0.01, 0.003}) {
    for (std::size_t j = 0; j < dim && !f.exhausted(); ++j) {
      const double step = j < k ? 5.0 * h : h;
      for (double dir : {-1.0, 1.0}) {
        bool moved = false;
        while (!f.exhausted()) {
          auto y = x;
          y[j] += dir * step;
          if (!try_point(std::move(y))) break;
          moved = true;
        }
        if (moved) break;
      }
    }
  }

  // Forward-difference gradient ascent with a backtracking step.
  while (!f.exhausted()) {
    std::vector<double> grad(dim, 0.0);
    double norm = 0.0;
    for (std::size_t j = 0; j < dim && !f.exhausted(); ++j) {
      auto y = x;
      y[j] += opt.fd_step;
      f.clamp(y);
      if (y[j] == x[j]) continue;
      const double v = f(y);
      grad[j] = (v - best) / (y[j] - x[j]);
      norm += grad[j] * grad[j];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0 || f.exhausted()) break;
    bool improved = false;
    for (double len : {0.1, 0.03, 0.01, 0.003, 0.001}) {
      auto y = x;
      for (std::size_t j = 0; j < dim; ++j) y[j] += len * grad[j] / norm;
      if (try_point(std::move(y))) {
        improved = true;
        break;
      }
      if (f.exhausted()) break;
    }
    if (!improved) break;
  }

  // An unchanged seed is returned verbatim, even if a rho was clamped.
  if (best > res.seed_ratio) res.config = f.decode(x);
  res.ratio = best;
  res.evaluations = f.evaluations();
  return res;
}

}  // namespace msvc
