#pragma once

// Completeness/soundness cover profiles and the composite-instance ratio.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msvc/gaussian.hpp"

namespace msvc {

/// Distribution of a pair of unbiased rho-correlated bits.
struct BitPairDistribution {
  double p00, p01, p10, p11;
};
BitPairDistribution nu(Correlation rho);

/// Fixed point of t <- 1/4 + (1+rho)/4 t + (1-rho)/4 gamma, iterated from
/// (3+rho)/8. Equals 1/(3-rho) for gamma = 0. Requires rho in [-1, 0].
double completeness_limit(Correlation rho, double gamma = 0.0);

/// Integral of Gamma_rho(r) times (3 - rho). Requires rho in [-1, 0].
double single_ratio(Correlation rho);

/// Piecewise-linear function on 2^g + 1 uniform nodes of [0, 1].
class CoverProfile {
 public:
  enum class Kind { completeness, soundness };

  CoverProfile(Kind kind, std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t intervals() const noexcept { return values_.size() - 1; }
  /// Linear interpolation; t is clamped to [0, 1].
  double operator()(double t) const;
  /// Trapezoid estimate of the integral of 1 - profile.
  double uncovered_area() const;
  /// Recurrence iterations actually performed (completeness profiles).
  int iterations = 0;

 private:
  Kind kind_;
  std::vector<double> values_;
};

inline constexpr int kDefaultGridExponent = 12;
inline constexpr int kDefaultDepth = 60;

/// Iterates the completeness recurrence from c_1, stopping after `depth`
/// rounds or when the sup-norm change drops below 1e-9. g >= 10.
CoverProfile completeness_profile(Correlation rho, double gamma = 0.0, int depth = kDefaultDepth,
                                  int g = kDefaultGridExponent);

/// s(t) = 1 - Gamma_rho(1 - t) + eps, clamped to [0, 1]. g >= 10.
CoverProfile soundness_profile(Correlation rho, double eps = 0.0, int g = kDefaultGridExponent);

struct HardnessPair {
  double alpha;
  double rho;

  friend bool operator==(const HardnessPair&, const HardnessPair&) = default;
};

/// Weights alpha_i > 0 and correlations rho_i in (-1, 0].
class HardnessConfig {
 public:
  HardnessConfig() = default;
  explicit HardnessConfig(std::vector<HardnessPair> pairs);

  std::size_t size() const noexcept { return pairs_.size(); }
  const std::vector<HardnessPair>& pairs() const noexcept { return pairs_; }
  const HardnessPair& operator[](std::size_t i) const { return pairs_[i]; }

  friend bool operator==(const HardnessConfig&, const HardnessConfig&) = default;

 private:
  std::vector<HardnessPair> pairs_;
};

/// The 60 pairs of the published composite instance.
HardnessConfig figure1_config();

// Text format:
//   msvc-hardness 1
//   k
//   alpha rho     (k lines)
HardnessConfig read_config(std::string_view text);
std::string write_config(const HardnessConfig& cfg);
HardnessConfig load_config(const std::string& path);

struct ProfileOptions {
  double gamma = 0.0;
  double eps = 0.0;
  int depth = kDefaultDepth;
  int grid_exponent = kDefaultGridExponent;
};

/// Run-length encoded schedule: (graph index, consecutive steps).
using ScheduleTrace = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

struct RatioReport {
  double completeness_value = 0.0;
  double soundness_value = 0.0;
  double ratio = 0.0;
  std::uint64_t steps = 0;  ///< per graph
  ScheduleTrace completeness_trace;
  ScheduleTrace soundness_trace;
};

inline constexpr std::uint64_t kMinSteps = 1000;

/// Greedy schedule of k graphs with `steps` unit steps each. Every step goes
/// to the graph with the largest alpha-weighted profile increment (ties to the
/// lowest index). Values are the integrals of the uncovered alpha-weight over
/// time measured in units of one graph's length.
RatioReport composite_ratio(const HardnessConfig& cfg, std::uint64_t steps, const ProfileOptions& opt = {});

struct OptimizeOptions {
  std::uint32_t budget = 200;     ///< composite_ratio evaluations
  std::uint64_t steps = 4000;     ///< per-graph steps used while searching
  double fd_step = 1e-3;
  ProfileOptions profile;
};

struct OptimizeResult {
  HardnessConfig config;
  double seed_ratio = 0.0;
  double ratio = 0.0;
  std::uint32_t evaluations = 0;
};

/// Coordinate grid refinement, then forward-difference gradient ascent on
/// (log alpha_i, rho_i). Only improving moves are accepted; deterministic.
OptimizeResult optimize_config(const HardnessConfig& seed, const OptimizeOptions& opt = {});

}  // namespace msvc
