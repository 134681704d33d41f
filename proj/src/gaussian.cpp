#include "msvc/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "msvc/error.hpp"

namespace msvc {

Correlation::Correlation(double rho) : rho_(rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("correlation must lie in [-1, 1], got " + std::to_string(rho));
}

double phi_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double phi_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("phi_inv requires 0 < p < 1");
  // Acklam's rational approximation (relative error ~1e-9), then Newton.
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                           1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                           6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                           -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                           3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int step = 0; step < 2; ++step) {
    // Work on the tail that keeps the residual well-conditioned.
    const double resid = p < 0.5 ? phi_cdf(x) - p : (1.0 - p) - phi_cdf(-x);
    const double dens = phi_pdf(x);
    if (dens <= 0.0) break;
    x -= resid / dens;
  }
  return x;
}

namespace {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kXgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                     0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                     0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                     0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                     0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                     0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                     0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double lo, double hi, double& kronrod, double& error) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double s = f(center - dx) + f(center + dx);
    rk += kWgk[j] * s;
    if (j % 2 == 1) rg += kWg[j / 2] * s;
  }
  kronrod = rk * half;
  error = std::abs((rk - rg) * half);
}

template <class F>
double adaptive(const F& f, double lo, double hi, double tol, int depth) {
  double k, err;
  gk15(f, lo, hi, k, err);
  if (err <= tol || depth == 0) return k;
  const double mid = 0.5 * (lo + hi);
  return adaptive(f, lo, mid, 0.5 * tol, depth - 1) + adaptive(f, mid, hi, 0.5 * tol, depth - 1);
}

constexpr double kTruncation = 8.0;
constexpr double kQuadTolerance = 1e-10;

}  // namespace

double gamma_rho(Correlation corr, double x, double y) {
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) throw DomainError("gamma_rho arguments must lie in [0, 1]");
  // Canonical argument order makes the result symmetric exactly.
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  const double rho = corr.value();
  const double floor = std::max(0.0, lo + hi - 1.0);
  if (lo == 0.0) return 0.0;
  if (hi == 1.0) return lo;
  if (rho == 1.0) return lo;
  if (rho == -1.0) return floor;

  const double a = phi_inv(lo);
  const double b = phi_inv(hi);
  const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
  const auto integrand = [=](double z) { return phi_pdf(z) * phi_cdf((b - rho * z) / s); };
  double value;
  if (a <= -kTruncation) {
    value = lo * phi_cdf((b - rho * a) / s);
  } else {
    value = adaptive(integrand, -kTruncation, a, kQuadTolerance, 48);
  }
  return std::clamp(value, floor, lo);
}

double gamma_rho_diag_deriv(Correlation corr, double r) {
  const double rho = corr.value();
  if (std::abs(rho) == 1.0) throw DomainError("diagonal derivative requires |rho| < 1");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("diagonal derivative requires 0 < r < 1");
  return 2.0 * phi_cdf(std::sqrt((1.0 - rho) / (1.0 + rho)) * phi_inv(r));
}

double integral_gamma(Correlation rho, std::size_t nodes) {
  if (nodes < kIntegralNodes || nodes % 2 == 0) throw DomainError("integral_gamma needs an odd node count >= 2049");
  const std::size_t intervals = nodes - 1;
  const double h = 1.0 / static_cast<double>(intervals);
  // Endpoints: Gamma(0) = 0 and Gamma(1) = 1.
  double sum = 0.0 + 1.0;
  for (std::size_t i = 1; i < intervals; ++i) {
    const double r = static_cast<double>(i) * h;
    sum += (i % 2 == 1 ? 4.0 : 2.0) * gamma_rho_diag(rho, r);
  }
  return sum * h / 3.0;
}

}  // namespace msvc
