#pragma once

// Standard and bivariate normal quantities.

#include <cstddef>

namespace msvc {

/// Correlation coefficient in [-1, 1].
class Correlation {
 public:
  /// Throws DomainError outside [-1, 1] or on NaN.
  explicit Correlation(double rho);
  double value() const noexcept { return rho_; }

 private:
  double rho_;
};

double phi_pdf(double x);
double phi_cdf(double x);
/// Inverse of phi_cdf; DomainError unless 0 < p < 1.
double phi_inv(double p);

/// Gamma_rho(x, y) = Pr[X <= Phi^{-1}(x), Y <= Phi^{-1}(y)] for standard
/// normals with correlation rho. Symmetric in (x, y) bit for bit.
double gamma_rho(Correlation rho, double x, double y);

/// Diagonal Gamma_rho(r) = Gamma_rho(r, r).
inline double gamma_rho_diag(Correlation rho, double r) { return gamma_rho(rho, r, r); }

/// d/dr Gamma_rho(r, r) = 2 Phi(sqrt((1-rho)/(1+rho)) Phi^{-1}(r)); |rho| < 1, 0 < r < 1.
double gamma_rho_diag_deriv(Correlation rho, double r);

inline constexpr std::size_t kIntegralNodes = 2049;

/// Composite Simpson estimate of the integral of Gamma_rho(r) over [0, 1].
/// `nodes` must be odd and at least 2049.
double integral_gamma(Correlation rho, std::size_t nodes = kIntegralNodes);

}  // namespace msvc
