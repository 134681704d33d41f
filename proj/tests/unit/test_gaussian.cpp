#include <cmath>
#include <numbers>

#include "doctest.h"
#include "msvc/error.hpp"
#include "msvc/gaussian.hpp"

using namespace msvc;

namespace {

double bvn_density(double h, double k, double r) {
  const double s = 1.0 - r * r;
  return std::exp(-(h * h - 2.0 * r * h * k + k * k) / (2.0 * s)) / (2.0 * std::numbers::pi * std::sqrt(s));
}

// Plackett: d/drho Phi_2(h, k; rho) is the bivariate density, so the CDF is
// Phi(h)Phi(k) plus a smooth one-dimensional integral in the correlation.
double plackett(double rho, double x, double y) {
  const double h = phi_inv(x), k = phi_inv(y);
  const int n = 4000;
  const double step = rho / n;
  double acc = bvn_density(h, k, 0.0) + bvn_density(h, k, rho);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * bvn_density(h, k, i * step);
  return x * y + acc * step / 3.0;
}

}  // namespace

TEST_CASE("correlation domain") {
  CHECK_THROWS_AS(Correlation(1.0000001), DomainError);
  CHECK_THROWS_AS(Correlation(-2), DomainError);
  CHECK_THROWS_AS(Correlation(std::nan("")), DomainError);
  CHECK(Correlation(-1).value() == -1.0);
}

TEST_CASE("phi and its inverse") {
  CHECK(phi_cdf(0.0) == 0.5);
  CHECK(phi_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
  CHECK(phi_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
  for (double p = 1e-10; p < 1.0; p = p < 0.01 ? p * 10 : p + 0.01) {
    CHECK(std::abs(phi_cdf(phi_inv(p)) - p) <= 1e-12 * std::max(1.0, p / (1 - p)));
  }
  CHECK_THROWS_AS(phi_inv(0.0), DomainError);
  CHECK_THROWS_AS(phi_inv(1.0), DomainError);
}

TEST_CASE("gamma closed forms at rho in {-1, 0, 1}") {
  CHECK(gamma_rho(Correlation(0), 0.3, 0.5) == doctest::Approx(0.15).epsilon(1e-12));
  for (double x = 0.05; x < 1.0; x += 0.1) {
    for (double y = 0.05; y < 1.0; y += 0.15) {
      CHECK(std::abs(gamma_rho(Correlation(0), x, y) - x * y) < 1e-9);
      CHECK(std::abs(gamma_rho(Correlation(1), x, y) - std::min(x, y)) < 1e-9);
      CHECK(std::abs(gamma_rho(Correlation(-1), x, y) - std::max(0.0, x + y - 1)) < 1e-9);
    }
  }
}

TEST_CASE("gamma boundary values and symmetry") {
  const Correlation r(-0.52);
  CHECK(gamma_rho(r, 0.0, 0.7) == 0.0);
  CHECK(gamma_rho(r, 1.0, 0.7) == 0.7);
  CHECK(gamma_rho(r, 1.0, 1.0) == 1.0);
  CHECK(gamma_rho(r, 0.2, 0.9) == gamma_rho(r, 0.9, 0.2));
  // Quadrant probability.
  for (double rho : {-0.9, -0.52, 0.3, 0.5}) {
    CHECK(gamma_rho(Correlation(rho), 0.5, 0.5) ==
          doctest::Approx(0.25 + std::asin(rho) / (2.0 * std::numbers::pi)).epsilon(1e-11));
  }
}

TEST_CASE("gamma agrees with the Plackett integral") {
  for (double rho : {-0.95, -0.75, -0.52, -0.2, 0.1, 0.6, 0.95}) {
    for (double x : {0.01, 0.2, 0.5, 0.77, 0.99}) {
      for (double y : {0.03, 0.4, 0.9}) {
        CAPTURE(rho);
        CAPTURE(x);
        CAPTURE(y);
        CHECK(std::abs(gamma_rho(Correlation(rho), x, y) - plackett(rho, x, y)) < 1e-10);
      }
    }
  }
}

TEST_CASE("gamma stays within the Frechet bounds") {
  for (double rho = -1.0; rho <= 1.0; rho += 0.05) {
    for (double x = 0.0; x <= 1.0; x += 0.0625) {
      const double v = gamma_rho(Correlation(rho), x, 0.3);
      CHECK(v >= std::max(0.0, x + 0.3 - 1.0) - 1e-15);
      CHECK(v <= std::min(x, 0.3) + 1e-15);
    }
  }
}

TEST_CASE("diagonal derivative against central differences") {
  const double h = 1e-5;
  for (int i = 0; i < 10; ++i) {
    const double rho = -0.95 + 0.19 * i;
    for (int j = 0; j < 10; ++j) {
      const double r = 0.05 + 0.1 * j;
      const Correlation c(rho);
      const double fd = (gamma_rho_diag(c, r + h) - gamma_rho_diag(c, r - h)) / (2 * h);
      CAPTURE(rho);
      CAPTURE(r);
      CHECK(std::abs(gamma_rho_diag_deriv(c, r) - fd) < 1e-5);
    }
  }
  CHECK_THROWS_AS(gamma_rho_diag_deriv(Correlation(1), 0.5), DomainError);
  CHECK_THROWS_AS(gamma_rho_diag_deriv(Correlation(0), 0.0), DomainError);
}

TEST_CASE("integral of the diagonal") {
  CHECK(integral_gamma(Correlation(0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(integral_gamma(Correlation(1)) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(integral_gamma(Correlation(-1)) == doctest::Approx(0.25).epsilon(1e-6));
  const double a = integral_gamma(Correlation(-0.52));
  const double b = integral_gamma(Correlation(-0.52), 8193);
  CHECK(std::abs(a - b) < 1e-8);
  CHECK(a * 3.52 == doctest::Approx(1.0157795).epsilon(1e-6));
  CHECK_THROWS_AS(integral_gamma(Correlation(0), 2048), DomainError);
  CHECK_THROWS_AS(integral_gamma(Correlation(0), 101), DomainError);
}
