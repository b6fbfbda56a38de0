#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bogoliubov.hpp"
#include "quadrature.hpp"

using namespace fermicav;

namespace {

double perturbative_prediction(int m, int n, double s, double h) {
  const double order0 = m == n ? 1.0 : 0.0;
  return order0 + first_order_entry(m, n, s) * h +
         second_order_entry(m, n, s) * h * h;
}

double fitted_slope(const std::vector<double>& hs, const std::vector<double>& residuals) {
  // Least-squares slope in log-log coordinates.
  const std::size_t n = hs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(hs[i]);
    const double y = std::log(residuals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("exact coefficients against frozen high-precision anchors") {
  // Reference values from 30-digit quadrature of the same inner product
  // (delta = 1 throughout).
  struct Anchor {
    int m, n;
    double s, h, value;
  };
  const Anchor anchors[] = {
      {1, 0, 0.0, 0.1, -0.010139059915881643},
      {2, 1, 0.25, 0.1, -0.035467976514945447},
      {0, 0, 0.0, 0.1, 0.9998956800695524},
      {3, 0, 0.0, 0.05, -0.00056302348292968801},
  };
  for (const Anchor& a : anchors) {
    const auto geom = CavityGeometry::from_acceleration(1.0, a.h, a.s);
    const QuadratureResult result = exact_coefficient(geom, a.m, a.n);
    CHECK(result.value.real() == doctest::Approx(a.value).epsilon(5e-10));
    CHECK(std::abs(result.value.imag()) < 1e-12);
    CHECK(result.error_estimate <= 1e-11);
    CHECK(result.evaluations > 0);
  }
}

TEST_CASE("diagonal coefficient approaches one as h -> 0") {
  const auto geom = CavityGeometry::from_acceleration(1.0, 1e-3);
  const QuadratureResult result = exact_coefficient(geom, 0, 0);
  CHECK(std::abs(result.value.real() - 1.0) < 1e-7);
  // The approach is governed by the diagonal h^2 coefficient -1/96.
  CHECK(result.value.real() - 1.0 ==
        doctest::Approx(second_order_entry(0, 0, 0.0) * 1e-6).epsilon(1e-2));
}

TEST_CASE("quadrature residual against the perturbative entries is O(h^3)") {
  const std::vector<double> hs = {0.02, 0.01, 0.005};
  std::vector<double> residuals;
  for (double h : hs) {
    const auto geom = CavityGeometry::from_acceleration(1.0, h);
    const auto exact = exact_coefficient(geom, 1, 0);
    residuals.push_back(
        std::abs(exact.value.real() - perturbative_prediction(1, 0, 0.0, h)));
  }
  CHECK(fitted_slope(hs, residuals) >= 2.7);
}

TEST_CASE("exact coefficients are theta-invariant") {
  std::complex<double> reference;
  for (int i = 0; i < 3; ++i) {
    const double theta = i * std::numbers::pi / 2.0;
    const auto geom = CavityGeometry::from_walls(1.0, 2.0, 0.25, theta);
    const auto result = exact_coefficient(geom, 1, 0);
    if (i == 0)
      reference = result.value;
    else
      CHECK(std::abs(result.value - reference) < 1e-12);
  }
}

TEST_CASE("exact transformation columns are unit-normalised" *
          doctest::description("sum_m |A_mn|^2 = 1 with M = 200")) {
  const auto geom = CavityGeometry::from_acceleration(1.0, 0.5);
  double sum = 0.0;
  for (int m = -200; m <= 200; ++m)
    sum += std::norm(exact_coefficient(geom, m, 0).value);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("quadrature reports non-convergence with the achieved estimate") {
  const auto geom = CavityGeometry::from_walls(1.0, 2.0);
  CHECK_THROWS_AS(exact_coefficient(geom, 1, 0, -1.0), std::invalid_argument);
  try {
    exact_coefficient(geom, 40, 37, 1e-30);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& err) {
    CHECK(err.achieved_error() > 0.0);
    CHECK(std::string(err.what()).find("tolerance") != std::string::npos);
  }
}
