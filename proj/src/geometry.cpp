#include "geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fermicav {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

CavityGeometry::CavityGeometry(double a, double b, double s, double theta)
    : a_(a), b_(b), s_(s), theta_(theta) {}

CavityGeometry CavityGeometry::from_walls(double a, double b, double s,
                                          double theta) {
  if (!(std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > a))
    throw std::invalid_argument("cavity walls require 0 < a < b, got a=" +
                                std::to_string(a) + " b=" + std::to_string(b));
  if (!(std::isfinite(s) && s >= 0.0 && s < 1.0))
    throw std::invalid_argument("boundary offset s must lie in [0,1), got " +
                                std::to_string(s));
  if (!(std::isfinite(theta) && theta >= 0.0 && theta < kTwoPi))
    throw std::invalid_argument("boundary phase theta must lie in [0,2pi), got " +
                                std::to_string(theta));
  return CavityGeometry(a, b, s, theta);
}

CavityGeometry CavityGeometry::from_acceleration(double delta, double h, double s,
                                                 double theta) {
  if (!(std::isfinite(delta) && delta > 0.0))
    throw std::invalid_argument("cavity width delta must be positive, got " +
                                std::to_string(delta));
  if (!(std::isfinite(h) && h > 0.0 && h < 2.0))
    throw std::invalid_argument(
        "acceleration parameter h must lie in (0,2), got " + std::to_string(h));
  const double a = delta * (1.0 / h - 0.5);
  const double b = delta * (1.0 / h + 0.5);
  return from_walls(a, b, s, theta);
}

double CavityGeometry::log_ratio() const { return std::log(b_ / a_); }

double minkowski_frequency(const CavityGeometry& geom, int n) {
  return (n + geom.s()) * kPi / geom.delta();
}

double rindler_frequency(const CavityGeometry& geom, int n) {
  return (n + geom.s()) * kPi / geom.log_ratio();
}

double rapidity_from_proper_time(const CavityGeometry& geom, double tau) {
  if (!(std::isfinite(tau) && tau >= 0.0))
    throw std::invalid_argument("proper time must be non-negative, got " +
                                std::to_string(tau));
  return 2.0 * tau / (geom.a() + geom.b());
}

double degradation_period(const CavityGeometry& geom) {
  const double half_h = 0.5 * geom.h();
  return 2.0 * geom.delta() * std::atanh(half_h) / half_h;
}

double u_parameter(const CavityGeometry& geom, double tau1) {
  if (!(std::isfinite(tau1) && tau1 >= 0.0))
    throw std::invalid_argument("segment duration must be non-negative, got " +
                                std::to_string(tau1));
  return tau1 / degradation_period(geom);
}

double v_parameter(const CavityGeometry& geom, double tau2) {
  if (!(std::isfinite(tau2) && tau2 >= 0.0))
    throw std::invalid_argument("segment duration must be non-negative, got " +
                                std::to_string(tau2));
  return tau2 / (2.0 * geom.delta());
}

std::pair<std::complex<double>, std::complex<double>> mode_components_at_t0(
    const CavityGeometry& geom, int n, double z, Frame frame) {
  if (!(z >= geom.a() && z <= geom.b()))
    throw std::invalid_argument("z=" + std::to_string(z) +
                                " lies outside the cavity [" +
                                std::to_string(geom.a()) + ", " +
                                std::to_string(geom.b()) + "]");
  const std::complex<double> wall_phase = std::polar(1.0, geom.theta());
  if (frame == Frame::minkowski) {
    const double w = minkowski_frequency(geom, n);
    const double norm = 1.0 / std::sqrt(2.0 * geom.delta());
    const std::complex<double> plus = std::polar(norm, w * (z - geom.a()));
    return {plus, wall_phase * std::conj(plus)};
  }
  const double omega = rindler_frequency(geom, n);
  const double norm = 1.0 / std::sqrt(2.0 * z * geom.log_ratio());
  const std::complex<double> plus = std::polar(norm, omega * std::log(z / geom.a()));
  return {plus, wall_phase * std::conj(plus)};
}

}  // namespace fermicav
