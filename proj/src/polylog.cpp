#include "polylog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fermicav {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Signed reduction to [-1/2, 1/2). With this window the conjugate phase is
// the exact negation, so every even function of the phase is bit-identical
// for z and conj(z). Already-reduced inputs pass through untouched; the
// shift paths below only ever add or subtract 1 from values of magnitude in
// [1/2, 1], which is exact.
double reduce_turns(double t) {
  if (t >= -0.5 && t < 0.5) return t + 0.0;  // normalises -0.0
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;  // t just below an integer can round up
  if (r >= 0.5) r -= 1.0;
  return r;
}
}  // namespace

UnitPhase UnitPhase::from_turns(double turns) {
  if (!std::isfinite(turns))
    throw std::invalid_argument("unit-circle phase must be finite");
  UnitPhase z;
  z.turns_ = reduce_turns(turns);
  return z;
}

UnitPhase UnitPhase::from_phase(double radians) {
  return from_turns(radians / kTwoPi);
}

double UnitPhase::turns() const { return turns_ < 0.0 ? turns_ + 1.0 : turns_; }

double UnitPhase::phase() const { return kTwoPi * turns(); }

std::complex<double> UnitPhase::value() const {
  return std::polar(1.0, kTwoPi * turns_);
}

UnitPhase UnitPhase::conjugated() const { return from_turns(-turns_); }

UnitPhase UnitPhase::pow(int k) const {
  return from_turns(static_cast<double>(k) * turns_);
}

double UnitPhase::pow_minus_one_abs_sq(int k) const {
  const double frac = std::fmod(static_cast<double>(k) * turns_, 1.0);
  const double s = std::sin(kPi * frac);
  return 4.0 * s * s;
}

UnitPhase operator*(UnitPhase lhs, UnitPhase rhs) {
  return UnitPhase::from_turns(lhs.turns_ + rhs.turns_);
}

double re_polylog(int order, UnitPhase z) {
  // Re Li is even in the phase, and |signed turns| is the exact fold onto
  // [0, 1/2]: the values for z and conj(z) come out bit-identical.
  const double t = std::abs(z.signed_turns());
  const double y = t * (t - 1.0);
  switch (order) {
    case 4:
      return -(kPi * kPi * kPi * kPi / 3.0) * (y * y - 1.0 / 30.0);
    case 6: {
      const double pi6 = kPi * kPi * kPi * kPi * kPi * kPi;
      return (2.0 * pi6 / 45.0) * ((y - 0.5) * y * y + 1.0 / 42.0);
    }
    default:
      throw std::invalid_argument("re_polylog supports orders 4 and 6, got " +
                                  std::to_string(order));
  }
}

double re_polylog_series(int order, UnitPhase z, double tol) {
  if (order != 4 && order != 6)
    throw std::invalid_argument("re_polylog_series supports orders 4 and 6, got " +
                                std::to_string(order));
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  // Tail beyond M is below 1/((order-1) M^(order-1)).
  const double exponent = 1.0 / (order - 1);
  long terms = static_cast<long>(
      std::ceil(std::pow(2.0 / ((order - 1) * tol), exponent)));
  if (terms < 16) terms = 16;
  if (terms > 4'000'000) terms = 4'000'000;
  const double t = z.signed_turns();
  // Smallest terms first, compensated summation.
  double sum = 0.0, carry = 0.0;
  for (long k = terms; k >= 1; --k) {
    const double frac = std::fmod(static_cast<double>(k) * t, 1.0);
    double term = std::cos(kTwoPi * frac);
    for (int p = 0; p < order; ++p) term /= static_cast<double>(k);
    const double y = term - carry;
    const double next = sum + y;
    carry = (next - sum) - y;
    sum = next;
  }
  return sum;
}

double q_function(double alpha, UnitPhase z) {
  const UnitPhase z2 = z * z;
  const double li6 = re_polylog(6, z) - re_polylog(6, z2) / 64.0;
  const double li4 = re_polylog(4, z) - re_polylog(4, z2) / 16.0;
  const double pi4 = kPi * kPi * kPi * kPi;
  return 2.0 / pi4 * (alpha * alpha * li6 + li4);
}

}  // namespace fermicav
