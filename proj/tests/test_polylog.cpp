#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polylog.hpp"

using namespace fermicav;

namespace {
constexpr double kPi = std::numbers::pi;
const double kZeta4 = kPi * kPi * kPi * kPi / 90.0;
const double kZeta6 = std::pow(kPi, 6) / 945.0;
}  // namespace

TEST_CASE("unit phase reduction") {
  CHECK(UnitPhase::from_turns(0.25).turns() == 0.25);
  CHECK(UnitPhase::from_turns(1.25).turns() == 0.25);
  CHECK(UnitPhase::from_turns(-0.75).turns() == 0.25);
  // Dyadic turns reduce bit-exactly across whole windings.
  for (int i = 0; i < 64; ++i) {
    const double u = i / 64.0;
    CHECK(UnitPhase::from_turns(u + 1.0) == UnitPhase::from_turns(u));
    CHECK(UnitPhase::from_turns(u - 2.0) == UnitPhase::from_turns(u));
  }
  CHECK_THROWS_AS(UnitPhase::from_turns(std::nan("")), std::invalid_argument);
}

TEST_CASE("unit phase value stays on the circle") {
  for (int i = 0; i < 97; ++i) {
    const double phi = 2.0 * kPi * i / 97.0;
    const auto z = UnitPhase::from_phase(phi);
    // The reduction keeps the point within ~1 ulp of phase.
    CHECK(std::abs(z.value() - std::polar(1.0, phi)) < 2e-15);
    CHECK(z.turns() == doctest::Approx(i / 97.0).epsilon(1e-14));
    CHECK(z.phase() >= 0.0);
    CHECK(z.phase() < 2.0 * kPi);
  }
  const auto z = UnitPhase::from_turns(0.3);
  CHECK(std::abs(z.pow(5).value() - std::pow(z.value(), 5)) < 1e-14);
  CHECK(std::abs(z.pow_minus_one_abs_sq(7) - std::norm(std::pow(z.value(), 7) - 1.0)) <
        1e-13);
  CHECK((z * z.conjugated()).turns() == 0.0);
}

TEST_CASE("re_polylog at z = 1 gives zeta values") {
  CHECK(re_polylog(4, UnitPhase::one()) == doctest::Approx(kZeta4).epsilon(1e-15));
  CHECK(re_polylog(6, UnitPhase::one()) == doctest::Approx(kZeta6).epsilon(1e-15));
}

TEST_CASE("re_polylog at z = -1 matches the alternating zeta identity") {
  const auto minus_one = UnitPhase::from_turns(0.5);
  // Re Li_6(-1) = -(31/32) zeta(6); cross-checked by the direct series.
  const double closed = re_polylog(6, minus_one);
  CHECK(closed == doctest::Approx(-(31.0 / 32.0) * kZeta6).epsilon(1e-14));
  CHECK(std::abs(closed - re_polylog_series(6, minus_one)) < 1e-12);
  CHECK(re_polylog(4, minus_one) ==
        doctest::Approx(-(7.0 / 8.0) * kZeta4).epsilon(1e-14));
}

TEST_CASE("re_polylog is even in the phase") {
  for (double phi : {0.3, 1.1, 2.9, 4.4}) {
    CHECK(std::abs(re_polylog(4, UnitPhase::from_phase(phi)) -
                   re_polylog(4, UnitPhase::from_phase(2.0 * kPi - phi))) < 1e-14);
  }
}

TEST_CASE("closed form agrees with the series oracle across the circle") {
  for (int i = 0; i < 1000; ++i) {
    const auto z = UnitPhase::from_turns(i / 1000.0);
    for (int order : {4, 6}) {
      const double closed = re_polylog(order, z);
      const double series = re_polylog_series(order, z);
      REQUIRE(std::abs(closed - series) <= 1e-12);
    }
  }
}

TEST_CASE("unsupported polylog orders are rejected") {
  CHECK_THROWS_AS(re_polylog(5, UnitPhase::one()), std::invalid_argument);
  CHECK_THROWS_AS(re_polylog(2, UnitPhase::one()), std::invalid_argument);
  CHECK_THROWS_AS(re_polylog_series(3, UnitPhase::one()), std::invalid_argument);
}

TEST_CASE("q_function analytic values") {
  // Q(alpha, 1) = alpha^2 pi^2/480 + 1/48; at alpha = 2 this is
  // pi^2/120 + 1/48 = 0.10308003667574464.
  CHECK(q_function(2.0, UnitPhase::one()) ==
        doctest::Approx(kPi * kPi / 120.0 + 1.0 / 48.0).epsilon(1e-15));
  for (double alpha : {0.0, 1.0, 2.5, 4.0}) {
    CHECK(q_function(alpha, UnitPhase::one()) ==
          doctest::Approx(alpha * alpha * kPi * kPi / 480.0 + 1.0 / 48.0)
              .epsilon(1e-15));
    // Li_n((-1)^2) = zeta(n) turns the z = -1 value into exactly -Q(alpha, 1).
    CHECK(q_function(alpha, UnitPhase::from_turns(0.5)) ==
          doctest::Approx(-q_function(alpha, UnitPhase::one())).epsilon(1e-13));
  }
}

TEST_CASE("q_function at alpha = 0 keeps only the order-4 terms") {
  const auto z = UnitPhase::from_turns(0.37);
  const double expected =
      2.0 / std::pow(kPi, 4) *
      (re_polylog(4, z) - re_polylog(4, z * z) / 16.0);
  CHECK(q_function(0.0, z) == expected);
}

TEST_CASE("q_function depends only on the real parts: Q(z) == Q(conj z)") {
  for (int i = 0; i < 200; ++i) {
    const auto z = UnitPhase::from_turns((i + 0.37) / 200.0);
    CHECK(q_function(1.7, z) == q_function(1.7, z.conjugated()));
  }
}

TEST_CASE("alpha^2 coefficient of Q(alpha,1) - Q(alpha,E1) is non-negative") {
  for (int i = 0; i <= 100; ++i) {
    const auto z = UnitPhase::from_turns(i / 100.0);
    // The coefficient is (2/pi^4) sum_{odd d} (1 - cos(d phi))/d^6 >= 0.
    const double li6_diff =
        (re_polylog(6, UnitPhase::one()) - re_polylog(6, z)) -
        (re_polylog(6, UnitPhase::one()) - re_polylog(6, z * z)) / 64.0;
    CHECK(li6_diff >= -1e-16);
    const double coeff = q_function(1.0, UnitPhase::one()) - q_function(1.0, z) -
                         (q_function(0.0, UnitPhase::one()) - q_function(0.0, z));
    CHECK(coeff >= -1e-16);
  }
}
