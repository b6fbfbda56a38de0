#pragma once

#include <complex>

namespace fermicav {

// Point z = e^{2 pi i t} on the unit circle, stored as the reduced winding
// fraction. Keeping t (rather than the phase in radians) as the primary
// datum makes the mod-1 periodicity of every downstream quantity bit-exact:
// from_turns(u) and from_turns(u+1) produce identical objects whenever u+1
// is representable. Internally t lives in [-1/2, 1/2) so that conjugation is
// an exact negation; even functions of the phase are then bit-identical for
// z and conj(z).
class UnitPhase {
 public:
  UnitPhase() = default;

  static UnitPhase from_turns(double turns);
  static UnitPhase from_phase(double radians);
  static UnitPhase one() { return UnitPhase(); }

  double turns() const;                  // winding fraction in [0, 1)
  double signed_turns() const { return turns_; }  // in [-1/2, 1/2)
  double phase() const;                  // 2 pi t, in [0, 2 pi)
  std::complex<double> value() const;    // e^{i phase}
  UnitPhase conjugated() const;          // z -> conj(z)
  UnitPhase pow(int k) const;            // z -> z^k

  // |z^k - 1|^2 = 4 sin^2(pi k t).
  double pow_minus_one_abs_sq(int k) const;

  friend UnitPhase operator*(UnitPhase lhs, UnitPhase rhs);
  friend bool operator==(UnitPhase lhs, UnitPhase rhs) {
    return lhs.turns_ == rhs.turns_;
  }

 private:
  double turns_ = 0.0;
};

// Re Li_order(z) on the unit circle for order 4 or 6. Production path is the
// even-order Bernoulli-polynomial closed form, exact up to rounding:
//   Re Li_4(e^{2 pi i t}) = -(pi^4/3) [y^2 - 1/30],        y = t(t-1)
//   Re Li_6(e^{2 pi i t}) = (2 pi^6/45) [y^3 - y^2/2 + 1/42]
// Throws std::invalid_argument for any other order.
double re_polylog(int order, UnitPhase z);

// Independent oracle: direct cosine series sum_{k>=1} cos(k phi)/k^order with
// the term count chosen from the integral tail bound 1/((order-1) M^(order-1)).
double re_polylog_series(int order, UnitPhase z, double tol = 1e-13);

// Q(alpha, z) = (2/pi^4) Re[ alpha^2 (Li_6(z) - Li_6(z^2)/64)
//                            + Li_4(z) - Li_4(z^2)/16 ].
// Q(alpha, 1) = alpha^2 pi^2/480 + 1/48.
double q_function(double alpha, UnitPhase z);

}  // namespace fermicav
