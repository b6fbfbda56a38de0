#pragma once

#include <complex>
#include <utility>

namespace fermicav {

// Which mode basis is evaluated on the t = 0 matching surface.
enum class Frame { minkowski, rindler };

// Rigid cavity with walls at 0 < a < b and boundary parameters (s, theta)
// selecting the self-adjoint extension of the Hamiltonian. The derived
// acceleration parameter h = 2(b-a)/(a+b) is the small expansion parameter;
// ln(b/a) = 2 atanh(h/2) holds identically.
//
// s = 0 (charge-symmetric walls) is accepted directly: every closed form
// downstream is continuous there, which realises the s -> 0+ regularisation
// of the zero mode as exact evaluation at s = 0.
class CavityGeometry {
 public:
  static CavityGeometry from_walls(double a, double b, double s = 0.0,
                                   double theta = 0.0);
  // Recovers the walls from (delta, h): a = delta(1/h - 1/2), b = delta(1/h + 1/2).
  static CavityGeometry from_acceleration(double delta, double h, double s = 0.0,
                                          double theta = 0.0);

  double a() const { return a_; }
  double b() const { return b_; }
  double s() const { return s_; }
  double theta() const { return theta_; }

  double delta() const { return b_ - a_; }
  double h() const { return 2.0 * (b_ - a_) / (a_ + b_); }
  double log_ratio() const;  // ln(b/a)

 private:
  CavityGeometry(double a, double b, double s, double theta);

  double a_;
  double b_;
  double s_;
  double theta_;
};

// Integer mode label. Non-negative indices are particle (positive-charge)
// modes, negative indices antiparticle modes; the charge is not independent
// data.
struct ModeSpec {
  int n = 0;
  int charge() const { return n >= 0 ? +1 : -1; }
};

// omega_n = (n+s) pi / delta. Vanishes only for the s = 0, n = 0 zero mode.
double minkowski_frequency(const CavityGeometry& geom, int n);

// Omega_n = (n+s) pi / ln(b/a).
double rindler_frequency(const CavityGeometry& geom, int n);

// eta = 2 tau / (a+b): boost rapidity accumulated over proper time tau at the
// cavity centre. tau must be non-negative.
double rapidity_from_proper_time(const CavityGeometry& geom, double tau);

// Proper time at the cavity centre for a light ray to bounce off each wall
// once: 2 delta atanh(h/2) / (h/2). The degradation is periodic in tau1 with
// this period.
double degradation_period(const CavityGeometry& geom);

// u = tau1 / degradation_period; one full period of the accelerated segment.
double u_parameter(const CavityGeometry& geom, double tau1);

// v = tau2 / (2 delta); one full period of the inertial coast.
double v_parameter(const CavityGeometry& geom, double tau2);

// Scalar coefficients of (U+, U-) in the mode function evaluated at t = 0,
// a <= z <= b. Used by the quadrature oracle for the exact Bogoliubov
// coefficients.
std::pair<std::complex<double>, std::complex<double>> mode_components_at_t0(
    const CavityGeometry& geom, int n, double z, Frame frame);

}  // namespace fermicav
