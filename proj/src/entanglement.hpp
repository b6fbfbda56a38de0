#pragma once

#include <optional>

#include "bogoliubov.hpp"
#include "geometry.hpp"
#include "polylog.hpp"

namespace fermicav {

// Everything here works with the h^2-coefficient of the degradation function
// f_k; the numeric acceleration parameter is injected only where a state
// measure is reported. E1 = e^{2 pi i u} carries the accelerated-segment
// duration (one turn per degradation period), E2 = e^{2 pi i v} the inertial
// coast (one turn per 2 delta of proper time).

// Truncated series sum_{p in [-M, M]} |E1^(k-p) - 1|^2 |A^(1)_kp|^2.
double fk_series(const CavityGeometry& geom, int k, UnitPhase e1, int window);

struct FkSplit {
  double plus = 0.0;   // particle sector, p >= 0
  double minus = 0.0;  // antiparticle sector, p < 0
  double total() const { return plus + minus; }
};
FkSplit fk_split_series(const CavityGeometry& geom, int k, UnitPhase e1,
                        int window);

// Closed form 2[Q(alpha,1) - Q(alpha,E1)] with alpha = 2(k+s). Non-negative;
// vanishes iff E1 = 1.
double fk_closed(const CavityGeometry& geom, int k, UnitPhase e1);

// One-way trip (accelerate, coast, mirrored braking):
//   2[2Q(1) - 2Q(E1) + Q(E2) - 2Q(E1 E2) + Q(E1^2 E2)] at alpha = 2(k+s).
// Vanishes iff E1 = 1 or E1 E2 = 1.
double oneway_fk(const CavityGeometry& geom, int k, UnitPhase e1, UnitPhase e2);

// Product-formula series sum_p |E1^(k-p)-1|^2 |(E1 E2)^(k-p)-1|^2 |A^(1)_kp|^2,
// the independent oracle for oneway_fk.
double oneway_fk_series(const CavityGeometry& geom, int k, UnitPhase e1,
                        UnitPhase e2, int window);

// Upper bound on the series tail dropped beyond |p| > window (diagnostic
// column in sweep outputs). `oneway` accounts for the extra |.|^2 <= 4 factor.
double fk_tail_bound(int k, double s, int window, bool oneway = false);

// N = (1 - f_k h^2) / 2 for the maximally entangled two-mode states.
double negativity_two_mode(double f_coefficient, double h);

// <B_max> = 2 sqrt(2) (1 - f_k h^2 / 2) via the Horodecki criterion.
double chsh_max_two_mode(double f_coefficient, double h);

// Same quantity through the correlation-matrix eigenvalues
// U = diag(1-f, 1-f, ...): 2 sqrt(2 (1 - f h^2)). Agrees with
// chsh_max_two_mode to O(h^4).
double chsh_max_two_mode_eigen_route(double f_coefficient, double h);

struct ChargeNegativity {
  double negativity;
  // (1/2)|E1^(k-k')-1|^2 (|(E1E2)^(k-k')-1|^2) |A^(1)_kk'|^2 h^2, the
  // opposite-charge interference contribution; zero whenever k-k' is even.
  double interference_term;
};

// Negativity of the charge-entangled state:
//   1/2 - (f_k + f_k')h^2/4 + interference.
// Requires k >= 0 > k'. Pass e2 for the one-way variant.
ChargeNegativity negativity_charge(const CavityGeometry& geom, int k,
                                   int k_prime, UnitPhase e1,
                                   std::optional<UnitPhase> e2, double h);

enum class StateFamily { two_mode_plus, two_mode_minus, charge };

StateFamily state_family_from_name(const std::string& name);
std::string state_family_name(StateFamily family);

struct OracleOptions {
  // Reverse the two-particle basis ordering, which flips the sign of the
  // off-diagonal interference entries in the charge-state matrix elements.
  bool flip_pair_basis = false;
};

struct OracleResult {
  double negativity = 0.0;
  double chsh_max = 0.0;           // two-mode families only; NaN for charge
  double interference_term = 0.0;  // charge family only; 0 otherwise
  double trace_error = 0.0;        // |Tr rho - 1| of the assembled state
};

// Reduced-density-matrix route: assembles the traced matrix elements from the
// composite Bogoliubov matrix (f_k^± leakage weights, A^(2)_kk, order-0
// phases, interference sums), partially transposes, and solves the small
// eigenproblems in closed form. Two-mode families also report the CHSH
// maximum from the correlation matrix T_ij = Tr[rho sigma_i x sigma_j].
// Agreement with the closed forms above is O(h^4); this is the independent
// oracle behind them.
OracleResult density_matrix_oracle(StateFamily family, int k,
                                   std::optional<int> k_prime,
                                   const PerturbativeMatrix& composite, double h,
                                   const OracleOptions& options = {});

// Convenience overload building the grafted composite first.
OracleResult density_matrix_oracle(StateFamily family, int k,
                                   std::optional<int> k_prime,
                                   const TravelScenario& scenario, double h,
                                   int window, const OracleOptions& options = {});

// Perturbative validity warning threshold: |k| h >= 0.3.
bool validity_flag(int k, double h);

struct EntanglementReport {
  double fk_plus = 0.0;   // h^2-coefficients
  double fk_minus = 0.0;
  double f_k = 0.0;       // fk_plus + fk_minus
  double negativity = 0.0;
  double chsh_max = 0.0;
  double interference_term = 0.0;
};

}  // namespace fermicav
