#include "entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fermicav {

namespace {

constexpr double kPi = std::numbers::pi;

double alpha_of(const CavityGeometry& geom, int k) {
  // alpha^2 is the coefficient pairing with the order-6 polylogs; the series
  // representation forces alpha = 2(k+s).
  return 2.0 * (k + geom.s());
}

void check_series_window(int window) {
  if (window < 1)
    throw std::invalid_argument("series window must be >= 1, got " +
                                std::to_string(window));
}

void check_h(double h) {
  if (!(std::isfinite(h) && h >= 0.0))
    throw std::invalid_argument("acceleration parameter must be >= 0, got " +
                                std::to_string(h));
}

// Eigenvalues of a Hermitian [[d1, x], [conj(x), d2]].
std::array<double, 2> herm2_eigenvalues(double d1, double d2,
                                        std::complex<double> x) {
  const double mid = 0.5 * (d1 + d2);
  const double rad = std::hypot(0.5 * (d1 - d2), std::abs(x));
  return {mid - rad, mid + rad};
}

// Eigenvalues of a symmetric 3x3 matrix, closed trigonometric form.
std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& u) {
  const double off_sq = u[0][1] * u[0][1] + u[0][2] * u[0][2] + u[1][2] * u[1][2];
  if (off_sq == 0.0) return {u[0][0], u[1][1], u[2][2]};
  const double q = (u[0][0] + u[1][1] + u[2][2]) / 3.0;
  double p2 = 2.0 * off_sq;
  for (int i = 0; i < 3; ++i) p2 += (u[i][i] - q) * (u[i][i] - q);
  const double p = std::sqrt(p2 / 6.0);
  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (u[i][j] - (i == j ? q : 0.0)) / p;
  const double det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                       b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                       b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(0.5 * det_b, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  return {e1, 3.0 * q - e1 - e3, e3};
}

struct TwoModeElements {
  double vacuum_leak;   // weight Tr_not-k |0><0| sheds into the excited state
  double excited_leak;  // weight Tr_not-k |1><1| sheds back onto the vacuum
  std::complex<double> coherence;  // coefficient of |0~><1~|
};

TwoModeElements traced_two_mode_elements(int k,
                                         const PerturbativeMatrix& composite,
                                         double h) {
  const int window = composite.window();
  double fk_plus = 0.0, fk_minus = 0.0;
  for (int p = -window; p <= window; ++p) {
    const double w = std::norm(composite.order1(p, k));
    (p >= 0 ? fk_plus : fk_minus) += w;
  }
  fk_plus *= h * h;
  fk_minus *= h * h;
  const std::complex<double> lambda =
      composite.order0(k) + h * h * composite.order2(k, k);
  // For k >= 0 the vacuum element leaks f_k^- into the oppositely charged
  // sector and the coherence carries (G_k + A^(2)_kk); for k < 0 the sector
  // roles and the conjugation swap.
  if (k >= 0) return {fk_minus, fk_plus, lambda};
  return {fk_plus, fk_minus, std::conj(lambda)};
}

}  // namespace

double fk_series(const CavityGeometry& geom, int k, UnitPhase e1, int window) {
  return fk_split_series(geom, k, e1, window).total();
}

FkSplit fk_split_series(const CavityGeometry& geom, int k, UnitPhase e1,
                        int window) {
  check_series_window(window);
  FkSplit split;
  for (int p = -window; p <= window; ++p) {
    const double a1 = first_order_entry(k, p, geom.s());
    if (a1 == 0.0) continue;
    const double term = e1.pow_minus_one_abs_sq(k - p) * a1 * a1;
    (p >= 0 ? split.plus : split.minus) += term;
  }
  return split;
}

double fk_closed(const CavityGeometry& geom, int k, UnitPhase e1) {
  const double alpha = alpha_of(geom, k);
  const double f =
      2.0 * (q_function(alpha, UnitPhase::one()) - q_function(alpha, e1));
  // Non-negative by construction; cancellation can leave a few ulps of the
  // wrong sign near the zeros.
  return std::max(f, 0.0);
}

double oneway_fk(const CavityGeometry& geom, int k, UnitPhase e1, UnitPhase e2) {
  const double alpha = alpha_of(geom, k);
  const UnitPhase e12 = e1 * e2;
  const UnitPhase e112 = e1 * e12;
  const double f = 2.0 * (2.0 * q_function(alpha, UnitPhase::one()) -
                          2.0 * q_function(alpha, e1) + q_function(alpha, e2) -
                          2.0 * q_function(alpha, e12) + q_function(alpha, e112));
  return std::max(f, 0.0);
}

double oneway_fk_series(const CavityGeometry& geom, int k, UnitPhase e1,
                        UnitPhase e2, int window) {
  check_series_window(window);
  const UnitPhase e12 = e1 * e2;
  double sum = 0.0;
  for (int p = -window; p <= window; ++p) {
    const double a1 = first_order_entry(k, p, geom.s());
    if (a1 == 0.0) continue;
    sum += e1.pow_minus_one_abs_sq(k - p) * e12.pow_minus_one_abs_sq(k - p) *
           a1 * a1;
  }
  return sum;
}

double fk_tail_bound(int k, double s, int window, bool oneway) {
  check_series_window(window);
  const double cap = oneway ? 16.0 : 4.0;
  double tail = 0.0;
  // Terms decay like p^-4; 50k explicit terms leave a negligible remainder.
  for (int p = window + 1; p <= window + 50000; ++p) {
    const double above = first_order_entry(k, p, s);
    const double below = first_order_entry(k, -p, s);
    tail += above * above + below * below;
  }
  return cap * tail;
}

double negativity_two_mode(double f_coefficient, double h) {
  check_h(h);
  const double f = f_coefficient * h * h;
  if (f > 1.0)
    throw std::invalid_argument(
        "degradation f h^2 exceeds 1; outside the perturbative regime");
  return 0.5 * (1.0 - f);
}

double chsh_max_two_mode(double f_coefficient, double h) {
  check_h(h);
  const double f = f_coefficient * h * h;
  if (f > 1.0)
    throw std::invalid_argument(
        "degradation f h^2 exceeds 1; outside the perturbative regime");
  return 2.0 * std::numbers::sqrt2 * (1.0 - 0.5 * f);
}

double chsh_max_two_mode_eigen_route(double f_coefficient, double h) {
  check_h(h);
  const double f = f_coefficient * h * h;
  if (f > 1.0)
    throw std::invalid_argument(
        "degradation f h^2 exceeds 1; outside the perturbative regime");
  // mu1 = mu2 = 1 - f are the two largest eigenvalues of U(rho).
  return 2.0 * std::sqrt(2.0 * (1.0 - f));
}

ChargeNegativity negativity_charge(const CavityGeometry& geom, int k,
                                   int k_prime, UnitPhase e1,
                                   std::optional<UnitPhase> e2, double h) {
  check_h(h);
  if (k < 0 || k_prime >= 0)
    throw std::invalid_argument(
        "charge state requires k >= 0 and k' < 0, got k=" + std::to_string(k) +
        " k'=" + std::to_string(k_prime));
  double fk, fkp;
  double interference =
      e1.pow_minus_one_abs_sq(k - k_prime) *
      std::pow(first_order_entry(k, k_prime, geom.s()), 2);
  if (e2) {
    fk = oneway_fk(geom, k, e1, *e2);
    fkp = oneway_fk(geom, k_prime, e1, *e2);
    interference *= (e1 * *e2).pow_minus_one_abs_sq(k - k_prime);
  } else {
    fk = fk_closed(geom, k, e1);
    fkp = fk_closed(geom, k_prime, e1);
  }
  const double h2 = h * h;
  ChargeNegativity out;
  out.interference_term = 0.5 * interference * h2;
  out.negativity = 0.5 - 0.25 * (fk + fkp) * h2 + out.interference_term;
  return out;
}

StateFamily state_family_from_name(const std::string& name) {
  if (name == "two-mode-plus") return StateFamily::two_mode_plus;
  if (name == "two-mode-minus") return StateFamily::two_mode_minus;
  if (name == "charge") return StateFamily::charge;
  throw std::invalid_argument(
      "unknown state family '" + name +
      "' (expected two-mode-plus, two-mode-minus or charge)");
}

std::string state_family_name(StateFamily family) {
  switch (family) {
    case StateFamily::two_mode_plus: return "two-mode-plus";
    case StateFamily::two_mode_minus: return "two-mode-minus";
    case StateFamily::charge: return "charge";
  }
  throw std::logic_error("unreachable state family");
}

bool validity_flag(int k, double h) { return std::abs(k) * h >= 0.3; }

namespace {

OracleResult two_mode_oracle(StateFamily family, int k,
                             const PerturbativeMatrix& composite, double h) {
  const double sign = family == StateFamily::two_mode_plus ? 1.0 : -1.0;
  const TwoModeElements el = traced_two_mode_elements(k, composite, h);

  // Basis {A0 R0, A0 R1, A1 R0, A1 R1}; Alice carries the partner mode.
  std::array<std::complex<double>, 16> rho{};
  auto at = [&rho](int i, int j) -> std::complex<double>& {
    return rho[static_cast<std::size_t>(4 * i + j)];
  };
  at(0, 0) = 0.5 * (1.0 - el.vacuum_leak);
  at(1, 1) = 0.5 * el.vacuum_leak;
  at(2, 2) = 0.5 * el.excited_leak;
  at(3, 3) = 0.5 * (1.0 - el.excited_leak);
  at(0, 3) = 0.5 * sign * el.coherence;
  at(3, 0) = std::conj(at(0, 3));

  OracleResult out;
  out.trace_error =
      std::abs(at(0, 0) + at(1, 1) + at(2, 2) + at(3, 3) - 1.0);

  // Partial transpose in Rob's index moves the coherence onto the
  // {A0 R1, A1 R0} block; only that block can turn negative.
  const auto eig = herm2_eigenvalues(at(1, 1).real(), at(2, 2).real(), at(0, 3));
  out.negativity = eig[0] < 0.0 ? -eig[0] : 0.0;

  // Horodecki criterion from T_ij = Tr[rho sigma_i x sigma_j].
  const std::complex<double> i1(0.0, 1.0);
  const std::array<std::array<std::complex<double>, 4>, 3> pauli = {{
      {{0.0, 1.0, 1.0, 0.0}},
      {{0.0, -i1, i1, 0.0}},
      {{1.0, 0.0, 0.0, -1.0}},
  }};
  std::array<std::array<double, 3>, 3> correlation{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      std::complex<double> tr = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          // (sigma_a x sigma_b)_{ji} for Tr[rho S]; i,j run over the pair
          // basis with Alice index i/2 and Rob index i%2.
          const std::complex<double> s =
              pauli[a][2 * (j / 2) + (i / 2)] * pauli[b][2 * (j % 2) + (i % 2)];
          tr += at(i, j) * s;
        }
      correlation[a][b] = tr.real();
    }
  }
  std::array<std::array<double, 3>, 3> u{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) u[a][b] += correlation[c][a] * correlation[c][b];
  auto mu = sym3_eigenvalues(u);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  out.chsh_max = 2.0 * std::sqrt(mu[0] + mu[1]);
  out.interference_term = 0.0;
  return out;
}

OracleResult charge_oracle(int k, int k_prime,
                           const PerturbativeMatrix& composite, double h,
                           const OracleOptions& options) {
  if (k < 0 || k_prime >= 0)
    throw std::invalid_argument(
        "charge state requires k >= 0 and k' < 0, got k=" + std::to_string(k) +
        " k'=" + std::to_string(k_prime));
  const int window = composite.window();
  const double h2 = h * h;
  const std::complex<double> gk = composite.order0(k);
  const std::complex<double> gkp = composite.order0(k_prime);

  double fk_plus = 0.0, fk_minus = 0.0, fkp_plus = 0.0, fkp_minus = 0.0;
  std::complex<double> sigma_plus = 0.0, sigma_minus = 0.0;
  for (int p = -window; p <= window; ++p) {
    const std::complex<double> ak = composite.order1(p, k);
    const std::complex<double> akp = composite.order1(p, k_prime);
    const std::complex<double> cross = std::conj(ak) * akp;
    if (p >= 0) {
      fk_plus += std::norm(ak);
      fkp_plus += std::norm(akp);
      sigma_plus += cross;
    } else {
      fk_minus += std::norm(ak);
      fkp_minus += std::norm(akp);
      sigma_minus += cross;
    }
  }
  fk_plus *= h2;
  fk_minus *= h2;
  fkp_plus *= h2;
  fkp_minus *= h2;
  const std::complex<double> prefactor = gk * std::conj(gkp);
  sigma_plus *= prefactor * h2;
  sigma_minus *= prefactor * h2;
  if (options.flip_pair_basis) {
    sigma_plus = -sigma_plus;
    sigma_minus = -sigma_minus;
  }

  const double interference_sq = std::norm(composite.order1(k, k_prime)) * h2;
  // A_kk A_k'k' kept to order h^2.
  const std::complex<double> pair_phase =
      gk * gkp + gkp * composite.order2(k, k) * h2 +
      gk * composite.order2(k_prime, k_prime) * h2;
  const std::complex<double> lambda_chi =
      gk * gkp * interference_sq + pair_phase;

  // After the partial transpose the 8x8 support splits into two 3x3 blocks
  // (one per Alice label, with the pair state coupled to the doubly-traced
  // vacuum) and the 2x2 charge-interference block with eigenvalues
  // +-|lambda_chi|/2.
  OracleResult out;
  out.negativity = 0.0;
  auto absorb = [&out](double eig) {
    if (eig < 0.0) out.negativity -= eig;
  };

  // Alice holds the particle; Rob's traced element from |1_k'><1_k'|.
  const double b1_d0 = 0.5 * fkp_minus;
  const double b1_d1 = 0.5 * (1.0 - fkp_minus - fk_minus + interference_sq);
  const double b1_d2 = 0.5 * (fk_minus - interference_sq);
  absorb(b1_d1);
  for (double eig : herm2_eigenvalues(b1_d0, b1_d2, 0.5 * sigma_minus))
    absorb(eig);

  // Alice holds the antiparticle; Rob's traced element from |1_k><1_k|.
  const double b2_d0 = 0.5 * fk_plus;
  const double b2_d1 = 0.5 * (1.0 - fkp_plus - fk_plus + interference_sq);
  const double b2_d2 = 0.5 * (fkp_plus - interference_sq);
  absorb(b2_d1);
  for (double eig : herm2_eigenvalues(b2_d0, b2_d2, -0.5 * sigma_plus))
    absorb(eig);

  absorb(-0.5 * std::abs(lambda_chi));

  const double trace = b1_d0 + b1_d1 + b1_d2 + b2_d0 + b2_d1 + b2_d2;
  out.trace_error = std::abs(trace - 1.0);
  out.interference_term = 0.5 * interference_sq;
  out.chsh_max = std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace

OracleResult density_matrix_oracle(StateFamily family, int k,
                                   std::optional<int> k_prime,
                                   const PerturbativeMatrix& composite, double h,
                                   const OracleOptions& options) {
  check_h(h);
  composite.index_of(k);  // range check
  if (family == StateFamily::charge) {
    if (!k_prime)
      throw std::invalid_argument("charge family requires the k' mode index");
    composite.index_of(*k_prime);
    return charge_oracle(k, *k_prime, composite, h, options);
  }
  return two_mode_oracle(family, k, composite, h);
}

OracleResult density_matrix_oracle(StateFamily family, int k,
                                   std::optional<int> k_prime,
                                   const TravelScenario& scenario, double h,
                                   int window, const OracleOptions& options) {
  const PerturbativeMatrix composite = graft(scenario, window);
  return density_matrix_oracle(family, k, k_prime, composite, h, options);
}

}  // namespace fermicav
