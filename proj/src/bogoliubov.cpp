#include "bogoliubov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fermicav {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i x} with the winding reduced through fmod, which is exact; this
// keeps diagonal phases bit-identical across mode indices whenever the
// fractional parts coincide (e.g. a full period, where all entries reduce to
// e^{2 pi i s}).
std::complex<double> unit_from_turns(double x) {
  double frac = std::fmod(x, 1.0);
  return std::polar(1.0, kTwoPi * frac);
}

void check_window(int window) {
  if (window < 1)
    throw std::invalid_argument("matrix window must be >= 1, got " +
                                std::to_string(window));
}

}  // namespace

double first_order_entry(int m, int n, double s) {
  if (m == n || ((m + n) & 1) == 0) return 0.0;
  const double d = static_cast<double>(m) - static_cast<double>(n);
  return -(m + n + 2.0 * s) / (kPi * kPi * d * d * d);
}

double second_order_entry(int m, int n, double s) {
  if (m == n) {
    const double ns = n + s;
    return -(1.0 / 96.0 + kPi * kPi * ns * ns / 240.0);
  }
  if (((m + n) & 1) != 0) return 0.0;
  const double d = static_cast<double>(m) - static_cast<double>(n);
  const double ms = m + s;
  const double ns = n + s;
  return (ms * ms + 3.0 * ns * ns + 8.0 * ms * ns) / (4.0 * kPi * kPi * d * d * d * d);
}

void validate(const TravelScenario& scenario) {
  if (scenario.segments.empty())
    throw std::invalid_argument("travel scenario requires at least one segment");
  for (const Segment& seg : scenario.segments) {
    if (!(std::isfinite(seg.duration) && seg.duration >= 0.0))
      throw std::invalid_argument(
          "segment durations must be finite and non-negative, got " +
          std::to_string(seg.duration));
  }
}

SegmentKind segment_kind_from_name(const std::string& name) {
  if (name == "accelerate-right") return SegmentKind::accelerate_right;
  if (name == "accelerate-left") return SegmentKind::accelerate_left;
  if (name == "inertial") return SegmentKind::inertial;
  throw std::invalid_argument(
      "unknown segment kind '" + name +
      "' (expected accelerate-right, accelerate-left or inertial)");
}

std::string segment_kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::accelerate_right: return "accelerate-right";
    case SegmentKind::accelerate_left: return "accelerate-left";
    case SegmentKind::inertial: return "inertial";
  }
  throw std::logic_error("unreachable segment kind");
}

PerturbativeMatrix::PerturbativeMatrix(int window) : window_(window) {
  check_window(window);
  const int n = dim();
  g_ = Eigen::VectorXcd::Ones(n);
  o1_ = Eigen::MatrixXcd::Zero(n, n);
  o2_ = Eigen::MatrixXcd::Zero(n, n);
}

int PerturbativeMatrix::index_of(int n) const {
  if (n < -window_ || n > window_)
    throw std::out_of_range("mode index " + std::to_string(n) +
                            " outside window [-" + std::to_string(window_) +
                            ", " + std::to_string(window_) + "]");
  return n + window_;
}

std::complex<double> PerturbativeMatrix::order0(int n) const {
  return g_(index_of(n));
}

std::complex<double> PerturbativeMatrix::order1(int m, int n) const {
  return o1_(index_of(m), index_of(n));
}

std::complex<double> PerturbativeMatrix::order2(int m, int n) const {
  return o2_(index_of(m), index_of(n));
}

std::complex<double> PerturbativeMatrix::entry(int m, int n, double h) const {
  const int i = index_of(m);
  const int j = index_of(n);
  std::complex<double> value = h * o1_(i, j) + h * h * o2_(i, j);
  if (i == j) value += g_(i);
  return value;
}

PerturbativeMatrix segment_matrix_accel(const CavityGeometry& geom, double eta1,
                                        BoostDirection direction, int window,
                                        int max_order) {
  check_window(window);
  if (!(std::isfinite(eta1) && eta1 >= 0.0))
    throw std::invalid_argument("rapidity must be non-negative, got " +
                                std::to_string(eta1));
  if (max_order < 1 || max_order > 2)
    throw std::invalid_argument("max_order must be 1 or 2");

  const int n = 2 * window + 1;
  const double s = geom.s();
  // Omega_n eta1 = 2 pi (n+s) t with t = eta1 / (2 ln(b/a)).
  const double t = eta1 / (2.0 * geom.log_ratio());
  const double sign = direction == BoostDirection::right ? 1.0 : -1.0;

  PerturbativeMatrix mat(window);
  Eigen::VectorXcd& g = mat.mutable_order0();
  for (int i = 0; i < n; ++i) g(i) = unit_from_turns((i - window + s) * t);

  Eigen::MatrixXd a1(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a1(i, j) = first_order_entry(i - window, j - window, s);

  Eigen::MatrixXcd& o1 = mat.mutable_order1();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      o1(i, j) = sign * a1(i, j) * (g(i) - g(j));

  if (max_order == 2) {
    // A^(2) terms scale by the direction sign squared, i.e. not at all.
    Eigen::MatrixXd a2(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a2(i, j) = second_order_entry(i - window, j - window, s);

    // (A^(1))^T diag(G) A^(1), split into real and imaginary dgemms.
    const Eigen::VectorXd gre = g.real();
    const Eigen::VectorXd gim = g.imag();
    const Eigen::MatrixXd t_re = a1.transpose() * (gre.asDiagonal() * a1);
    const Eigen::MatrixXd t_im = a1.transpose() * (gim.asDiagonal() * a1);

    Eigen::MatrixXcd& o2 = mat.mutable_order2();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        o2(i, j) = g(i) * a2(i, j) + a2(j, i) * g(j) +
                   std::complex<double>(t_re(i, j), t_im(i, j));
  }
  return mat;
}

PerturbativeMatrix inertial_phase_matrix(const CavityGeometry& geom, double tau,
                                         int window) {
  check_window(window);
  if (!(std::isfinite(tau) && tau >= 0.0))
    throw std::invalid_argument("coast duration must be non-negative, got " +
                                std::to_string(tau));
  // omega_n tau = 2 pi (n+s) v with v = tau / (2 delta).
  const double v = tau / (2.0 * geom.delta());
  PerturbativeMatrix mat(window);
  Eigen::VectorXcd& g = mat.mutable_order0();
  for (int i = 0; i < mat.dim(); ++i)
    g(i) = unit_from_turns((i - window + geom.s()) * v);
  return mat;
}

PerturbativeMatrix compose(const PerturbativeMatrix& later,
                           const PerturbativeMatrix& earlier) {
  if (later.window() != earlier.window())
    throw std::invalid_argument("cannot compose matrices with windows " +
                                std::to_string(later.window()) + " and " +
                                std::to_string(earlier.window()));
  const int n = later.dim();
  const Eigen::VectorXcd& xg = later.order0_diagonal();
  const Eigen::VectorXcd& yg = earlier.order0_diagonal();
  const Eigen::MatrixXcd& x1 = later.order1_matrix();
  const Eigen::MatrixXcd& y1 = earlier.order1_matrix();

  PerturbativeMatrix out(later.window());
  out.mutable_order0() = xg.cwiseProduct(yg);

  Eigen::MatrixXcd& o1 = out.mutable_order1();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      o1(i, j) = xg(i) * y1(i, j) + x1(i, j) * yg(j);

  Eigen::MatrixXcd& o2 = out.mutable_order2();
  o2.noalias() = x1 * y1;
  const Eigen::MatrixXcd& x2 = later.order2_matrix();
  const Eigen::MatrixXcd& y2 = earlier.order2_matrix();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      o2(i, j) += xg(i) * y2(i, j) + x2(i, j) * yg(j);
  return out;
}

PerturbativeMatrix graft(const TravelScenario& scenario, int window,
                         int max_order) {
  validate(scenario);
  check_window(window);

  auto build = [&](const Segment& seg) {
    switch (seg.kind) {
      case SegmentKind::accelerate_right:
      case SegmentKind::accelerate_left: {
        const double eta =
            rapidity_from_proper_time(scenario.geometry, seg.duration);
        const BoostDirection dir = seg.kind == SegmentKind::accelerate_right
                                       ? BoostDirection::right
                                       : BoostDirection::left;
        return segment_matrix_accel(scenario.geometry, eta, dir, window,
                                    max_order);
      }
      case SegmentKind::inertial:
        return inertial_phase_matrix(scenario.geometry, seg.duration, window);
    }
    throw std::logic_error("unreachable segment kind");
  };

  PerturbativeMatrix result = build(scenario.segments.front());
  for (std::size_t i = 1; i < scenario.segments.size(); ++i)
    result = compose(build(scenario.segments[i]), result);
  return result;
}

UnitarityResidual unitarity_residuals(const PerturbativeMatrix& mat,
                                      int eval_window) {
  if (eval_window < 0 || eval_window > mat.window())
    throw std::invalid_argument("evaluation window must lie in [0, window]");
  const int offset = mat.window() - eval_window;
  const int w = 2 * eval_window + 1;
  const Eigen::VectorXcd& g = mat.order0_diagonal();
  const Eigen::MatrixXcd& o1 = mat.order1_matrix();
  const Eigen::MatrixXcd& o2 = mat.order2_matrix();

  // (O1^dagger O1) restricted to the block only needs the block's columns.
  const Eigen::MatrixXcd cols = o1.middleCols(offset, w);
  const Eigen::MatrixXcd gram = cols.adjoint() * cols;

  UnitarityResidual res{0.0, 0.0};
  for (int j = 0; j < w; ++j) {
    for (int i = 0; i < w; ++i) {
      const int gi = offset + i;
      const int gj = offset + j;
      const std::complex<double> r1 =
          std::conj(g(gi)) * o1(gi, gj) + std::conj(o1(gj, gi)) * g(gj);
      const std::complex<double> r2 = std::conj(g(gi)) * o2(gi, gj) +
                                      std::conj(o2(gj, gi)) * g(gj) +
                                      gram(i, j);
      res.order1 = std::max(res.order1, std::abs(r1));
      res.order2 = std::max(res.order2, std::abs(r2));
    }
  }
  return res;
}

VMatrix::VMatrix(int window, Eigen::MatrixXcd first_order)
    : window_(window), v1_(std::move(first_order)) {
  check_window(window);
  if (v1_.rows() != window_ + 1 || v1_.cols() != window_)
    throw std::invalid_argument("V matrix block has inconsistent shape");
}

std::complex<double> VMatrix::entry(int p, int q) const {
  if (p < 0 || p > window_)
    throw std::out_of_range("V row index must lie in [0, window], got " +
                            std::to_string(p));
  if (q < -window_ || q > -1)
    throw std::out_of_range("V column index must lie in [-window, -1], got " +
                            std::to_string(q));
  return v1_(p, q + window_);
}

double VMatrix::pair_weight() const { return v1_.squaredNorm(); }

double VMatrix::normalisation(double h) const {
  return 1.0 - 0.5 * pair_weight() * h * h;
}

VMatrix vacuum_v_matrix(const PerturbativeMatrix& mat) {
  const int m = mat.window();
  Eigen::MatrixXcd v1(m + 1, m);
  // V^(1)_pq = -O1_qp G_p*; rows p = 0..M live at storage offset M.
  const Eigen::VectorXcd& g = mat.order0_diagonal();
  const Eigen::MatrixXcd& o1 = mat.order1_matrix();
  for (int jq = 0; jq < m; ++jq)
    for (int ip = 0; ip <= m; ++ip)
      v1(ip, jq) = -o1(jq, ip + m) * std::conj(g(ip + m));
  return VMatrix(m, std::move(v1));
}

}  // namespace fermicav
