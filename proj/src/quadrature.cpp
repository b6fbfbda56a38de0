#include "quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <vector>

namespace fermicav {

namespace {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double lo;
  double hi;
  std::complex<double> value;
  double error;
};

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const {
    return a.error < b.error;
  }
};

constexpr int kMaxPanels = 200000;

}  // namespace

QuadratureResult exact_coefficient(const CavityGeometry& geom, int m, int n,
                                   double abs_tol) {
  if (!(abs_tol > 0.0))
    throw std::invalid_argument("quadrature tolerance must be positive");

  long evaluations = 0;
  auto integrand = [&](double z) -> std::complex<double> {
    ++evaluations;
    const auto [mink_plus, mink_minus] =
        mode_components_at_t0(geom, n, z, Frame::minkowski);
    const auto [rind_plus, rind_minus] =
        mode_components_at_t0(geom, m, z, Frame::rindler);
    return std::conj(mink_plus) * rind_plus + std::conj(mink_minus) * rind_minus;
  };

  auto eval_panel = [&](double lo, double hi) {
    Panel p{lo, hi, {0.0, 0.0}, 0.0};
    p.value = GK15::integrate(integrand, lo, hi, 0, 0.0, &p.error);
    return p;
  };

  // Oscillation-aware floor: about two panels per half-period of the combined
  // phase variation across the cavity.
  const double oscillation =
      std::abs(rindler_frequency(geom, m)) * geom.log_ratio() +
      std::abs(minkowski_frequency(geom, n)) * geom.delta();
  const int floor_panels = std::max(
      8, 2 * static_cast<int>(std::ceil(oscillation / std::numbers::pi)));

  std::vector<Panel> panels;
  panels.reserve(floor_panels + 64);
  double total_error = 0.0;
  const double width = geom.delta() / floor_panels;
  for (int i = 0; i < floor_panels; ++i) {
    const double lo = geom.a() + i * width;
    const double hi = i + 1 == floor_panels ? geom.b() : geom.a() + (i + 1) * width;
    panels.push_back(eval_panel(lo, hi));
    total_error += panels.back().error;
  }
  std::make_heap(panels.begin(), panels.end(), ByError{});

  while (total_error > abs_tol &&
         panels.size() < static_cast<std::size_t>(kMaxPanels)) {
    std::pop_heap(panels.begin(), panels.end(), ByError{});
    const Panel worst = panels.back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) break;  // cannot split further
    panels.pop_back();
    Panel left = eval_panel(worst.lo, mid);
    Panel right = eval_panel(mid, worst.hi);
    total_error += left.error + right.error - worst.error;
    panels.push_back(left);
    std::push_heap(panels.begin(), panels.end(), ByError{});
    panels.push_back(right);
    std::push_heap(panels.begin(), panels.end(), ByError{});
  }

  // Re-accumulate from the surviving panels, ordered by position so that the
  // result does not depend on the refinement history.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  std::complex<double> total{0.0, 0.0};
  total_error = 0.0;
  for (const Panel& p : panels) {
    total += p.value;
    total_error += p.error;
  }

  if (total_error > abs_tol)
    throw QuadratureError("quadrature for A[" + std::to_string(m) + "," +
                              std::to_string(n) + "] did not reach tolerance " +
                              std::to_string(abs_tol),
                          total_error);
  return QuadratureResult{total, total_error, evaluations};
}

}  // namespace fermicav
