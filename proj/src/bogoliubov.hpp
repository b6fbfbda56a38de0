#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "geometry.hpp"

namespace fermicav {

// Coefficient of h in the Minkowski->Rindler Bogoliubov matrix:
//   A^(1)_mn = [(-1)^(m+n) - 1](m+n+2s) / (2 pi^2 (m-n)^3),  A^(1)_nn = 0.
// Real, antisymmetric, nonzero only for odd m+n.
double first_order_entry(int m, int n, double s);

// Coefficient of h^2:
//   A^(2)_nn = -(1/96 + pi^2 (n+s)^2 / 240)
//   A^(2)_mn = [(-1)^(m+n) + 1]/(8 pi^2 (m-n)^4)
//              * [(m+s)^2 + 3(n+s)^2 + 8(m+s)(n+s)]   (m != n)
// Nonzero off the diagonal only for even m+n.
double second_order_entry(int m, int n, double s);

enum class BoostDirection { right, left };

enum class SegmentKind { accelerate_right, accelerate_left, inertial };

// One trajectory segment; duration is proper time at the cavity centre.
struct Segment {
  SegmentKind kind;
  double duration;
};

// Grafted trajectory: ordered inertial / uniformly-accelerated segments of a
// single rigid cavity.
struct TravelScenario {
  CavityGeometry geometry;
  std::vector<Segment> segments;
};

// Throws std::invalid_argument unless the scenario has at least one segment
// and every duration is finite and non-negative.
void validate(const TravelScenario& scenario);

SegmentKind segment_kind_from_name(const std::string& name);
std::string segment_kind_name(SegmentKind kind);

// Bogoliubov transformation stored per order in the acceleration parameter h
// over the mode window -M..M:
//   A(h) = diag(order0) + h * order1 + h^2 * order2 + O(h^3).
// order0 entries have unit modulus; the numeric h is injected only when an
// entry is evaluated, so one matrix serves sweeps over h.
class PerturbativeMatrix {
 public:
  explicit PerturbativeMatrix(int window);  // identity transformation

  int window() const { return window_; }
  int dim() const { return 2 * window_ + 1; }

  std::complex<double> order0(int n) const;
  std::complex<double> order1(int m, int n) const;
  std::complex<double> order2(int m, int n) const;

  // delta_mn order0 + h order1 + h^2 order2.
  std::complex<double> entry(int m, int n, double h) const;

  const Eigen::VectorXcd& order0_diagonal() const { return g_; }
  const Eigen::MatrixXcd& order1_matrix() const { return o1_; }
  const Eigen::MatrixXcd& order2_matrix() const { return o2_; }

  Eigen::VectorXcd& mutable_order0() { return g_; }
  Eigen::MatrixXcd& mutable_order1() { return o1_; }
  Eigen::MatrixXcd& mutable_order2() { return o2_; }

  int index_of(int n) const;  // n -> storage row/column, validated

 private:
  int window_;
  Eigen::VectorXcd g_;
  Eigen::MatrixXcd o1_;
  Eigen::MatrixXcd o2_;
};

// Transformation from the initial inertial basis to the basis after one
// uniformly accelerated segment of rapidity eta1 >= 0:
//   A = A^dagger G(eta1) A,  G_n = exp(i Omega_n eta1),
// expanded to order h^2. Leftward acceleration flips the sign of the odd
// A entries (equivalently h -> -h). max_order=1 skips the order-h^2 block
// (which costs a dense matrix product) for consumers that only need order h.
PerturbativeMatrix segment_matrix_accel(const CavityGeometry& geom, double eta1,
                                        BoostDirection direction, int window,
                                        int max_order = 2);

// Inertial coast of proper time tau: diagonal phases exp(i omega_n tau),
// no order-h or order-h^2 part. The phase sign is fixed by requiring that the
// grafted one-way trip reproduce the first-order product formula
//   |B^(1)_mn|^2 = |E1^(m-n) - 1|^2 |(E1 E2)^(m-n) - 1|^2 |A^(1)_mn|^2.
PerturbativeMatrix inertial_phase_matrix(const CavityGeometry& geom, double tau,
                                         int window);

// Order-truncated product: `later` applied after `earlier`.
PerturbativeMatrix compose(const PerturbativeMatrix& later,
                           const PerturbativeMatrix& earlier);

// Ordered composition of all segment matrices of the scenario.
PerturbativeMatrix graft(const TravelScenario& scenario, int window,
                         int max_order = 2);

struct UnitarityResidual {
  double order1;  // max |G* O1 + O1^dagger G| over the evaluation block
  double order2;  // max |G* O2 + O2^dagger G + O1^dagger O1| over the block
};

// Residuals of the perturbative unitarity identities, evaluated on the
// centred sub-window |m|,|n| <= eval_window. Entries near the storage edge
// are truncation-dominated (A^(1) grows linearly in the index), so the
// order-h^2 residual converges only on a fixed interior block as the storage
// window grows; the order-h residual vanishes identically at any block.
UnitarityResidual unitarity_residuals(const PerturbativeMatrix& mat,
                                      int eval_window);

// First-order pair-creation content of the transformed vacuum
// |0> = N exp(sum V_pq a~+_p b~+_q) |0~>:
//   V^(1)_pq = -A^(1)_qp G_p*  (p >= 0, q < 0),
// with N = 1 - (1/2) sum |V_pq|^2 h^2 + O(h^3).
class VMatrix {
 public:
  VMatrix(int window, Eigen::MatrixXcd first_order);

  int window() const { return window_; }
  // p in [0, window], q in [-window, -1]; coefficient of h.
  std::complex<double> entry(int p, int q) const;
  const Eigen::MatrixXcd& first_order() const { return v1_; }

  // sum |V_pq|^2, the coefficient of h^2 in the vacuum normalisation deficit.
  double pair_weight() const;
  double normalisation(double h) const;

 private:
  int window_;
  Eigen::MatrixXcd v1_;  // rows p = 0..M, columns q = -M..-1
};

VMatrix vacuum_v_matrix(const PerturbativeMatrix& mat);

}  // namespace fermicav
