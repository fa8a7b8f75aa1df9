#pragma once

// Numerical checks of the inequalities behind the barrier argument:
//  - separation of the two right triangles under a split arc,
//  - the one-dimensional Poincare bound on a rectangle,
//  - the square-root gap bound sqrt(g^2 + h^2) >= h + delta^2 / (2M + delta),
//  - the chain of fundamental-theorem-of-calculus bounds along one barrier
//    component, and the regrouping of those integrals over all of B_n.
//
// Every check compares two numbers with a quadrature margin of ten times the
// estimated quadrature error of both sides.

#include "lgc/barrier.hpp"
#include "lgc/quadrature.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace lgc {

struct Check {
  enum class Relation { GreaterEqual, Equal };

  std::string name;
  std::string inputs;
  Relation relation = Relation::GreaterEqual;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  /// False when a quadrature error estimate exceeded its convergence bound.
  bool converged = true;

  bool holds() const;
  bool passed() const { return converged && holds(); }
};

inline constexpr double kMarginFactor = 10.0;

// ---------------------------------------------------------------------------
// Split-arc triangles

/// Q->P . Q->V for the symmetric placement P = (cos(theta/2), sin(theta/2)),
/// Q = (cos(alpha/2), sin(alpha/2)), V = (cos(theta/2), 0).
/// Requires theta in (0, 1] and alpha in [theta^2/2, theta).
double lemma31_dot(double theta, double alpha);

/// -theta^3/8 + theta^4/12: the bound that the cosine series estimates
/// actually give for lemma31_dot(theta, theta^2/2).
double lemma31_dot_bound(double theta);

struct SplitTriangles {
  Polygon upper;  // P Q T
  Polygon lower;  // R S U
};

/// The right triangles PQT and RSU (right angles at Q and R, T and U on the
/// chord PS) for an arc PS of length theta split by a gap QR of length alpha.
SplitTriangles split_triangles(double theta, double alpha);
bool triangles_disjoint(double theta, double alpha);

// ---------------------------------------------------------------------------
// Poincare bound on a rectangle

struct Rectangle {
  double a = 0.0, b = 1.0, c = 0.0, d = 1.0;
};

/// Samples of u and du/dx at composite Gauss nodes of a rectangle, at a fine
/// and a coarse level, plus samples of u on the edges x = a and x = b.
class RectangleField {
 public:
  struct Level {
    Eigen::ArrayXd weights;  // tensor weights, row-major over (x, y)
    Eigen::ArrayXd u;
    Eigen::ArrayXd ux;
  };

  /// Starts at `opt.panels` per direction and doubles (up to 128) until the
  /// integrals of |u| and |u_x| agree with the half-resolution values.
  static RectangleField sample(const Rectangle& domain, const std::function<double(double, double)>& u,
                               const std::function<double(double, double)>& ux, QuadratureOptions opt = {8, 16});

  const Rectangle& domain() const { return domain_; }
  const Level& fine() const { return fine_; }
  const Level& coarse() const { return coarse_; }
  /// Largest |u| on the edges x = a and x = b.
  double edge_max() const { return edge_max_; }
  double scale() const { return scale_; }

 private:
  Rectangle domain_;
  Level fine_;
  Level coarse_;
  double edge_max_ = 0.0;
  double scale_ = 0.0;
};

/// lhs = integral of |du/dx|, rhs = 2/(b-a) * integral of |u|. Throws
/// std::invalid_argument when u does not vanish on the edges x = a, b.
Check poincare_check(const RectangleField& field);

// ---------------------------------------------------------------------------
// Square-root gap bound

/// Nonnegative g, h with quadrature weights, a lower bound delta for the
/// integral of g and an upper bound M for the integral of h.
class IntegrandPair {
 public:
  IntegrandPair(Eigen::ArrayXd g, Eigen::ArrayXd h, Eigen::ArrayXd weights, double delta, double bigM);

  const Eigen::ArrayXd& g() const { return g_; }
  const Eigen::ArrayXd& h() const { return h_; }
  const Eigen::ArrayXd& weights() const { return weights_; }
  double delta() const { return delta_; }
  double bigM() const { return bigM_; }

 private:
  Eigen::ArrayXd g_, h_, weights_;
  double delta_, bigM_;
};

/// lhs = integral of sqrt(g^2 + h^2), rhs = integral of h + delta^2 / (2M + delta).
/// The bound holds for any nonnegative measure, so the weighted sums need no
/// quadrature margin.
Check sqrt_inequality_check(const IntegrandPair& pair);

// ---------------------------------------------------------------------------
// Chain machinery along one component

/// Smooth field on the disk with analytic gradient.
struct TestField {
  std::string name;
  std::function<double(const Point2d&)> value;
  std::function<Point2d(const Point2d&)> gradient;
  /// u = 0 on a band around the lower half of the circle.
  bool vanishes_on_lower_half = false;
  /// u >= 1 on C_0, hence the trace dominates the fat Cantor indicator.
  bool dominates_cantor_trace = false;
};

TestField constant_field(double c);
/// Sum of coeffs[i][j] x^i y^j over i + j <= degree (coeffs is (degree+1)^2).
TestField polynomial_field(int degree, const std::vector<double>& coeffs);
/// 1 above x_2 = cut_height - width, 0 below cut_height - 2 width, joined by
/// the C^2 quintic smoothstep.
TestField cap_indicator_field(double width);

/// Linear parametrizations phi_1..phi_(n+1) of the links over [0, s_n] and
/// phi_0, the projection of phi_1 onto the arc along -v(A).
class ChordTrace {
 public:
  ChordTrace(const BarrierComponent& component, int samples_per_map);

  const ArcAddress& address() const { return address_; }
  /// s_n, the chord length 2 sin(theta_n / 2).
  double parameter_length() const { return s_; }
  int map_count() const { return static_cast<int>(links_.size()) + 1; }
  Point2d phi(int k, double t) const;
  const Arc& arc() const { return arc_; }
  const Point2d& normal() const { return normal_; }
  /// (t, phi_k(t)) pairs for k = 0..n+1.
  const std::vector<std::vector<std::pair<double, Point2d>>>& samples() const { return samples_; }

 private:
  ArcAddress address_;
  Arc arc_;
  Point2d normal_;
  double s_ = 0.0;
  std::vector<Segment2d> links_;
  std::vector<std::vector<std::pair<double, Point2d>>> samples_;
};

ChordTrace chord_chain(const ArcAddress& address, int samples_per_map = 17);

struct ChainReport {
  ArcAddress address;
  /// ||g_(k+1) - g_k|| for k = 0..n.
  std::vector<double> differences;
  /// Integrals over W(A), T_0(A)..T_(n-1)(A), Bot(A) of the matching
  /// directional derivative.
  std::vector<double> region_integrals;
  double g0_norm = 0.0;
  double last_norm = 0.0;
  std::vector<Check> checks;

  bool passed() const;
};

ChainReport chain_inequality_check(const TestField& field, const ArcAddress& address,
                                   QuadratureOptions opt = {8, 8});

struct AggregateReport {
  int depth = 0;
  /// Triangle integrals grouped by arcs of every depth, restricted to B_n.
  double grouped_by_triangle = 0.0;
  /// The same integrals grouped by the chains of the arcs of depth n.
  double grouped_by_chain = 0.0;
  std::vector<Check> checks;

  bool passed() const;
};

/// n <= 5. The regrouping checks hold for any field; the lower bound
/// cos(K_n / 2^(n+1)) K_inf is asserted only for fields that vanish on the
/// lower half and dominate the Cantor trace.
AggregateReport aggregate_check(const TestField& field, int n, QuadratureOptions opt = {8, 4});

}  // namespace lgc
