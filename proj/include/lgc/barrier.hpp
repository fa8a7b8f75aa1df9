#pragma once

// Barrier sets B_n: for every arc A of C_n a connected chain
//
//   W(A), T_0(A), ..., T_(n-1)(A), Bot(A)
//
// where W(A) is the circular segment cut off by the chord of A, T_0(A) is the
// right triangle hanging under that chord, each T_k(A) is the part of the
// triangle of the k-th ancestor swept by the previous link in the ancestor's
// inward normal direction, and Bot(A) is everything in the closed disk below
// the last link. Consecutive members share the links L_1(A), ..., L_(n+1)(A).

#include "lgc/cantor.hpp"
#include "lgc/geometry.hpp"

#include <Eigen/Geometry>

#include <variant>
#include <vector>

namespace lgc {

/// Height of the chord of C_0, sin(pi/2 - 1/2) = cos(1/2).
double cut_height();

/// Absolute tolerance for geometric predicates in the unit disk.
inline constexpr double kGeometryTol = 1e-10;

/// Enumeration cap for barrier(n).
inline constexpr int kMaxBarrierDepth = 12;

struct UnitNormal {
  Point2d direction;
};

/// Chord of an arc, from the clockwise endpoint to the counterclockwise one.
/// Throws GeometryError for arcs of length >= pi.
Segment2d chord(const Arc& arc);

/// Unit normal of chord(arc) pointing toward the origin.
UnitNormal inward_normal(const Arc& arc);

/// W(A): the closed region between an arc and its chord.
struct CircularSegment {
  Arc arc;
  Segment2d chord;

  double area() const;
  bool contains(const Point2d& x, double tol = 0.0) const;
};

/// Bot(A): closed-disk points with x_2 <= cut_height and x_1 in [x_lo, x_hi].
struct BottomRegion {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double cut_height = 0.0;

  Segment2d top() const;
  CircleArcd bottom_arc() const;
  /// Area of the trapezoid over the chord of the bottom arc.
  double trapezoid_area() const;
  /// Area of the circular segment under the chord of the bottom arc.
  double segment_area() const;
  double area() const { return trapezoid_area() + segment_area(); }
  bool contains(const Point2d& x, double tol = 0.0) const;
};

using Region = std::variant<CircularSegment, Polygon, BottomRegion>;

bool contains(const Region& region, const Point2d& x, double tol = 0.0);
double area(const Region& region);
Eigen::AlignedBox2d bounding_box(const Region& region);
/// Distance from x to the boundary of the region.
double boundary_distance(const Region& region, const Point2d& x);
/// Distance from x to the region (zero inside).
double outside_distance(const Region& region, const Point2d& x);
/// Distance between two closed regions (zero if they meet).
double distance(const Region& a, const Region& b);
/// Points on the boundary: corners plus `per_feature` interior samples on
/// each edge and arc.
std::vector<Point2d> sample_boundary(const Region& region, int per_feature);
/// Polygon circumscribing the region; arcs are replaced by `tangents`
/// tangent segments each.
Polygon outer_polygon(const Region& region, int tangents = 32);

/// T(A) for an arc of depth >= 1: right angle at `corner`, long leg on
/// Cho(A), hypotenuse from `shared` to `foot` on Cho(Par(A)).
struct RightTriangle {
  Point2d shared;
  Point2d corner;
  Point2d foot;

  Polygon polygon() const;
  Segment2d long_leg() const { return {shared, corner}; }
  Segment2d short_leg() const { return {corner, foot}; }
  Segment2d hypotenuse() const { return {shared, foot}; }
};

RightTriangle right_triangle(const ArcAddress& address);

struct BarrierComponent {
  ArcAddress address;
  CircularSegment segment;
  /// T_0(A), ..., T_(n-1)(A).
  std::vector<Polygon> polygons;
  BottomRegion bottom;
  /// L_1(A), ..., L_(n+1)(A), each ordered left to right.
  std::vector<Segment2d> links;

  int depth() const { return address.depth(); }
  /// W(A), T_0(A), ..., T_(n-1)(A), Bot(A) in chain order.
  std::vector<Region> chain() const;
  double area() const;
  bool contains(const Point2d& x, double tol = 0.0) const;
  Eigen::AlignedBox2d bounding_box() const;
};

BarrierComponent component(const ArcAddress& address);
/// T_k(A) for 0 <= k < depth.
Polygon sweep_polygon(int k, const ArcAddress& address);
/// L_(k+1)(A) for 0 <= k <= depth; k = 0 is the chord of A.
Segment2d exit_segment(int k, const ArcAddress& address);
BottomRegion bottom_region(const ArcAddress& address);

/// Position of an address among the counterclockwise-sorted arcs of its depth.
std::size_t arc_index(const ArcAddress& address);
/// Address of the i-th counterclockwise arc at depth n.
ArcAddress address_at(int n, std::size_t index);

/// All 2^n components of B_n in counterclockwise arc order, 1 <= n <= 12.
std::vector<BarrierComponent> barrier(int n);

/// B_n with cached components and a fast membership query.
class BarrierSet {
 public:
  explicit BarrierSet(int n);

  int depth() const { return depth_; }
  const std::vector<BarrierComponent>& components() const { return components_; }
  bool contains(const Point2d& x, double tol = kGeometryTol) const;
  double area() const;

 private:
  int depth_;
  std::vector<BarrierComponent> components_;
  std::vector<Eigen::AlignedBox2d> boxes_;
};

bool region_membership(const Point2d& x, int n);
double region_area(int n);

/// Smallest distance between pieces of two different components.
double component_separation(const BarrierComponent& a, const BarrierComponent& b);
/// Smallest separation over all component pairs of one barrier.
double min_pairwise_separation(const std::vector<BarrierComponent>& components);
/// Largest distance of a boundary sample of `fine` (depth n+1) from the
/// parent component in `coarse` (depth n). Zero when nested.
double nesting_violation(const std::vector<BarrierComponent>& fine,
                         const std::vector<BarrierComponent>& coarse, int samples_per_feature = 8);

}  // namespace lgc
