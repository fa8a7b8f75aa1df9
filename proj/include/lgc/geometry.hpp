#pragma once

// Planar primitives for the unit disk: segments, convex polygons, arcs of the
// unit circle, half-plane clipping and feature distances.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lgc {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;
using Point2d = Point2<double>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
Scalar cross(const Point2<Scalar>& a, const Point2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <typename Scalar>
Point2<Scalar> unit_circle_point(Scalar angle) {
  using std::cos;
  using std::sin;
  return {cos(angle), sin(angle)};
}

template <typename Scalar>
Point2<Scalar> perp(const Point2<Scalar>& v) {
  return {-v.y(), v.x()};
}

template <typename Scalar>
struct Segment2 {
  Point2<Scalar> p;
  Point2<Scalar> q;

  Scalar length() const { return (q - p).norm(); }
  Point2<Scalar> direction() const { return (q - p).normalized(); }
  Point2<Scalar> midpoint() const { return Scalar(0.5) * (p + q); }
  Point2<Scalar> at(Scalar s) const { return p + s * (q - p); }
  /// Same segment with endpoints ordered by increasing x.
  Segment2 left_to_right() const { return p.x() <= q.x() ? *this : Segment2{q, p}; }
};
using Segment2d = Segment2<double>;

/// Signed distance of x from the line through a segment, positive to the left.
template <typename Scalar>
Scalar signed_line_distance(const Segment2<Scalar>& line, const Point2<Scalar>& x) {
  return cross<Scalar>(line.q - line.p, x - line.p) / line.length();
}

template <typename Scalar>
Scalar point_segment_distance(const Point2<Scalar>& x, const Segment2<Scalar>& s) {
  const Point2<Scalar> d = s.q - s.p;
  const Scalar len2 = d.squaredNorm();
  if (len2 == Scalar(0)) return (x - s.p).norm();
  const Scalar t = std::clamp<Scalar>((x - s.p).dot(d) / len2, Scalar(0), Scalar(1));
  return (x - (s.p + t * d)).norm();
}

template <typename Scalar>
bool segments_cross(const Segment2<Scalar>& a, const Segment2<Scalar>& b) {
  const Scalar d1 = cross<Scalar>(a.q - a.p, b.p - a.p);
  const Scalar d2 = cross<Scalar>(a.q - a.p, b.q - a.p);
  const Scalar d3 = cross<Scalar>(b.q - b.p, a.p - b.p);
  const Scalar d4 = cross<Scalar>(b.q - b.p, a.q - b.p);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

template <typename Scalar>
Scalar segment_distance(const Segment2<Scalar>& a, const Segment2<Scalar>& b) {
  if (segments_cross(a, b)) return Scalar(0);
  return std::min({point_segment_distance(a.p, b), point_segment_distance(a.q, b),
                   point_segment_distance(b.p, a), point_segment_distance(b.q, a)});
}

/// Intersection of the lines through two segments. Throws if parallel.
template <typename Scalar>
Point2<Scalar> line_intersection(const Segment2<Scalar>& a, const Segment2<Scalar>& b) {
  const Point2<Scalar> r = a.q - a.p;
  const Point2<Scalar> s = b.q - b.p;
  const Scalar denom = cross(r, s);
  if (std::abs(denom) <= std::numeric_limits<Scalar>::epsilon() * r.norm() * s.norm()) {
    throw GeometryError("line_intersection: parallel lines");
  }
  return a.p + (cross<Scalar>(b.p - a.p, s) / denom) * r;
}

/// Counterclockwise arc of the unit circle from `start` to `end` (radians).
template <typename Scalar>
struct CircleArc {
  Scalar start;
  Scalar end;

  Scalar span() const { return end - start; }
  Point2<Scalar> start_point() const { return unit_circle_point(start); }
  Point2<Scalar> end_point() const { return unit_circle_point(end); }

  bool contains_angle(Scalar angle) const {
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    Scalar rel = std::fmod(angle - start, two_pi);
    if (rel < 0) rel += two_pi;
    return rel <= span();
  }
};
using CircleArcd = CircleArc<double>;

template <typename Scalar>
Scalar point_arc_distance(const Point2<Scalar>& x, const CircleArc<Scalar>& arc) {
  const Scalar r = x.norm();
  if (r > 0 && arc.contains_angle(std::atan2(x.y(), x.x()))) return std::abs(r - Scalar(1));
  return std::min((x - arc.start_point()).norm(), (x - arc.end_point()).norm());
}

template <typename Scalar>
Scalar segment_arc_distance(const Segment2<Scalar>& s, const CircleArc<Scalar>& arc) {
  Scalar best = std::min({point_arc_distance(s.p, arc), point_arc_distance(s.q, arc),
                          point_segment_distance(arc.start_point(), s),
                          point_segment_distance(arc.end_point(), s)});
  // Crossings of the circle, and the point of the segment nearest the origin
  // (a distance minimum when the segment runs outside the disk).
  const Point2<Scalar> d = s.q - s.p;
  const Scalar a = d.squaredNorm();
  if (a == Scalar(0)) return best;
  const Scalar b = s.p.dot(d);
  const Scalar c = s.p.squaredNorm() - Scalar(1);
  const Scalar disc = b * b - a * c;
  if (disc >= 0) {
    const Scalar root = std::sqrt(disc);
    for (Scalar t : {(-b - root) / a, (-b + root) / a}) {
      if (t < 0 || t > 1) continue;
      const Point2<Scalar> x = s.at(t);
      if (arc.contains_angle(std::atan2(x.y(), x.x()))) return Scalar(0);
    }
  }
  const Scalar t_near = -b / a;
  if (t_near > 0 && t_near < 1) best = std::min(best, point_arc_distance(s.at(t_near), arc));
  return best;
}

template <typename Scalar>
Scalar arc_distance(const CircleArc<Scalar>& a, const CircleArc<Scalar>& b) {
  return std::min({point_arc_distance(a.start_point(), b), point_arc_distance(a.end_point(), b),
                   point_arc_distance(b.start_point(), a), point_arc_distance(b.end_point(), a)});
}

/// Keeps the part of a convex polygon with normal.dot(x - origin) >= 0.
/// Vertices exactly on the boundary line are kept without duplication.
template <typename Scalar>
std::vector<Point2<Scalar>> clip_half_plane(const std::vector<Point2<Scalar>>& poly,
                                            const Point2<Scalar>& origin,
                                            const Point2<Scalar>& normal) {
  std::vector<Point2<Scalar>> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2<Scalar>& cur = poly[i];
    const Point2<Scalar>& nxt = poly[(i + 1) % n];
    const Scalar dc = normal.dot(cur - origin);
    const Scalar dn = normal.dot(nxt - origin);
    if (dc >= 0) out.push_back(cur);
    if ((dc > 0 && dn < 0) || (dc < 0 && dn > 0)) {
      out.push_back(cur + (dc / (dc - dn)) * (nxt - cur));
    }
  }
  return out;
}

/// Drops consecutive vertices closer than `tol`.
template <typename Scalar>
std::vector<Point2<Scalar>> dedupe_vertices(std::vector<Point2<Scalar>> poly, Scalar tol) {
  std::vector<Point2<Scalar>> out;
  for (const auto& v : poly) {
    if (out.empty() || (v - out.back()).norm() > tol) out.push_back(v);
  }
  while (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();
  return out;
}

template <typename Scalar>
Scalar shoelace_area(const std::vector<Point2<Scalar>>& poly) {
  Scalar twice = 0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) twice += cross(poly[i], poly[(i + 1) % n]);
  return twice / Scalar(2);
}

/// Convex polygon with counterclockwise vertices.
template <typename Scalar>
class ConvexPolygon {
 public:
  using Point = Point2<Scalar>;

  ConvexPolygon() = default;

  /// Accepts either orientation; stores counterclockwise. Throws on fewer
  /// than three vertices, nonpositive area, or a reflex corner.
  explicit ConvexPolygon(std::vector<Point> vertices, Scalar collinear_tol = Scalar(1e-12))
      : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw GeometryError("convex polygon needs at least 3 vertices");
    if (shoelace_area(vertices_) < 0) std::reverse(vertices_.begin(), vertices_.end());
    if (!(shoelace_area(vertices_) > 0)) throw GeometryError("convex polygon has no area");
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = vertices_[i];
      const Point& b = vertices_[(i + 1) % n];
      const Point& c = vertices_[(i + 2) % n];
      if (cross<Scalar>(b - a, c - b) < -collinear_tol * (b - a).norm() * (c - b).norm()) {
        throw GeometryError("polygon is not convex");
      }
    }
  }

  std::size_t size() const { return vertices_.size(); }
  const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  const std::vector<Point>& vertices() const { return vertices_; }
  Segment2<Scalar> edge(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }

  Scalar area() const { return shoelace_area(vertices_); }

  Point centroid() const {
    Point c = Point::Zero();
    for (const auto& v : vertices_) c += v;
    return c / Scalar(vertices_.size());
  }

  /// Closed membership with absolute slack `tol`.
  bool contains(const Point& x, Scalar tol = Scalar(0)) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (signed_line_distance(edge(i), x) < -tol) return false;
    }
    return true;
  }

  ConvexPolygon clipped(const Point& origin, const Point& normal) const {
    return ConvexPolygon(dedupe_vertices(clip_half_plane(vertices_, origin, normal), Scalar(1e-13)));
  }

 private:
  std::vector<Point> vertices_;
};
using Polygon = ConvexPolygon<double>;

/// Intersection of two convex polygons as a (possibly empty or degenerate)
/// vertex list.
template <typename Scalar>
std::vector<Point2<Scalar>> intersect(const ConvexPolygon<Scalar>& a, const ConvexPolygon<Scalar>& b) {
  std::vector<Point2<Scalar>> out = a.vertices();
  for (std::size_t i = 0; i < b.size() && !out.empty(); ++i) {
    const Segment2<Scalar> e = b.edge(i);
    out = clip_half_plane(out, e.p, perp<Scalar>(e.q - e.p));
  }
  return out;
}

template <typename Scalar>
Scalar intersection_area(const ConvexPolygon<Scalar>& a, const ConvexPolygon<Scalar>& b) {
  const auto poly = intersect(a, b);
  return poly.size() < 3 ? Scalar(0) : std::abs(shoelace_area(poly));
}

/// Euclidean distance between two closed convex polygons (zero if they meet).
template <typename Scalar>
Scalar distance(const ConvexPolygon<Scalar>& a, const ConvexPolygon<Scalar>& b) {
  if (a.contains(b.vertex(0)) || b.contains(a.vertex(0))) return Scalar(0);
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, segment_distance(a.edge(i), b.edge(j)));
  }
  return best;
}

}  // namespace lgc
