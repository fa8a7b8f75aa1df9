#include "lgc/barrier.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lgc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

struct Features {
  std::vector<Segment2d> segments;
  std::vector<CircleArcd> arcs;
  Point2d anchor;
};

Features features(const Region& region) {
  return std::visit(
      Overloaded{
          [](const CircularSegment& w) {
            return Features{{w.chord}, {CircleArcd{w.arc.start(), w.arc.end()}}, w.chord.p};
          },
          [](const Polygon& p) {
            Features f;
            for (std::size_t i = 0; i < p.size(); ++i) f.segments.push_back(p.edge(i));
            f.anchor = p.vertex(0);
            return f;
          },
          [](const BottomRegion& b) {
            const CircleArcd arc = b.bottom_arc();
            const Segment2d top = b.top();
            return Features{{top, {top.p, arc.start_point()}, {top.q, arc.end_point()}}, {arc}, top.p};
          },
      },
      region);
}

// Smallest line distance slack that still accepts points we constructed on a
// line.
constexpr double kOnLineTol = 1e-10;

Segment2d find_edge_on_line(const Polygon& poly, const Segment2d& line) {
  const Segment2d* best = nullptr;
  Segment2d found{};
  double best_len = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment2d e = poly.edge(i);
    if (std::abs(signed_line_distance(line, e.p)) < kOnLineTol &&
        std::abs(signed_line_distance(line, e.q)) < kOnLineTol && e.length() > best_len) {
      found = e;
      best_len = e.length();
      best = &found;
    }
  }
  if (best == nullptr || best_len <= 1e-14) {
    throw GeometryError("no polygon edge on the expected chord line");
  }
  return found.left_to_right();
}

}  // namespace

double cut_height() {
  static const double c = std::cos(0.5);
  return c;
}

Segment2d chord(const Arc& arc) {
  if (!(arc.length() < std::numbers::pi)) {
    throw GeometryError("chord normal is undefined for arcs of length >= pi");
  }
  return {unit_circle_point(arc.start()), unit_circle_point(arc.end())};
}

UnitNormal inward_normal(const Arc& arc) {
  chord(arc);
  return {-unit_circle_point(arc.mid())};
}

double CircularSegment::area() const {
  const double t = arc.length();
  return 0.5 * (t - std::sin(t));
}

bool CircularSegment::contains(const Point2d& x, double tol) const {
  if (x.norm() > 1.0 + tol) return false;
  // Left of the chord (start -> end counterclockwise) is the origin side.
  return signed_line_distance(chord, x) <= tol;
}

Segment2d BottomRegion::top() const { return {{x_lo, cut_height}, {x_hi, cut_height}}; }

CircleArcd BottomRegion::bottom_arc() const { return {-std::acos(x_lo), -std::acos(x_hi)}; }

double BottomRegion::trapezoid_area() const {
  const double y_lo = std::sqrt(1.0 - x_lo * x_lo);
  const double y_hi = std::sqrt(1.0 - x_hi * x_hi);
  return 0.5 * (x_hi - x_lo) * ((cut_height + y_lo) + (cut_height + y_hi));
}

double BottomRegion::segment_area() const {
  const double t = bottom_arc().span();
  return 0.5 * (t - std::sin(t));
}

bool BottomRegion::contains(const Point2d& x, double tol) const {
  return x.norm() <= 1.0 + tol && x.y() <= cut_height + tol && x.x() >= x_lo - tol &&
         x.x() <= x_hi + tol;
}

bool contains(const Region& region, const Point2d& x, double tol) {
  return std::visit([&](const auto& r) { return r.contains(x, tol); }, region);
}

double area(const Region& region) {
  return std::visit([](const auto& r) { return r.area(); }, region);
}

Eigen::AlignedBox2d bounding_box(const Region& region) {
  return std::visit(
      Overloaded{
          [](const CircularSegment& w) {
            Eigen::AlignedBox2d box(w.chord.p);
            box.extend(w.chord.q);
            const CircleArcd arc{w.arc.start(), w.arc.end()};
            for (int quarter = -4; quarter <= 4; ++quarter) {
              const double a = quarter * std::numbers::pi / 2;
              if (arc.contains_angle(a)) box.extend(unit_circle_point(a));
            }
            return box;
          },
          [](const Polygon& p) {
            Eigen::AlignedBox2d box(p.vertex(0));
            for (const auto& v : p.vertices()) box.extend(v);
            return box;
          },
          [](const BottomRegion& b) {
            const double y_min = (b.x_lo <= 0.0 && b.x_hi >= 0.0)
                                     ? -1.0
                                     : -std::sqrt(1.0 - std::min(b.x_lo * b.x_lo, b.x_hi * b.x_hi));
            return Eigen::AlignedBox2d(Point2d(b.x_lo, y_min), Point2d(b.x_hi, b.cut_height));
          },
      },
      region);
}

double boundary_distance(const Region& region, const Point2d& x) {
  const Features f = features(region);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : f.segments) best = std::min(best, point_segment_distance(x, s));
  for (const auto& a : f.arcs) best = std::min(best, point_arc_distance(x, a));
  return best;
}

double outside_distance(const Region& region, const Point2d& x) {
  return contains(region, x) ? 0.0 : boundary_distance(region, x);
}

double distance(const Region& a, const Region& b) {
  const Features fa = features(a);
  const Features fb = features(b);
  if (contains(b, fa.anchor) || contains(a, fb.anchor)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : fa.segments) {
    for (const auto& t : fb.segments) best = std::min(best, segment_distance(s, t));
    for (const auto& c : fb.arcs) best = std::min(best, segment_arc_distance(s, c));
  }
  for (const auto& c : fa.arcs) {
    for (const auto& t : fb.segments) best = std::min(best, segment_arc_distance(t, c));
    for (const auto& d : fb.arcs) best = std::min(best, arc_distance(c, d));
  }
  return best;
}

std::vector<Point2d> sample_boundary(const Region& region, int per_feature) {
  const Features f = features(region);
  std::vector<Point2d> out;
  for (const auto& s : f.segments) {
    for (int i = 0; i <= per_feature + 1; ++i) out.push_back(s.at(double(i) / (per_feature + 1)));
  }
  for (const auto& a : f.arcs) {
    for (int i = 0; i <= per_feature + 1; ++i) {
      out.push_back(unit_circle_point(a.start + a.span() * i / (per_feature + 1)));
    }
  }
  return out;
}

namespace {

// Vertices replacing an arc from its start point to its end point by
// tangent segments; each interior vertex is the meeting point of two
// consecutive tangents.
void append_tangent_chain(const CircleArcd& arc, int tangents, std::vector<Point2d>& out) {
  const double step = arc.span() / tangents;
  const double radius = 1.0 / std::cos(0.5 * step);
  out.push_back(arc.start_point());
  for (int i = 0; i < tangents; ++i) out.push_back(radius * unit_circle_point(arc.start + (i + 0.5) * step));
  out.push_back(arc.end_point());
}

}  // namespace

Polygon outer_polygon(const Region& region, int tangents) {
  return std::visit(Overloaded{
                        [&](const CircularSegment& w) {
                          std::vector<Point2d> pts;
                          append_tangent_chain({w.arc.start(), w.arc.end()}, tangents, pts);
                          return Polygon(std::move(pts));
                        },
                        [](const Polygon& p) { return p; },
                        [&](const BottomRegion& b) {
                          std::vector<Point2d> pts;
                          append_tangent_chain(b.bottom_arc(), tangents, pts);
                          pts.push_back(b.top().q);
                          pts.push_back(b.top().p);
                          return Polygon(std::move(pts));
                        },
                    },
                    region);
}

Polygon RightTriangle::polygon() const { return Polygon({shared, corner, foot}); }

RightTriangle right_triangle(const ArcAddress& address) {
  if (address.is_root()) throw std::invalid_argument("T(A) needs an arc of depth >= 1");
  const Arc arc = resolve(address);
  const Arc parent = resolve(address.parent());
  RightTriangle t;
  if (address.last() == Side::Right) {
    t.shared = unit_circle_point(parent.start());
    t.corner = unit_circle_point(arc.end());
  } else {
    t.shared = unit_circle_point(parent.end());
    t.corner = unit_circle_point(arc.start());
  }
  const Point2d v = inward_normal(arc).direction;
  t.foot = line_intersection(Segment2d{t.corner, t.corner + v}, chord(parent));
  return t;
}

namespace {

// Builds the chain up to (and including) T_(last)(A).
void build_chain(const ArcAddress& address, int last, std::vector<Polygon>& polygons,
                 std::vector<Segment2d>& links) {
  const int n = address.depth();
  links.push_back(chord(resolve(address)).left_to_right());
  const RightTriangle t0 = right_triangle(address);
  polygons.push_back(t0.polygon());
  links.push_back(find_edge_on_line(polygons.back(), chord(resolve(address.parent()))));
  for (int k = 1; k <= last && k < n; ++k) {
    const ArcAddress ancestor = address.ancestor(k);
    const RightTriangle tri = right_triangle(ancestor);
    const Point2d d = (tri.corner - tri.shared).normalized();
    const Segment2d& prev = links.back();
    const bool p_first = prev.p.dot(d) <= prev.q.dot(d);
    const Point2d& lo = p_first ? prev.p : prev.q;
    const Point2d& hi = p_first ? prev.q : prev.p;
    Polygon poly = tri.polygon().clipped(lo, d).clipped(hi, -d);
    links.push_back(find_edge_on_line(poly, chord(resolve(address.ancestor(k + 1)))));
    polygons.push_back(std::move(poly));
  }
}

}  // namespace

BarrierComponent component(const ArcAddress& address) {
  const int n = address.depth();
  if (n < 1) throw std::invalid_argument("barrier components are defined for depth >= 1");
  BarrierComponent c;
  c.address = address;
  const Arc arc = resolve(address);
  c.segment = CircularSegment{arc, chord(arc)};
  build_chain(address, n - 1, c.polygons, c.links);
  const Segment2d& last = c.links.back();
  c.bottom = BottomRegion{last.p.x(), last.q.x(), cut_height()};
  return c;
}

Polygon sweep_polygon(int k, const ArcAddress& address) {
  if (k < 0 || k >= address.depth()) throw std::out_of_range("sweep stage out of range");
  std::vector<Polygon> polygons;
  std::vector<Segment2d> links;
  build_chain(address, k, polygons, links);
  return polygons[k];
}

Segment2d exit_segment(int k, const ArcAddress& address) {
  if (k < 0 || k > address.depth()) throw std::out_of_range("link index out of range");
  if (address.depth() < 1) throw std::invalid_argument("links are defined for depth >= 1");
  std::vector<Polygon> polygons;
  std::vector<Segment2d> links;
  build_chain(address, std::max(k - 1, 0), polygons, links);
  return links[k];
}

BottomRegion bottom_region(const ArcAddress& address) { return component(address).bottom; }

std::vector<Region> BarrierComponent::chain() const {
  std::vector<Region> out;
  out.reserve(polygons.size() + 2);
  out.emplace_back(segment);
  for (const auto& p : polygons) out.emplace_back(p);
  out.emplace_back(bottom);
  return out;
}

double BarrierComponent::area() const {
  double total = segment.area() + bottom.area();
  for (const auto& p : polygons) total += p.area();
  return total;
}

bool BarrierComponent::contains(const Point2d& x, double tol) const {
  if (x.y() <= bottom.cut_height + tol && bottom.contains(x, tol)) return true;
  if (segment.contains(x, tol)) return true;
  for (const auto& p : polygons) {
    if (p.contains(x, tol)) return true;
  }
  return false;
}

Eigen::AlignedBox2d BarrierComponent::bounding_box() const {
  Eigen::AlignedBox2d box = lgc::bounding_box(Region(segment));
  for (const auto& p : polygons) box.extend(lgc::bounding_box(Region(p)));
  box.extend(lgc::bounding_box(Region(bottom)));
  return box;
}

std::size_t arc_index(const ArcAddress& address) {
  std::size_t index = 0;
  for (Side side : address.path()) index = (index << 1) | (side == Side::Left ? 1u : 0u);
  return index;
}

ArcAddress address_at(int n, std::size_t index) {
  std::vector<Side> path(n);
  for (int i = n - 1; i >= 0; --i) {
    path[i] = (index & 1u) ? Side::Left : Side::Right;
    index >>= 1;
  }
  return ArcAddress(std::move(path));
}

std::vector<BarrierComponent> barrier(int n) {
  if (n < 1) throw std::invalid_argument("barriers are defined for n >= 1");
  if (n > kMaxBarrierDepth) {
    throw CapacityError("barrier enumeration is capped at depth " + std::to_string(kMaxBarrierDepth));
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<BarrierComponent> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(component(address_at(n, i)));
  return out;
}

BarrierSet::BarrierSet(int n) : depth_(n), components_(barrier(n)) {
  boxes_.reserve(components_.size());
  for (const auto& c : components_) boxes_.push_back(c.bounding_box());
}

bool BarrierSet::contains(const Point2d& x, double tol) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (boxes_[i].exteriorDistance(x) > tol) continue;
    if (components_[i].contains(x, tol)) return true;
  }
  return false;
}

double BarrierSet::area() const {
  double total = 0.0;
  for (const auto& c : components_) total += c.area();
  return total;
}

bool region_membership(const Point2d& x, int n) { return BarrierSet(n).contains(x); }

double region_area(int n) { return BarrierSet(n).area(); }

namespace {

double box_gap(const Eigen::AlignedBox2d& a, const Eigen::AlignedBox2d& b) {
  const Point2d lo = a.min().cwiseMax(b.min());
  const Point2d hi = a.max().cwiseMin(b.max());
  return (lo - hi).cwiseMax(0.0).norm();
}

}  // namespace

double component_separation(const BarrierComponent& a, const BarrierComponent& b) {
  double best = std::numeric_limits<double>::infinity();
  const auto ca = a.chain();
  const auto cb = b.chain();
  std::vector<Eigen::AlignedBox2d> boxes_b;
  for (const auto& r : cb) boxes_b.push_back(bounding_box(r));
  for (const auto& ra : ca) {
    const Eigen::AlignedBox2d box_a = bounding_box(ra);
    for (std::size_t j = 0; j < cb.size(); ++j) {
      // Boxes further apart than the current best cannot improve it.
      if (box_gap(box_a, boxes_b[j]) >= best) continue;
      best = std::min(best, distance(ra, cb[j]));
    }
  }
  return best;
}

double min_pairwise_separation(const std::vector<BarrierComponent>& components) {
  std::vector<Eigen::AlignedBox2d> boxes;
  boxes.reserve(components.size());
  for (const auto& c : components) boxes.push_back(c.bounding_box());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (std::size_t j = i + 1; j < components.size(); ++j) {
      if (box_gap(boxes[i], boxes[j]) >= best) continue;
      best = std::min(best, component_separation(components[i], components[j]));
    }
  }
  return best;
}

double nesting_violation(const std::vector<BarrierComponent>& fine,
                         const std::vector<BarrierComponent>& coarse, int samples_per_feature) {
  double worst = 0.0;
  for (const auto& c : fine) {
    const BarrierComponent& parent = coarse.at(arc_index(c.address.parent()));
    const auto parent_chain = parent.chain();
    for (const auto& piece : c.chain()) {
      for (const Point2d& x : sample_boundary(piece, samples_per_feature)) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& p : parent_chain) d = std::min(d, outside_distance(p, x));
        worst = std::max(worst, d);
      }
    }
  }
  return worst;
}

}  // namespace lgc
