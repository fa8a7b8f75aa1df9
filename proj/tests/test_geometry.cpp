#include "lgc/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lgc;

TEST_CASE_TEMPLATE("segment helpers", Scalar, float, double, long double) {
  using P = Point2<Scalar>;
  const Segment2<Scalar> s{P(0, 0), P(2, 0)};
  CHECK(s.length() == Scalar(2));
  CHECK(s.midpoint().x() == Scalar(1));
  CHECK(signed_line_distance(s, P(1, 3)) == Scalar(3));
  CHECK(signed_line_distance(s, P(1, -3)) == Scalar(-3));
  CHECK(point_segment_distance(P(3, 4), s) == doctest::Approx(std::sqrt(17.0)));
  CHECK(point_segment_distance(P(1, 4), s) == Scalar(4));

  const Segment2<Scalar> t{P(1, -1), P(1, 1)};
  CHECK(segments_cross(s, t));
  CHECK(segment_distance(s, t) == Scalar(0));
  const P x = line_intersection(s, t);
  CHECK(x.x() == doctest::Approx(1.0));
  CHECK(x.y() == doctest::Approx(0.0));
  CHECK_THROWS_AS(line_intersection(s, Segment2<Scalar>{P(0, 1), P(2, 1)}), GeometryError);
  CHECK(s.left_to_right().p.x() == Scalar(0));
  CHECK(Segment2<Scalar>{P(2, 0), P(0, 0)}.left_to_right().p.x() == Scalar(0));
}

TEST_CASE_TEMPLATE("convex polygon basics", Scalar, float, double) {
  using P = Point2<Scalar>;
  // Clockwise input is reoriented.
  const ConvexPolygon<Scalar> sq({P(0, 0), P(0, 1), P(1, 1), P(1, 0)});
  CHECK(sq.area() == doctest::Approx(1.0));
  CHECK(sq.contains(P(Scalar(0.5), Scalar(0.5))));
  CHECK(sq.contains(P(1, 1)));
  CHECK_FALSE(sq.contains(P(Scalar(1.1), Scalar(0.5))));
  CHECK(sq.contains(P(Scalar(1.05), Scalar(0.5)), Scalar(0.1)));

  CHECK_THROWS_AS(ConvexPolygon<Scalar>({P(0, 0), P(1, 0)}), GeometryError);
  CHECK_THROWS_AS(ConvexPolygon<Scalar>({P(0, 0), P(1, 0), P(2, 0)}), GeometryError);
  // A dart is not convex.
  CHECK_THROWS_AS(ConvexPolygon<Scalar>({P(0, 0), P(2, 1), P(0, 2), P(Scalar(0.5), 1)}), GeometryError);
}

TEST_CASE("half-plane clipping and intersection") {
  const Polygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Polygon half = sq.clipped({0.5, 0.0}, {1.0, 0.0});
  CHECK(half.area() == doctest::Approx(0.5).epsilon(1e-15));
  // Clipping along an edge keeps the polygon unchanged.
  CHECK(sq.clipped({0.0, 0.0}, {1.0, 0.0}).size() == 4);

  const Polygon shifted({{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}});
  CHECK(intersection_area(sq, shifted) == doctest::Approx(0.25).epsilon(1e-15));
  const Polygon far({{3, 0}, {4, 0}, {4, 1}});
  CHECK(intersect(sq, far).empty());
  CHECK(distance(sq, far) == doctest::Approx(2.0));
  CHECK(distance(sq, shifted) == 0.0);
}

TEST_CASE("clipped area agrees with a Monte Carlo estimate") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Polygon hex({{1, 0}, {0.5, 0.8}, {-0.5, 0.8}, {-1, 0}, {-0.5, -0.8}, {0.5, -0.8}});
  for (int trial = 0; trial < 20; ++trial) {
    const Point2d origin(0.5 * u(rng), 0.5 * u(rng));
    const Point2d normal(u(rng), u(rng));
    const double exact = std::abs(shoelace_area(clip_half_plane(hex.vertices(), origin, normal)));
    int hits = 0;
    const int samples = 200000;
    for (int i = 0; i < samples; ++i) {
      const Point2d x(u(rng), u(rng));
      if (hex.contains(x) && normal.dot(x - origin) >= 0.0) ++hits;
    }
    const double mc = 4.0 * hits / samples;
    CHECK(std::abs(mc - exact) < 0.02);
  }
}

TEST_CASE("circle arcs") {
  const double pi = std::numbers::pi;
  const CircleArcd upper{0.0, pi};
  CHECK(upper.contains_angle(pi / 2));
  CHECK_FALSE(upper.contains_angle(-pi / 2));
  CHECK(upper.contains_angle(2 * pi + 0.1));
  CHECK(point_arc_distance(Point2d(0.0, 0.5), upper) == doctest::Approx(0.5));
  CHECK(point_arc_distance(Point2d(0.0, -0.5), upper) == doctest::Approx(std::hypot(1.0, 0.5)));

  // Chord under the arc: distance is the sagitta.
  const CircleArcd cap{pi / 2 - 0.5, pi / 2 + 0.5};
  const Segment2d chord{unit_circle_point(pi / 2 - 0.5), unit_circle_point(pi / 2 + 0.5)};
  CHECK(segment_arc_distance(chord, cap) == doctest::Approx(0.0).epsilon(1e-12));
  const Segment2d lowered{chord.p - Point2d(0, 0.1), chord.q - Point2d(0, 0.1)};
  CHECK(segment_arc_distance(lowered, cap) == doctest::Approx(0.1).epsilon(1e-12));

  const CircleArcd opposite{-pi / 2 - 0.5, -pi / 2 + 0.5};
  CHECK(arc_distance(cap, opposite) == doctest::Approx(2.0 * std::sin(pi / 2 - 0.5)).epsilon(1e-12));
}
