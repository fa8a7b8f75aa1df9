#include "lgc/cantor.hpp"
#include "lgc/lemmas.hpp"
#include "lgc/suites.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lgc;

namespace {

// Q->P . Q->V straight from the point coordinates, in long double.
double dot_reference(double theta, double alpha) {
  const long double t = theta, a = alpha;
  const long double px = std::cos(t / 2), py = std::sin(t / 2);
  const long double qx = std::cos(a / 2), qy = std::sin(a / 2);
  const long double vx = std::cos(t / 2), vy = 0.0L;
  return static_cast<double>((px - qx) * (vx - qx) + (py - qy) * (vy - qy));
}

double stated_bound(double theta) { return -std::pow(theta, 3) / 8 + std::pow(theta, 4) / 24; }

}  // namespace

TEST_CASE("lemma31_dot against the direct construction") {
  for (double theta : {1.0, 0.7, 0.3, 0.1, 0.03}) {
    for (double f : {0.0, 0.3, 0.9}) {
      const double lo = theta * theta / 2;
      const double alpha = lo + f * (theta - lo);
      CAPTURE(theta);
      CAPTURE(alpha);
      const double d = lemma31_dot(theta, alpha);
      CHECK(d == doctest::Approx(dot_reference(theta, alpha)).epsilon(1e-9));
      CHECK(d < 0.0);
    }
  }
  CHECK(lemma31_dot(0.1, 0.005) < 0.0);
  CHECK(lemma31_dot(1.0, 0.5) == doctest::Approx(-0.04906191406881).epsilon(1e-12));
}

TEST_CASE("lemma31_dot small-angle limit is -theta^3/8") {
  const double t = 1e-3;
  CHECK(lemma31_dot(t, t * t / 2) / (t * t * t) == doctest::Approx(-0.125).epsilon(1e-3));
}

TEST_CASE("the theta^4/12 bound holds and the theta^4/24 bound fails near theta = 1") {
  for (int i = 0; i < 200; ++i) {
    const double t = std::pow(10.0, -3.0 + 3.0 * i / 199);
    CHECK(lemma31_dot(t, t * t / 2) < lemma31_dot_bound(t));
  }
  // Fourth-order term of the expansion: dot = -t^3/8 + t^4/12 + O(t^5).
  // At t = 1 the weaker constant is violated outright.
  CHECK(lemma31_dot(1.0, 0.5) > stated_bound(1.0));
}

TEST_CASE("lemma31 preconditions") {
  CHECK_THROWS(lemma31_dot(0.0, 0.1));
  CHECK_THROWS(lemma31_dot(1.5, 1.2));
  CHECK_THROWS(lemma31_dot(0.5, 0.1));   // alpha < theta^2/2
  CHECK_THROWS(lemma31_dot(0.5, 0.5));   // alpha = theta
}

TEST_CASE("split triangles are disjoint") {
  for (int n = 1; n <= 10; ++n) CHECK(triangles_disjoint(theta(n), gap_length(n)));
  CHECK(triangles_disjoint(1.0, 0.5));
  for (double t : {1.0, 0.4, 0.05}) CHECK(triangles_disjoint(t, 0.99 * t));
  const SplitTriangles s = split_triangles(1.0, 0.5);
  CHECK(s.upper.area() > 0.0);
  CHECK(s.lower.area() == doctest::Approx(s.upper.area()).epsilon(1e-12));
}

TEST_CASE("poincare_check closed forms") {
  const double pi = std::numbers::pi;
  const Check sine = poincare_check(RectangleField::sample(
      {0, 1, 0, 1}, [&](double x, double) { return std::sin(pi * x); },
      [&](double x, double) { return pi * std::cos(pi * x); }));
  CHECK(sine.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sine.rhs == doctest::Approx(4.0 / pi).epsilon(1e-12));
  CHECK(sine.passed());

  const Check zero = poincare_check(
      RectangleField::sample({0, 1, 0, 1}, [](double, double) { return 0.0; }, [](double, double) { return 0.0; }));
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.passed());

  const Check parab = poincare_check(RectangleField::sample(
      {0, 1, 0, 1}, [](double x, double) { return x * (1 - x); }, [](double x, double) { return 1 - 2 * x; }));
  CHECK(parab.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(parab.rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(parab.passed());

  // Sharpness: sin on a long rectangle keeps the ratio 2 / (4/pi).
  const Check wide = poincare_check(RectangleField::sample(
      {-1, 3, 0, 0.5}, [&](double x, double) { return std::sin(pi * (x + 1) / 4); },
      [&](double x, double) { return pi / 4 * std::cos(pi * (x + 1) / 4); }));
  CHECK(wide.lhs / wide.rhs == doctest::Approx(pi / 2).epsilon(1e-10));
}

TEST_CASE("poincare_check rejects fields that do not vanish on the side edges") {
  const auto field =
      RectangleField::sample({0, 1, 0, 1}, [](double x, double) { return x; }, [](double, double) { return 1.0; });
  CHECK_THROWS_AS(poincare_check(field), std::invalid_argument);
  CHECK_THROWS_AS(RectangleField::sample({1, 0, 0, 1}, [](double, double) { return 0.0; },
                                         [](double, double) { return 0.0; }),
                  std::invalid_argument);
}

TEST_CASE("sqrt_inequality_check") {
  const int m = 64;
  const Eigen::ArrayXd w = Eigen::ArrayXd::Constant(m, 1.0 / m);
  const Eigen::ArrayXd g = Eigen::ArrayXd::LinSpaced(m, 0.0, 2.0);
  const Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(m);
  const double delta = (w * g).sum();

  // h = 0: lhs = delta and rhs = delta^2 / (2M + delta).
  const double bigM = 0.7;
  const Check c = sqrt_inequality_check(IntegrandPair(g, zero, w, delta, bigM));
  CHECK(c.lhs == doctest::Approx(delta).epsilon(1e-14));
  CHECK(c.rhs == doctest::Approx(delta * delta / (2 * bigM + delta)).epsilon(1e-14));
  CHECK(c.passed());

  const Check same = sqrt_inequality_check(IntegrandPair(g, g, w, delta, delta));
  CHECK(same.lhs == doctest::Approx(std::sqrt(2.0) * delta).epsilon(1e-14));
  CHECK(same.passed());

  Eigen::ArrayXd neg = g;
  neg[3] = -0.1;
  CHECK_THROWS_AS(IntegrandPair(neg, g, w, 0.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(IntegrandPair(g, g, w, delta + 0.1, 10.0), std::invalid_argument);  // integral of g < delta
  CHECK_THROWS_AS(IntegrandPair(g, g, w, delta, delta - 0.1), std::invalid_argument);  // integral of h > M
}

TEST_CASE("sqrt inequality on random pairs keeps a nonnegative margin") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int m = 256;
  const Eigen::ArrayXd w = Eigen::ArrayXd::Constant(m, 1.0 / m);
  for (int trial = 0; trial < 300; ++trial) {
    Eigen::ArrayXd g(m), h(m);
    const double sparsity = 0.9 * u(rng);
    for (int i = 0; i < m; ++i) {
      g[i] = u(rng) < sparsity ? 0.0 : u(rng);
      h[i] = u(rng);
    }
    const double d = (w * g).sum();
    const Check c = sqrt_inequality_check(IntegrandPair(g, h, w, d, (w * h).sum()));
    CHECK(c.lhs - c.rhs >= 0.0);
  }
}

TEST_CASE("test fields: gradients agree with finite differences") {
  const TestField fields[] = {polynomial_field(2, {0.3, -1, 0.5, 2, 0.1, 0, -0.7, 0, 0}),
                              random_polynomial_field(4242), cap_indicator_field(0.2), constant_field(0.4)};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  const double h = 1e-6;
  for (const TestField& f : fields) {
    CAPTURE(f.name);
    for (int i = 0; i < 50; ++i) {
      const Point2d x(u(rng), u(rng));
      const Point2d g = f.gradient(x);
      const double gx = (f.value(x + Point2d(h, 0)) - f.value(x - Point2d(h, 0))) / (2 * h);
      const double gy = (f.value(x + Point2d(0, h)) - f.value(x - Point2d(0, h))) / (2 * h);
      CHECK(g.x() == doctest::Approx(gx).epsilon(1e-6).scale(1.0));
      CHECK(g.y() == doctest::Approx(gy).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("cap field is 1 on C_0 and 0 on the lower half") {
  const TestField f = cap_indicator_field(0.2);
  CHECK(f.vanishes_on_lower_half);
  CHECK(f.dominates_cantor_trace);
  for (double a = -0.5; a <= 0.5; a += 0.05) CHECK(f.value(unit_circle_point(kHalfPi + a)) == 1.0);
  for (double a = 0.0; a <= std::numbers::pi; a += 0.1) CHECK(f.value(unit_circle_point(-a)) == 0.0);
  CHECK_THROWS(cap_indicator_field(0.0));
  CHECK_THROWS(cap_indicator_field(0.5));
}

TEST_CASE("chord trace maps") {
  for (int n = 1; n <= 3; ++n) {
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      const ArcAddress a = address_at(n, i);
      const BarrierComponent comp = component(a);
      const ChordTrace tr = chord_chain(a);
      const double s = tr.parameter_length();
      CHECK(s == doctest::Approx(2 * std::sin(theta(n) / 2)).epsilon(1e-13));
      REQUIRE(tr.map_count() == n + 2);
      for (int k = 1; k <= n + 1; ++k) {
        const Segment2d link = comp.links[k - 1].left_to_right();
        CHECK((tr.phi(k, 0.0) - link.p).norm() < 1e-12);
        CHECK((tr.phi(k, s) - link.q).norm() < 1e-12);
      }
      for (double t : {0.0, 0.3 * s, 0.5 * s, s}) {
        const Point2d p0 = tr.phi(0, t), p1 = tr.phi(1, t);
        CHECK(std::abs(p0.norm() - 1.0) < 1e-12);
        const Point2d d = p0 - p1;
        if (d.norm() > 1e-14) CHECK(d.normalized().dot(tr.normal()) == doctest::Approx(-1.0).epsilon(1e-12));
      }
      REQUIRE(tr.samples().size() == static_cast<std::size_t>(n + 2));
      CHECK(tr.samples()[0].size() == 17);
    }
  }
}

TEST_CASE("chain inequalities for the cap field and a constant") {
  for (int n = 1; n <= 3; ++n) {
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      const ChainReport r = chain_inequality_check(cap_indicator_field(0.2), address_at(n, i));
      for (const Check& c : r.checks) {
        CAPTURE(c.name);
        CAPTURE(c.inputs);
        CHECK(c.passed());
      }
      CHECK(r.differences.size() == static_cast<std::size_t>(n + 1));
      CHECK(r.region_integrals.size() == static_cast<std::size_t>(n + 2));
      // The cap field is 1 on the arc, so ||g_0|| is the chord length.
      CHECK(r.g0_norm == doctest::Approx(2 * std::sin(theta(n) / 2)).epsilon(1e-8));
    }
  }
  // A constant field has vanishing differences and region integrals.
  const ChainReport flat = chain_inequality_check(constant_field(2.0), address_at(2, 1));
  for (double d : flat.differences) CHECK(d == doctest::Approx(0.0));
  for (double r : flat.region_integrals) CHECK(r == doctest::Approx(0.0));
  CHECK(flat.passed());
}

TEST_CASE("aggregate regrouping for the cap field") {
  for (int n = 1; n <= 3; ++n) {
    const AggregateReport r = aggregate_check(cap_indicator_field(0.2), n);
    CAPTURE(n);
    CHECK(r.passed());
    CHECK(std::abs(r.grouped_by_triangle - r.grouped_by_chain) < 1e-8);
  }
  CHECK_THROWS(aggregate_check(constant_field(1.0), 6));
}
