#pragma once

// Composite Gauss-Legendre quadrature on the shapes the barrier is made of.
// Every rule reports the fine value together with |fine - coarse|, where the
// coarse value uses half as many panels per direction.

#include "lgc/barrier.hpp"
#include "lgc/geometry.hpp"

#include <functional>
#include <vector>

namespace lgc {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` points (cached).
const GaussRule& gauss_legendre(int order);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;

  QuadratureResult& operator+=(const QuadratureResult& other) {
    value += other.value;
    error_estimate += other.error_estimate;
    return *this;
  }
};

struct QuadratureOptions {
  int order = 8;
  int panels = 16;
};

using ScalarFn1 = std::function<double(double)>;
using ScalarFn2 = std::function<double(const Point2d&)>;

QuadratureResult integrate_interval(const ScalarFn1& f, double a, double b, QuadratureOptions opt = {});
QuadratureResult integrate_triangle(const ScalarFn2& f, const Point2d& a, const Point2d& b, const Point2d& c,
                                    QuadratureOptions opt = {});
QuadratureResult integrate_polygon(const ScalarFn2& f, const Polygon& poly, QuadratureOptions opt = {});
/// Angular parametrization: the segment is swept by chords parallel to its
/// own chord, indexed by the angle from the arc midpoint.
QuadratureResult integrate_circular_segment(const ScalarFn2& f, const CircularSegment& seg,
                                            QuadratureOptions opt = {});
/// Iterated: x_1 over [x_lo, x_hi], x_2 from the lower circle to the cut.
QuadratureResult integrate_bottom(const ScalarFn2& f, const BottomRegion& bot, QuadratureOptions opt = {});
QuadratureResult integrate_region(const ScalarFn2& f, const Region& region, QuadratureOptions opt = {});

/// Integral over an arc of the unit circle with respect to arc length.
QuadratureResult integrate_arc(const ScalarFn2& f, const Arc& arc, QuadratureOptions opt = {});

}  // namespace lgc
