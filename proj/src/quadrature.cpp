#include "lgc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace lgc {

namespace {

GaussRule build_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    // Newton iteration on P_order from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Tensor rule over [0,1]^2 split into panels x panels squares.
template <class F>
double tensor_unit_square(const F& f, int order, int panels) {
  const GaussRule& g = gauss_legendre(order);
  const double h = 1.0 / panels;
  double total = 0.0;
  for (int pi = 0; pi < panels; ++pi) {
    for (int pj = 0; pj < panels; ++pj) {
      for (int i = 0; i < order; ++i) {
        const double u = h * (pi + 0.5 * (g.nodes[i] + 1.0));
        for (int j = 0; j < order; ++j) {
          const double v = h * (pj + 0.5 * (g.nodes[j] + 1.0));
          total += g.weights[i] * g.weights[j] * f(u, v);
        }
      }
    }
  }
  return total * 0.25 * h * h;
}

double interval_rule(const ScalarFn1& f, double a, double b, int order, int panels) {
  const GaussRule& g = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + h * (p + 0.5);
    for (int i = 0; i < order; ++i) total += g.weights[i] * f(mid + 0.5 * h * g.nodes[i]);
  }
  return 0.5 * h * total;
}

// Collapsed (Duffy) Gauss rule on one triangle.
double triangle_rule(const ScalarFn2& f, const Point2d& a, const Point2d& b, const Point2d& c, int order) {
  const GaussRule& g = gauss_legendre(order);
  const double jac = std::abs(cross<double>(b - a, c - a));
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    const double u = 0.5 * (g.nodes[i] + 1.0);
    for (int j = 0; j < order; ++j) {
      const double v = 0.5 * (g.nodes[j] + 1.0);
      const Point2d x = a + u * ((1.0 - v) * (b - a) + v * (c - a));
      total += g.weights[i] * g.weights[j] * u * f(x);
    }
  }
  return 0.25 * jac * total;
}

double refined_triangle(const ScalarFn2& f, const Point2d& a, const Point2d& b, const Point2d& c, int order,
                        int m) {
  const Point2d e1 = (b - a) / m;
  const Point2d e2 = (c - a) / m;
  auto node = [&](int i, int j) -> Point2d { return a + i * e1 + j * e2; };
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; i + j < m; ++j) {
      total += triangle_rule(f, node(i, j), node(i + 1, j), node(i, j + 1), order);
      if (i + j < m - 1) total += triangle_rule(f, node(i + 1, j), node(i + 1, j + 1), node(i, j + 1), order);
    }
  }
  return total;
}

int coarse_panels(int panels) { return std::max(1, panels / 2); }

void check_options(const QuadratureOptions& opt) {
  if (opt.order < 1 || opt.panels < 1) throw std::invalid_argument("quadrature order and panels must be >= 1");
}

template <class Rule>
QuadratureResult with_estimate(const Rule& rule, const QuadratureOptions& opt) {
  check_options(opt);
  const double fine = rule(opt.panels);
  const double coarse = opt.panels > 1 ? rule(coarse_panels(opt.panels)) : fine;
  return {fine, std::abs(fine - coarse)};
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 128) throw std::invalid_argument("Gauss-Legendre order must be in [1, 128]");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

QuadratureResult integrate_interval(const ScalarFn1& f, double a, double b, QuadratureOptions opt) {
  return with_estimate([&](int panels) { return interval_rule(f, a, b, opt.order, panels); }, opt);
}

QuadratureResult integrate_triangle(const ScalarFn2& f, const Point2d& a, const Point2d& b, const Point2d& c,
                                    QuadratureOptions opt) {
  return with_estimate([&](int panels) { return refined_triangle(f, a, b, c, opt.order, panels); }, opt);
}

QuadratureResult integrate_polygon(const ScalarFn2& f, const Polygon& poly, QuadratureOptions opt) {
  QuadratureResult total;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    total += integrate_triangle(f, poly.vertex(0), poly.vertex(i), poly.vertex(i + 1), opt);
  }
  return total;
}

QuadratureResult integrate_circular_segment(const ScalarFn2& f, const CircularSegment& seg,
                                            QuadratureOptions opt) {
  const double half = 0.5 * seg.arc.length();
  const Point2d radial = unit_circle_point(seg.arc.mid());
  const Point2d tangent = perp(radial);
  auto integrand = [&](double u, double v) {
    const double psi = u * half;
    const double s = 2.0 * v - 1.0;
    const double sp = std::sin(psi);
    const Point2d x = std::cos(psi) * radial + (s * sp) * tangent;
    return sp * sp * f(x);
  };
  // dpsi = half du, ds = 2 dv
  return with_estimate(
      [&](int panels) { return 2.0 * half * tensor_unit_square(integrand, opt.order, panels); }, opt);
}

QuadratureResult integrate_bottom(const ScalarFn2& f, const BottomRegion& bot, QuadratureOptions opt) {
  const double width = bot.x_hi - bot.x_lo;
  auto integrand = [&](double u, double v) {
    const double x1 = bot.x_lo + u * width;
    const double y_low = -std::sqrt(std::max(0.0, 1.0 - x1 * x1));
    const double height = bot.cut_height - y_low;
    return height * f(Point2d(x1, y_low + v * height));
  };
  return with_estimate([&](int panels) { return width * tensor_unit_square(integrand, opt.order, panels); }, opt);
}

QuadratureResult integrate_region(const ScalarFn2& f, const Region& region, QuadratureOptions opt) {
  if (const auto* w = std::get_if<CircularSegment>(&region)) return integrate_circular_segment(f, *w, opt);
  if (const auto* p = std::get_if<Polygon>(&region)) return integrate_polygon(f, *p, opt);
  return integrate_bottom(f, std::get<BottomRegion>(region), opt);
}

QuadratureResult integrate_arc(const ScalarFn2& f, const Arc& arc, QuadratureOptions opt) {
  return integrate_interval([&](double phi) { return f(unit_circle_point(phi)); }, arc.start(), arc.end(), opt);
}

}  // namespace lgc
