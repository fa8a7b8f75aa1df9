#include "lgc/lemmas.hpp"

#include <cmath>
#include <sstream>
#include <tuple>
#include <stdexcept>

namespace lgc {

bool Check::holds() const {
  if (relation == Relation::Equal) return std::abs(lhs - rhs) <= margin;
  return lhs >= rhs - margin;
}

namespace {

constexpr double kArithmeticSlack = 1e-14;

// A quadrature estimate counts as converged when it is small next to the
// value it qualifies.
bool estimate_ok(const QuadratureResult& r) { return r.error_estimate <= 1e-7 + 1e-4 * std::abs(r.value); }

// Doubles the panel count until the estimate converges or `max_panels` is
// reached; an unconverged result is reported through Check::converged.
template <class Rule>
QuadratureResult refine(const Rule& rule, QuadratureOptions opt, int max_panels, double abs_tol = 0.0) {
  QuadratureResult r = rule(opt);
  auto done = [&] { return abs_tol > 0.0 ? r.error_estimate <= abs_tol : estimate_ok(r); };
  while (!done() && opt.panels < max_panels) {
    opt.panels *= 2;
    r = rule(opt);
  }
  return r;
}

constexpr int kMaxPanels1d = 4096;
constexpr int kMaxPanels2d = 64;
constexpr int kMaxPanelsRectangle = 128;

Check make_check(std::string name, std::string inputs, const QuadratureResult& lhs, const QuadratureResult& rhs,
                 Check::Relation relation = Check::Relation::GreaterEqual) {
  Check c;
  c.name = std::move(name);
  c.inputs = std::move(inputs);
  c.relation = relation;
  c.lhs = lhs.value;
  c.rhs = rhs.value;
  c.margin = kMarginFactor * (lhs.error_estimate + rhs.error_estimate) +
             kArithmeticSlack * (1.0 + std::abs(lhs.value) + std::abs(rhs.value));
  c.converged = estimate_ok(lhs) && estimate_ok(rhs);
  return c;
}

void require_lemma31_range(double theta, double alpha) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::domain_error("theta must lie in (0, 1]");
  if (!(alpha >= 0.5 * theta * theta * (1.0 - kArithmeticSlack) && alpha < theta)) {
    throw std::domain_error("alpha must lie in [theta^2/2, theta)");
  }
}

std::string format_inputs(const std::string& field, const ArcAddress& address) {
  std::ostringstream os;
  os << "field=" << field << ";address=" << address.str();
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

double lemma31_dot(double theta, double alpha) {
  require_lemma31_range(theta, alpha);
  // Sum-to-product forms of P - Q and V - Q avoid cancellation for small theta.
  const double plus = 0.25 * (theta + alpha);
  const double minus = std::sin(0.25 * (theta - alpha));
  const double dx = -2.0 * std::sin(plus) * minus;
  const double dy = 2.0 * std::cos(plus) * minus;
  return dx * dx - dy * std::sin(0.5 * alpha);
}

double lemma31_dot_bound(double theta) {
  const double t3 = theta * theta * theta;
  return -t3 / 8.0 + t3 * theta / 12.0;
}

SplitTriangles split_triangles(double theta, double alpha) {
  require_lemma31_range(theta, alpha);
  const Point2d p = unit_circle_point(0.5 * theta);
  const Point2d q = unit_circle_point(0.5 * alpha);
  const Point2d r = unit_circle_point(-0.5 * alpha);
  const Point2d s = unit_circle_point(-0.5 * theta);
  const Segment2d ps{p, s};
  const Point2d t = line_intersection(Segment2d{q, q + perp<double>(p - q)}, ps);
  const Point2d u = line_intersection(Segment2d{r, r + perp<double>(s - r)}, ps);
  return {Polygon({p, q, t}), Polygon({r, s, u})};
}

bool triangles_disjoint(double theta, double alpha) {
  const SplitTriangles tri = split_triangles(theta, alpha);
  return distance(tri.upper, tri.lower) > 0.0;
}

// ---------------------------------------------------------------------------

RectangleField RectangleField::sample(const Rectangle& domain, const std::function<double(double, double)>& u,
                                      const std::function<double(double, double)>& ux, QuadratureOptions opt) {
  if (!(domain.b > domain.a && domain.d > domain.c)) {
    throw std::invalid_argument("rectangle must have positive extent");
  }
  if (opt.order < 1 || opt.panels < 2) throw std::invalid_argument("rectangle sampling needs panels >= 2");
  const GaussRule& g = gauss_legendre(opt.order);

  auto nodes_1d = [&](double lo, double hi, int panels, std::vector<double>& x, std::vector<double>& w) {
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + h * (p + 0.5);
      for (int i = 0; i < opt.order; ++i) {
        x.push_back(mid + 0.5 * h * g.nodes[i]);
        w.push_back(0.5 * h * g.weights[i]);
      }
    }
  };
  auto build = [&](int panels) {
    std::vector<double> xs, wx, ys, wy;
    nodes_1d(domain.a, domain.b, panels, xs, wx);
    nodes_1d(domain.c, domain.d, panels, ys, wy);
    Level level;
    const Eigen::Index n = static_cast<Eigen::Index>(xs.size() * ys.size());
    level.weights.resize(n);
    level.u.resize(n);
    level.ux.resize(n);
    Eigen::Index idx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j, ++idx) {
        level.weights[idx] = wx[i] * wy[j];
        level.u[idx] = u(xs[i], ys[j]);
        level.ux[idx] = ux(xs[i], ys[j]);
      }
    }
    return std::pair{level, ys};
  };

  // |u| and |u_x| have kinks along the zero lines of u and u_x, so the panel
  // count doubles until both integrals settle.
  auto settled = [](const Level& fine, const Level& coarse) {
    auto integral = [](const Level& l, const Eigen::ArrayXd& f) { return (l.weights * f.abs()).sum(); };
    const double u_f = integral(fine, fine.u), ux_f = integral(fine, fine.ux);
    return estimate_ok({u_f, std::abs(u_f - integral(coarse, coarse.u))}) &&
           estimate_ok({ux_f, std::abs(ux_f - integral(coarse, coarse.ux))});
  };
  RectangleField field;
  field.domain_ = domain;
  field.coarse_ = build(opt.panels / 2).first;
  auto [fine, ys] = build(opt.panels);
  while (!settled(fine, field.coarse_) && opt.panels < kMaxPanelsRectangle) {
    opt.panels *= 2;
    field.coarse_ = std::move(fine);
    std::tie(fine, ys) = build(opt.panels);
  }
  field.fine_ = std::move(fine);
  field.scale_ = field.fine_.u.abs().maxCoeff();
  for (double y : ys) {
    field.edge_max_ = std::max({field.edge_max_, std::abs(u(domain.a, y)), std::abs(u(domain.b, y))});
  }
  return field;
}

Check poincare_check(const RectangleField& field) {
  if (field.edge_max() > 1e-12 * std::max(1.0, field.scale())) {
    throw std::invalid_argument("field does not vanish on the edges x = a and x = b");
  }
  const double factor = 2.0 / (field.domain().b - field.domain().a);
  auto lhs_of = [](const RectangleField::Level& l) { return (l.weights * l.ux.abs()).sum(); };
  auto rhs_of = [&](const RectangleField::Level& l) { return factor * (l.weights * l.u.abs()).sum(); };
  const double lf = lhs_of(field.fine());
  const double rf = rhs_of(field.fine());
  const QuadratureResult lhs{lf, std::abs(lf - lhs_of(field.coarse()))};
  const QuadratureResult rhs{rf, std::abs(rf - rhs_of(field.coarse()))};
  const Rectangle& r = field.domain();
  std::ostringstream os;
  os << "rectangle=" << r.a << "," << r.b << "," << r.c << "," << r.d;
  return make_check("poincare", os.str(), lhs, rhs);
}

// ---------------------------------------------------------------------------

IntegrandPair::IntegrandPair(Eigen::ArrayXd g, Eigen::ArrayXd h, Eigen::ArrayXd weights, double delta,
                             double bigM)
    : g_(std::move(g)), h_(std::move(h)), weights_(std::move(weights)), delta_(delta), bigM_(bigM) {
  if (g_.size() != h_.size() || g_.size() != weights_.size() || g_.size() == 0) {
    throw std::invalid_argument("g, h and weights must be nonempty and of equal size");
  }
  if (!g_.allFinite() || !h_.allFinite() || !weights_.allFinite()) {
    throw std::invalid_argument("integrands must be finite");
  }
  if ((g_ < 0.0).any() || (h_ < 0.0).any()) throw std::invalid_argument("g and h must be nonnegative");
  if ((weights_ <= 0.0).any()) throw std::invalid_argument("quadrature weights must be positive");
  if (!(delta_ > 0.0) || !(bigM_ > 0.0)) throw std::invalid_argument("delta and M must be positive");
  const double int_g = (weights_ * g_).sum();
  const double int_h = (weights_ * h_).sum();
  if (int_g < delta_ * (1.0 - kArithmeticSlack)) throw std::invalid_argument("integral of g is below delta");
  if (int_h > bigM_ * (1.0 + kArithmeticSlack)) throw std::invalid_argument("integral of h exceeds M");
}

Check sqrt_inequality_check(const IntegrandPair& pair) {
  const auto& w = pair.weights();
  const double lhs = (w * (pair.g().square() + pair.h().square()).sqrt()).sum();
  const double d = pair.delta();
  const double rhs = (w * pair.h()).sum() + d * d / (2.0 * pair.bigM() + d);
  std::ostringstream os;
  os << "points=" << w.size() << ";delta=" << d << ";M=" << pair.bigM();
  return make_check("sqrt_gap", os.str(), {lhs, 0.0}, {rhs, 0.0});
}

// ---------------------------------------------------------------------------

TestField constant_field(double c) {
  TestField f;
  f.name = "constant";
  f.value = [c](const Point2d&) { return c; };
  f.gradient = [](const Point2d&) { return Point2d::Zero().eval(); };
  f.dominates_cantor_trace = c >= 1.0;
  return f;
}

TestField polynomial_field(int degree, const std::vector<double>& coeffs) {
  if (degree < 0) throw std::invalid_argument("polynomial degree must be nonnegative");
  const std::size_t m = static_cast<std::size_t>(degree) + 1;
  if (coeffs.size() != m * m) throw std::invalid_argument("polynomial needs (degree+1)^2 coefficients");
  auto powers = [m](double x) {
    std::vector<double> p(m + 1, 1.0);
    for (std::size_t i = 1; i <= m; ++i) p[i] = p[i - 1] * x;
    return p;
  };
  TestField f;
  f.name = "polynomial";
  f.value = [=](const Point2d& x) {
    const auto px = powers(x.x());
    const auto py = powers(x.y());
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; i + j < m; ++j) s += coeffs[i * m + j] * px[i] * py[j];
    return s;
  };
  f.gradient = [=](const Point2d& x) {
    const auto px = powers(x.x());
    const auto py = powers(x.y());
    Point2d g = Point2d::Zero();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; i + j < m; ++j) {
        const double c = coeffs[i * m + j];
        if (i > 0) g.x() += c * double(i) * px[i - 1] * py[j];
        if (j > 0) g.y() += c * double(j) * px[i] * py[j - 1];
      }
    }
    return g;
  };
  return f;
}

TestField cap_indicator_field(double width) {
  const double c = cut_height();
  if (!(width > 0.0 && 2.0 * width < c)) throw std::invalid_argument("cap width must lie in (0, cos(1/2)/2)");
  const double base = c - 2.0 * width;
  TestField f;
  f.name = "cap_indicator";
  f.value = [=](const Point2d& x) {
    const double t = std::clamp((x.y() - base) / width, 0.0, 1.0);
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
  };
  f.gradient = [=](const Point2d& x) {
    const double t = (x.y() - base) / width;
    if (t <= 0.0 || t >= 1.0) return Point2d::Zero().eval();
    const double ds = 30.0 * t * t * (t - 1.0) * (t - 1.0);
    return Point2d(0.0, ds / width);
  };
  f.vanishes_on_lower_half = true;
  f.dominates_cantor_trace = true;
  return f;
}

// ---------------------------------------------------------------------------

ChordTrace::ChordTrace(const BarrierComponent& component, int samples_per_map)
    : address_(component.address),
      arc_(resolve(component.address)),
      normal_(inward_normal(arc_).direction),
      s_(component.links.front().length()),
      links_(component.links) {
  if (samples_per_map < 2) throw std::invalid_argument("need at least two samples per map");
  samples_.resize(static_cast<std::size_t>(map_count()));
  for (int k = 0; k < map_count(); ++k) {
    for (int i = 0; i < samples_per_map; ++i) {
      const double t = s_ * i / (samples_per_map - 1);
      samples_[k].emplace_back(t, phi(k, t));
    }
  }
}

Point2d ChordTrace::phi(int k, double t) const {
  if (k < 0 || k >= map_count()) throw std::out_of_range("phi index out of range");
  if (k >= 1) return links_[k - 1].at(t / s_);
  const Point2d c = links_[0].at(t / s_);
  const double cv = c.dot(normal_);
  const double step = cv + std::sqrt(std::max(0.0, cv * cv + 1.0 - c.squaredNorm()));
  return c - step * normal_;
}

ChordTrace chord_chain(const ArcAddress& address, int samples_per_map) {
  if (address.depth() < 1) throw std::invalid_argument("chord chains need depth >= 1");
  return ChordTrace(component(address), samples_per_map);
}

bool ChainReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

ChainReport chain_inequality_check(const TestField& field, const ArcAddress& address, QuadratureOptions opt) {
  const BarrierComponent comp = component(address);
  const ChordTrace trace(comp, 2);
  const int n = address.depth();
  const double s = trace.parameter_length();
  const std::string inputs = format_inputs(field.name, address);

  auto g = [&](int k) { return [&, k](double t) { return field.value(trace.phi(k, t)); }; };
  auto directional = [&](const Point2d& v) {
    return [&, v](const Point2d& x) { return std::abs(field.gradient(x).dot(v)); };
  };

  ChainReport report;
  report.address = address;
  std::vector<QuadratureResult> diffs;
  for (int k = 0; k <= n; ++k) {
    const auto a = g(k);
    const auto b = g(k + 1);
    diffs.push_back(refine([&](QuadratureOptions o) { return integrate_interval([&](double t) { return std::abs(b(t) - a(t)); }, 0.0, s, o); }, opt, kMaxPanels1d));
    report.differences.push_back(diffs.back().value);
  }
  const auto g0 = g(0);
  const auto gl = g(n + 1);
  const QuadratureResult g0_norm = refine([&](QuadratureOptions o) { return integrate_interval([&](double t) { return std::abs(g0(t)); }, 0.0, s, o); }, opt, kMaxPanels1d);
  const QuadratureResult last_norm = refine([&](QuadratureOptions o) { return integrate_interval([&](double t) { return std::abs(gl(t)); }, 0.0, s, o); }, opt, kMaxPanels1d);
  report.g0_norm = g0_norm.value;
  report.last_norm = last_norm.value;

  std::vector<QuadratureResult> regions;
  regions.push_back(refine([&](QuadratureOptions o) { return integrate_circular_segment(directional(trace.normal()), comp.segment, o); }, opt, kMaxPanels2d));
  for (int k = 0; k < n; ++k) {
    const Point2d v = inward_normal(resolve(address.ancestor(k))).direction;
    regions.push_back(refine([&](QuadratureOptions o) { return integrate_polygon(directional(v), comp.polygons[k], o); }, opt, kMaxPanels2d));
  }
  regions.push_back(refine([&](QuadratureOptions o) { return integrate_bottom(directional(Point2d(0.0, 1.0)), comp.bottom, o); }, opt, kMaxPanels2d));
  for (const auto& r : regions) report.region_integrals.push_back(r.value);

  report.checks.push_back(make_check("w_segment", inputs, regions[0], diffs[0]));
  for (int k = 1; k <= n; ++k) {
    report.checks.push_back(make_check("sweep_" + std::to_string(k), inputs, regions[k], diffs[k]));
  }
  if (field.vanishes_on_lower_half) {
    report.checks.push_back(make_check("bottom", inputs, regions[n + 1], last_norm));
  }
  QuadratureResult telescoped = last_norm;
  for (const auto& d : diffs) telescoped += d;
  report.checks.push_back(make_check("triangle_decomposition", inputs, telescoped, g0_norm));

  QuadratureResult arc_mass = refine(
      [&](QuadratureOptions o) {
        return integrate_arc([&](const Point2d& x) { return std::abs(field.value(x)); }, trace.arc(), o);
      },
      opt, kMaxPanels1d);
  const double cos_half = std::cos(0.5 * theta(n));
  arc_mass.value *= cos_half;
  arc_mass.error_estimate *= cos_half;
  report.checks.push_back(make_check("arc_projection", inputs, g0_norm, arc_mass));

  if (field.vanishes_on_lower_half && field.dominates_cantor_trace) {
    QuadratureResult total;
    for (const auto& r : regions) total += r;
    const double bound = cos_half * std::ldexp(cantor_measure_limit(1e-15), -n);
    report.checks.push_back(make_check("chain_total", inputs, total, {bound, 0.0}));
  }
  return report;
}

// ---------------------------------------------------------------------------

bool AggregateReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

AggregateReport aggregate_check(const TestField& field, int n, QuadratureOptions opt) {
  if (n < 1 || n > 5) throw std::invalid_argument("aggregate checks support 1 <= n <= 5");
  const std::vector<BarrierComponent> comps = barrier(n);
  std::ostringstream os;
  os << "field=" << field.name << ";n=" << n;
  const std::string inputs = os.str();

  auto directional = [&](const Point2d& v) {
    return [&, v](const Point2d& x) { return std::abs(field.gradient(x).dot(v)); };
  };
  auto box_of = [](const std::vector<Point2d>& pts) {
    Eigen::AlignedBox2d box;
    for (const auto& p : pts) box.extend(p);
    return box;
  };

  // The regrouping identity is compared at 1e-8, so its pieces are refined
  // to an absolute target well below that.
  constexpr double kRegroupTol = 1e-11;

  // Grouping by chains: every T_k(A') with the direction of its own ancestor.
  QuadratureResult by_chain, area_by_chain;
  QuadratureResult total;
  std::vector<std::vector<Eigen::AlignedBox2d>> piece_boxes(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const BarrierComponent& comp = comps[c];
    total += refine([&](QuadratureOptions o) { return integrate_circular_segment(directional(inward_normal(comp.segment.arc).direction), comp.segment, o); }, opt, kMaxPanels2d);
    total += refine([&](QuadratureOptions o) { return integrate_bottom(directional(Point2d(0.0, 1.0)), comp.bottom, o); }, opt, kMaxPanels2d);
    for (int k = 0; k < n; ++k) {
      const Point2d v = inward_normal(resolve(comp.address.ancestor(k))).direction;
      by_chain += refine([&](QuadratureOptions o) { return integrate_polygon(directional(v), comp.polygons[k], o); }, opt, kMaxPanels2d, kRegroupTol);
      area_by_chain.value += comp.polygons[k].area();
      piece_boxes[c].push_back(box_of(comp.polygons[k].vertices()));
    }
  }
  total += by_chain;

  // Grouping by triangles: T(A) for every arc of depth 1..n, intersected with
  // each piece of B_n and integrated with the direction of A.
  QuadratureResult by_triangle, area_by_triangle;
  for (int m = 1; m <= n; ++m) {
    const std::size_t count = std::size_t{1} << m;
    for (std::size_t i = 0; i < count; ++i) {
      const ArcAddress a = address_at(m, i);
      const Polygon tri = right_triangle(a).polygon();
      const Eigen::AlignedBox2d tri_box = box_of(tri.vertices());
      const Point2d v = inward_normal(resolve(a)).direction;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int k = 0; k < n; ++k) {
          if (!tri_box.intersects(piece_boxes[c][k])) continue;
          auto pts = dedupe_vertices(intersect(tri, comps[c].polygons[k]), 1e-13);
          if (pts.size() < 3 || std::abs(shoelace_area(pts)) < 1e-18) continue;
          try {
            const Polygon piece(std::move(pts));
            by_triangle += refine([&](QuadratureOptions o) { return integrate_polygon(directional(v), piece, o); }, opt, kMaxPanels2d, kRegroupTol);
            area_by_triangle.value += piece.area();
          } catch (const GeometryError&) {
            // Slivers with roundoff-level area cannot carry a measurable
            // share of the integral.
          }
        }
      }
    }
  }

  AggregateReport report;
  report.depth = n;
  report.grouped_by_triangle = by_triangle.value;
  report.grouped_by_chain = by_chain.value;
  Check regroup = make_check("regrouping", inputs, by_triangle, by_chain, Check::Relation::Equal);
  regroup.margin = 1e-8;
  report.checks.push_back(regroup);
  Check regroup_area = make_check("regrouping_area", inputs, area_by_triangle, area_by_chain, Check::Relation::Equal);
  regroup_area.margin = 1e-12;
  report.checks.push_back(regroup_area);
  if (field.vanishes_on_lower_half && field.dominates_cantor_trace) {
    const double bound = std::cos(std::ldexp(cantor_measure(n), -(n + 1))) * cantor_measure_limit(1e-15);
    report.checks.push_back(make_check("barrier_total", inputs, total, {bound, 0.0}));
  }
  return report;
}

}  // namespace lgc
