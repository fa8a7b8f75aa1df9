#include "lgc/suites.hpp"

#include "lgc/barrier.hpp"
#include "lgc/cantor.hpp"
#include "lgc/lemmas.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lgc {

namespace {

Check ge(std::string name, std::string inputs, double lhs, double rhs, double margin = 0.0) {
  Check c;
  c.name = std::move(name);
  c.inputs = std::move(inputs);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = margin;
  return c;
}

Check eq(std::string name, std::string inputs, double lhs, double rhs, double margin) {
  Check c = ge(std::move(name), std::move(inputs), lhs, rhs, margin);
  c.relation = Check::Relation::Equal;
  return c;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void cantor_suite(std::vector<VerifyEntry>& out) {
  const std::string s = "cantor";
  for (int n = 0; n <= 30; ++n) {
    // Kept length plus every removed gap is the whole of C_0.
    double removed = 0.0;
    for (int k = 0; k < n; ++k) removed += std::ldexp(gap_length(k), k);
    out.push_back({s, eq("gap_bookkeeping", "n=" + std::to_string(n), cantor_measure(n) + removed, 1.0, 1e-14)});
  }
  for (int n = 0; n <= 14; ++n) {
    double total = 0.0;
    for (const Arc& a : arcs(n)) total += a.length();
    // Each length is a difference of offsets near 1/2 and carries about one
    // ulp of 1/2 of rounding.
    const double slack = 4.0 * std::ldexp(std::numeric_limits<double>::epsilon(), n);
    out.push_back({s, eq("arc_lengths_sum", "n=" + std::to_string(n), total, cantor_measure(n), slack)});
  }
  const double limit = cantor_measure_limit(1e-12);
  out.push_back({s, ge("limit_lower", "tol=1e-12", limit, 0.2887880)});
  out.push_back({s, ge("limit_upper", "tol=1e-12", 0.2887881, limit)});
}

void geometry_suite(std::vector<VerifyEntry>& out, int depth) {
  const std::string s = "geometry";
  std::vector<BarrierComponent> coarse;
  for (int n = 1; n <= depth; ++n) {
    std::vector<BarrierComponent> fine = barrier(n);
    const std::string in = "n=" + std::to_string(n);
    if (fine.size() > 1) out.push_back({s, ge("pairwise_disjoint", in, min_pairwise_separation(fine), kGeometryTol)});
    if (!coarse.empty()) out.push_back({s, eq("nested_in_parent", in, nesting_violation(fine, coarse), 0.0, kGeometryTol)});
    coarse = std::move(fine);
  }
}

void lemma31_suite(std::vector<VerifyEntry>& out) {
  const std::string s = "lemma31";
  constexpr int kGrid = 200;
  for (int i = 0; i < kGrid; ++i) {
    const double theta = std::pow(10.0, -3.0 + 3.0 * i / (kGrid - 1));
    const double alpha = 0.5 * theta * theta;
    const double dot = lemma31_dot(theta, alpha);
    const std::string in = "theta=" + fmt(theta);
    out.push_back({s, ge("dot_negative", in, -dot, 0.0)});
    out.push_back({s, ge("dot_below_bound", in, lemma31_dot_bound(theta) - dot, 0.0)});
    out.push_back({s, ge("triangles_disjoint", in, triangles_disjoint(theta, alpha) ? 1.0 : 0.0, 1.0)});
  }
  for (const double theta : {1.0, 0.5, 0.1}) {
    const double alpha = 0.99 * theta;
    out.push_back({s, ge("triangles_disjoint", "theta=" + fmt(theta) + ";alpha=0.99theta",
                         triangles_disjoint(theta, alpha) ? 1.0 : 0.0, 1.0)});
  }
  for (int n = 1; n <= 10; ++n) {
    const std::string in = "n=" + std::to_string(n);
    out.push_back({s, ge("stage_triangles_disjoint", in, triangles_disjoint(theta(n), gap_length(n)) ? 1.0 : 0.0, 1.0)});
  }
}

void lemma32_suite(std::vector<VerifyEntry>& out, int trials, std::uint64_t seed) {
  const std::string s = "lemma32";
  const double pi = std::numbers::pi;
  auto add = [&](Check c, const std::string& label) {
    c.name = label;
    out.push_back({s, std::move(c)});
  };
  add(poincare_check(RectangleField::sample(
          {0, 1, 0, 1}, [&](double x, double) { return std::sin(pi * x); },
          [&](double x, double) { return pi * std::cos(pi * x); })),
      "sine_profile");
  add(poincare_check(RectangleField::sample({0, 1, 0, 1}, [](double, double) { return 0.0; },
                                            [](double, double) { return 0.0; })),
      "zero_field");
  add(poincare_check(RectangleField::sample({0, 1, 0, 1}, [](double x, double) { return x * (1 - x); },
                                            [](double x, double) { return 1 - 2 * x; })),
      "parabola");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), corner(-2.0, 2.0), extent(0.25, 3.0);
  for (int t = 0; t < trials; ++t) {
    const double a = corner(rng), c = corner(rng);
    const Rectangle r{a, a + extent(rng), c, c + extent(rng)};
    double k[4][3];
    for (auto& row : k)
      for (double& v : row) v = coef(rng);
    const double L = r.b - r.a, H = r.d - r.c;
    auto u = [&](double x, double y) {
      double sum = 0.0;
      for (int j = 0; j < 4; ++j)
        for (int m = 0; m < 3; ++m) sum += k[j][m] * std::sin((j + 1) * pi * (x - r.a) / L) * std::cos(m * pi * (y - r.c) / H);
      return sum;
    };
    auto ux = [&](double x, double y) {
      double sum = 0.0;
      for (int j = 0; j < 4; ++j)
        for (int m = 0; m < 3; ++m)
          sum += k[j][m] * (j + 1) * pi / L * std::cos((j + 1) * pi * (x - r.a) / L) * std::cos(m * pi * (y - r.c) / H);
      return sum;
    };
    Check ch = poincare_check(RectangleField::sample(r, u, ux));
    ch.inputs += ";trial=" + std::to_string(t);
    add(std::move(ch), "sine_series");
  }
}

void lemma33_suite(std::vector<VerifyEntry>& out, int trials, std::uint64_t seed) {
  const std::string s = "lemma33";
  constexpr int kSide = 32;
  const Eigen::ArrayXd w = Eigen::ArrayXd::Constant(kSide * kSide, 1.0 / (kSide * kSide));
  {
    const Eigen::ArrayXd g = Eigen::ArrayXd::Constant(kSide * kSide, 0.7);
    const double m = (w * g).sum();
    Check c = sqrt_inequality_check(IntegrandPair(g, g, w, m, m));
    c.name = "equal_constants";
    out.push_back({s, std::move(c)});
  }
  {
    const Eigen::ArrayXd g = Eigen::ArrayXd::Constant(kSide * kSide, 0.4);
    const Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(kSide * kSide);
    Check c = sqrt_inequality_check(IntegrandPair(g, zero, w, (w * g).sum(), 1.0));
    c.name = "zero_h";
    out.push_back({s, std::move(c)});
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Eigen::ArrayXd g(kSide * kSide), h(kSide * kSide);
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = unit(rng);
    for (Eigen::Index i = 0; i < h.size(); ++i) h[i] = unit(rng);
    Check c = sqrt_inequality_check(IntegrandPair(g, h, w, (w * g).sum(), (w * h).sum()));
    c.name = "random_pair";
    c.inputs += ";trial=" + std::to_string(t);
    out.push_back({s, std::move(c)});
  }
}

void chain_suite(std::vector<VerifyEntry>& out, int depth, int trials, std::uint64_t seed) {
  const std::string s = "chain";
  auto take = [&](std::vector<Check> checks) {
    for (auto& c : checks) out.push_back({s, std::move(c)});
  };
  std::vector<TestField> fields{constant_field(1.0), cap_indicator_field(0.2)};
  for (int t = 0; t < trials; ++t) fields.push_back(random_polynomial_field(seed + static_cast<std::uint64_t>(t)));
  for (const TestField& f : fields) {
    for (int n = 1; n <= depth; ++n) {
      for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) take(chain_inequality_check(f, address_at(n, i)).checks);
      take(aggregate_check(f, n).checks);
    }
  }
}

}  // namespace

TestField random_polynomial_field(std::uint64_t seed, int max_degree) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int d = deg(rng);
  std::vector<double> c(static_cast<std::size_t>((d + 1) * (d + 1)));
  for (double& v : c) v = coef(rng);
  TestField f = polynomial_field(d, c);
  f.name = "polynomial(seed=" + std::to_string(seed) + ",degree=" + std::to_string(d) + ")";
  return f;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cantor", "geometry", "lemma31", "lemma32", "lemma33", "chain"};
  return names;
}

std::vector<VerifyEntry> run_suite(const std::string& name, const SuiteOptions& o) {
  std::vector<VerifyEntry> out;
  if (name == "all") {
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, o);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
  }
  if (name == "cantor") {
    cantor_suite(out);
  } else if (name == "geometry") {
    geometry_suite(out, o.geometry_depth);
  } else if (name == "lemma31") {
    lemma31_suite(out);
  } else if (name == "lemma32") {
    lemma32_suite(out, o.poincare_trials, o.seed);
  } else if (name == "lemma33") {
    lemma33_suite(out, o.sqrt_trials, o.seed);
  } else if (name == "chain") {
    chain_suite(out, o.chain_depth, o.polynomial_trials, o.seed);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return out;
}

}  // namespace lgc
