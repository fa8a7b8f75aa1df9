#include "lgc/solver.hpp"

#include "lgc/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lgc {

std::size_t DiskGrid::count(CellKind k) const { return static_cast<std::size_t>(std::count(kind.begin(), kind.end(), k)); }

double DiskGrid::mask_area() const { return static_cast<double>(count(CellKind::Free)) * h * h; }

double default_band_width(int resolution) { return std::max(2.0 * 2.0 / resolution, 0.01); }

DiskGrid build_grid(int resolution, double band_width) {
  if (resolution < 64) throw std::invalid_argument("grid resolution must be at least 64");
  const double h = 2.0 / resolution;
  if (!(band_width >= h * (1.0 - 1e-12)) || !std::isfinite(band_width)) {
    throw std::invalid_argument("band width must be at least 2 / resolution");
  }
  DiskGrid g;
  g.resolution = resolution;
  g.h = h;
  g.band_width = band_width;
  // One inactive ring of cells beyond the band keeps every stencil in range.
  const int half = static_cast<int>(std::ceil((1.0 + band_width) / h)) + 2;
  g.n = 2 * half;
  g.origin = -half * h;
  const std::size_t cells = static_cast<std::size_t>(g.n) * g.n;
  g.kind.assign(cells, CellKind::Inactive);
  g.band_angle.assign(cells, std::numeric_limits<double>::quiet_NaN());
  const double outer = 1.0 + band_width;
  for (int j = 0; j < g.n; ++j) {
    const double y = g.center(j);
    for (int i = 0; i < g.n; ++i) {
      const double x = g.center(i);
      const double r = std::hypot(x, y);
      const std::size_t idx = g.index(i, j);
      if (r <= 1.0) {
        g.kind[idx] = CellKind::Free;
      } else if (r <= outer) {
        g.kind[idx] = CellKind::Band;
        double a = std::atan2(y, x);
        if (a < 0.0) a += kTwoPi;
        g.band_angle[idx] = a;
      }
    }
  }
  return g;
}

TraceData sample_trace(const DiskGrid& grid, int depth, double rotation) {
  if (depth < 0 || depth > 12) throw std::invalid_argument("trace depth must lie in [0, 12]");
  TraceData t;
  t.depth = depth;
  t.rotation = rotation;
  t.values.assign(grid.kind.size(), 0);
  for (std::size_t idx = 0; idx < grid.kind.size(); ++idx) {
    if (grid.kind[idx] == CellKind::Band) {
      t.values[idx] = static_cast<std::uint8_t>(trace_value(grid.band_angle[idx] - rotation, depth));
    }
  }

  // The circle is cut into pieces of about h/8; each piece goes to the free
  // cell nearest to its midpoint, split exactly into its parts inside and
  // outside the rotated C_n.
  std::vector<std::pair<double, double>> inside;  // disjoint intervals in [0, 2 pi)
  for (const Arc& a : arcs(depth)) {
    double lo = std::fmod(a.start() + rotation, kTwoPi);
    if (lo < 0.0) lo += kTwoPi;
    const double hi = lo + a.length();
    if (hi <= kTwoPi) {
      inside.emplace_back(lo, hi);
    } else {
      inside.emplace_back(lo, kTwoPi);
      inside.emplace_back(0.0, hi - kTwoPi);
    }
  }
  std::sort(inside.begin(), inside.end());

  const int samples = static_cast<int>(std::ceil(kTwoPi / (grid.h / 8.0)));
  const double dpsi = kTwoPi / samples;
  std::vector<double> on(grid.kind.size(), 0.0), off(grid.kind.size(), 0.0);
  std::size_t first = 0;
  for (int k = 0; k < samples; ++k) {
    const double lo = k * dpsi;
    const double hi = (k + 1) * dpsi;
    const double psi = lo + 0.5 * dpsi;
    const double px = std::cos(psi);
    const double py = std::sin(psi);
    const int ic = static_cast<int>(std::floor((px - grid.origin) / grid.h));
    const int jc = static_cast<int>(std::floor((py - grid.origin) / grid.h));
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = jc - 2; j <= jc + 2; ++j) {
      for (int i = ic - 2; i <= ic + 2; ++i) {
        const std::size_t idx = grid.index(i, j);
        if (grid.kind[idx] != CellKind::Free) continue;
        const double d = std::hypot(grid.center(i) - px, grid.center(j) - py);
        if (d < best_d) {
          best_d = d;
          best = idx;
        }
      }
    }
    if (!std::isfinite(best_d)) throw std::logic_error("no free cell near the unit circle");
    while (first < inside.size() && inside[first].second <= lo) ++first;
    double covered = 0.0;
    for (std::size_t a = first; a < inside.size() && inside[a].first < hi; ++a) {
      covered += std::max(0.0, std::min(hi, inside[a].second) - std::max(lo, inside[a].first));
    }
    on[best] += covered;
    off[best] += dpsi - covered;
  }
  for (std::size_t idx = 0; idx < on.size(); ++idx) {
    if (on[idx] > 0.0 || off[idx] > 0.0) t.boundary.push_back({idx, on[idx], off[idx]});
  }
  return t;
}

namespace {

bool active(CellKind k) { return k != CellKind::Inactive; }

// A forward difference between two cells exists when both are free, or, for
// the lattice coupling, when both are active and one of them is free.
bool coupled(CellKind a, CellKind b, BoundaryCoupling coupling) {
  if (coupling == BoundaryCoupling::ArcLength) return a == CellKind::Free && b == CellKind::Free;
  return active(a) && active(b) && (a == CellKind::Free || b == CellKind::Free);
}

struct Stencil {
  std::vector<std::uint8_t> x_on;
  std::vector<std::uint8_t> y_on;
};

Stencil build_stencil(const DiskGrid& g, BoundaryCoupling coupling) {
  Stencil s;
  s.x_on.assign(g.kind.size(), 0);
  s.y_on.assign(g.kind.size(), 0);
  for (int j = 0; j + 1 < g.n; ++j) {
    for (int i = 0; i + 1 < g.n; ++i) {
      const std::size_t idx = g.index(i, j);
      s.x_on[idx] = coupled(g.kind[idx], g.kind[idx + 1], coupling);
      s.y_on[idx] = coupled(g.kind[idx], g.kind[idx + g.n], coupling);
    }
  }
  return s;
}

double energy_with(const DiskGrid& g, const Stencil& s, const TraceData& trace, BoundaryCoupling coupling,
                   const std::vector<double>& u) {
  double total = 0.0;
  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    const double dx = s.x_on[idx] ? u[idx + 1] - u[idx] : 0.0;
    const double dy = s.y_on[idx] ? u[idx + g.n] - u[idx] : 0.0;
    total += std::sqrt(dx * dx + dy * dy);
  }
  total *= g.h;
  if (coupling == BoundaryCoupling::ArcLength) {
    for (const auto& b : trace.boundary) total += b.on * std::abs(1.0 - u[b.cell]) + b.off * std::abs(u[b.cell]);
  }
  return total;
}

double bilinear(const GridField& f, double x, double y) {
  const double fx = (x - f.x0) / f.h - 0.5;
  const double fy = (y - f.y0) / f.h - 0.5;
  const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, f.nx - 2);
  const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, f.ny - 2);
  const double a = std::clamp(fx - i, 0.0, 1.0);
  const double b = std::clamp(fy - j, 0.0, 1.0);
  return (1 - a) * (1 - b) * f.at(i, j) + a * (1 - b) * f.at(i + 1, j) + (1 - a) * b * f.at(i, j + 1) +
         a * b * f.at(i + 1, j + 1);
}

void validate(const DiskGrid& grid, const TraceData& trace, const SolverConfig& config) {
  if (trace.values.size() != grid.kind.size()) throw std::invalid_argument("trace does not match the grid");
  if (config.max_iterations < 1 || config.check_interval < 1) {
    throw std::invalid_argument("iteration counts must be positive");
  }
  if (!(config.tau > 0.0 && config.sigma > 0.0) || config.tau * config.sigma * 8.0 >= 1.0) {
    throw std::invalid_argument("step sizes must satisfy tau * sigma * 8 < 1");
  }
}

}  // namespace

double discrete_energy(const DiskGrid& grid, const TraceData& trace, const std::vector<double>& u,
                       BoundaryCoupling coupling) {
  if (u.size() != grid.kind.size()) throw std::invalid_argument("field does not match the grid");
  return energy_with(grid, build_stencil(grid, coupling), trace, coupling, u);
}

SolveResult solve_tv(const DiskGrid& grid, const TraceData& trace, const SolverConfig& config) {
  validate(grid, trace, config);
  const std::size_t cells = grid.kind.size();
  const int n = grid.n;
  const Stencil st = build_stencil(grid, config.coupling);
  // On [0, 1] the boundary term is linear in u: w_on + (w_off - w_on) u.
  // The iteration works with the energy divided by h.
  std::vector<double> slope(cells, 0.0);
  if (config.coupling == BoundaryCoupling::ArcLength) {
    for (const auto& b : trace.boundary) slope[b.cell] = (b.off - b.on) / grid.h;
  }
  auto energy = [&](const std::vector<double>& v) { return energy_with(grid, st, trace, config.coupling, v); };

  std::vector<double> u(cells, 0.0);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (grid.kind[idx] == CellKind::Band) u[idx] = trace.values[idx];
  }
  if (config.warm_start && grid.resolution / 2 >= 64) {
    const int coarse_res = grid.resolution / 2;
    const DiskGrid coarse = build_grid(coarse_res, std::max(grid.band_width, 2.0 / coarse_res));
    const SolveResult c = solve_tv(coarse, sample_trace(coarse, trace.depth, trace.rotation), config);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const std::size_t idx = grid.index(i, j);
        if (grid.kind[idx] == CellKind::Free) {
          u[idx] = std::clamp(bilinear(c.field, grid.center(i), grid.center(j)), 0.0, 1.0);
        }
      }
    }
  }

  std::vector<double> ubar = u;
  std::vector<double> px(cells, 0.0), py(cells, 0.0);
  const double tau = config.tau;
  const double sigma = config.sigma;

  SolveResult result;
  double last_energy = energy(u);
  int it = 0;
  while (it < config.max_iterations) {
    // Dual ascent and projection onto the unit ball.
    for (std::size_t idx = 0; idx + n < cells; ++idx) {
      if (!st.x_on[idx] && !st.y_on[idx]) continue;
      double qx = st.x_on[idx] ? px[idx] + sigma * (ubar[idx + 1] - ubar[idx]) : 0.0;
      double qy = st.y_on[idx] ? py[idx] + sigma * (ubar[idx + n] - ubar[idx]) : 0.0;
      const double norm = std::sqrt(qx * qx + qy * qy);
      if (norm > 1.0) {
        qx /= norm;
        qy /= norm;
      }
      px[idx] = qx;
      py[idx] = qy;
    }
    // Primal descent on free cells, then clipping to [0, 1].
    for (std::size_t idx = n; idx + n < cells; ++idx) {
      if (grid.kind[idx] != CellKind::Free) continue;
      const double div = px[idx] - px[idx - 1] + py[idx] - py[idx - n];
      const double old = u[idx];
      const double next = std::clamp(old + tau * (div - slope[idx]), 0.0, 1.0);
      u[idx] = next;
      ubar[idx] = 2.0 * next - old;
    }
    ++it;
    if (it % config.check_interval == 0 || it == config.max_iterations) {
      const double e = energy(u);
      result.residual = std::abs(e - last_energy) / std::max(e, 1e-300);
      last_energy = e;
      if (result.residual < config.stagnation_tolerance) {
        result.converged = true;
        break;
      }
    }
  }

  result.iterations = it;
  result.energy = energy(u);
  result.field = GridField{n, n, grid.h, grid.origin, grid.origin, u};
  double mass = 0.0;
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (grid.kind[idx] == CellKind::Free) mass += u[idx];
  }
  result.l1_mass = mass * grid.h * grid.h;
  return result;
}

double chord_sum_reference(int n) {
  if (n < 0) throw std::invalid_argument("stage must be nonnegative");
  return std::ldexp(std::sin(0.5 * theta(n)), n + 1);
}

double segment_mass_reference(int n) {
  if (n < 0) throw std::invalid_argument("stage must be nonnegative");
  const double t = theta(n);
  // theta - sin(theta) loses all digits for tiny theta; switch to the series.
  const double diff = t < 1e-3 ? t * t * t / 6.0 * (1.0 - t * t / 20.0) : t - std::sin(t);
  return std::ldexp(diff, n - 1);
}

bool ExperimentTable::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExperimentCheck& c) { return c.passed; });
}

ExperimentTable nonattainment_experiment(int n_max, int resolution, const SolverConfig& config,
                                         double band_width) {
  if (n_max < 0 || n_max > 6) throw std::invalid_argument("experiment depth must lie in [0, 6]");
  const DiskGrid grid = build_grid(resolution, band_width > 0.0 ? band_width : default_band_width(resolution));
  const double k_inf = cantor_measure_limit(1e-15);
  ExperimentTable table;
  for (int n = 0; n <= n_max; ++n) {
    const SolveResult r = solve_tv(grid, sample_trace(grid, n), config);
    table.rows.push_back({n, resolution, r.energy, chord_sum_reference(n), cantor_measure(n), k_inf, r.l1_mass,
                          r.iterations, r.converged});
  }

  constexpr double kEnergyMargin = 0.03;
  bool decreasing = true, above = true, mass_down = true, converged = true;
  std::ostringstream energies, masses;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const ExperimentRow& row = table.rows[i];
    energies << (i ? "," : "") << row.energy;
    masses << (i ? "," : "") << row.l1_mass;
    above = above && row.energy > k_inf * (1.0 - kEnergyMargin);
    converged = converged && row.converged;
    if (i > 0) {
      decreasing = decreasing && row.energy < table.rows[i - 1].energy;
      mass_down = mass_down && row.l1_mass < table.rows[i - 1].l1_mass;
    }
  }
  table.checks.push_back({"energy_decreasing", decreasing, energies.str()});
  table.checks.push_back({"energy_above_k_inf", above, energies.str()});
  table.checks.push_back({"mass_decreasing", mass_down, masses.str()});
  table.checks.push_back({"solver_converged", converged, ""});
  return table;
}

}  // namespace lgc
