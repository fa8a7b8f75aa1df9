#pragma once

// Discrete least-gradient problem on the unit disk.
//
// The disk is covered by a square grid of spacing h = 2 / resolution. Cells
// whose centers lie in the closed unit disk are free unknowns; cells in the
// ring 1 < r <= 1 + band_width carry the prescribed trace, read off at their
// polar angle, and are never updated.
//
// The energy is h * sum |D u| over isotropic forward differences between free
// cells (Neumann at the mask edge) plus a boundary term that couples the free
// cells to the trace. Two couplings are available:
//  - ArcLength: sum over boundary cells of w_on |1 - u| + w_off |u|, where the
//    weights are the lengths of the unit-circle pieces nearest to the cell
//    on which the trace is 1 or 0. This is the relaxed form
//    int |Du| + int_S |u - f| of the trace constraint.
//  - Lattice: plain forward differences between free and band cells. The
//    staircase of the band makes this over-measure boundary-hugging level
//    sets by 10-20% at the tilts of the Cantor arcs.

#include <cstdint>
#include <string>
#include <vector>

namespace lgc {

enum class CellKind : std::uint8_t { Inactive = 0, Free = 1, Band = 2 };

/// Row-major samples on a regular grid; row j, column i sits at
/// (x0 + (i + 1/2) h, y0 + (j + 1/2) h).
struct GridField {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<double> values;

  double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

struct DiskGrid {
  int resolution = 0;
  double h = 0.0;
  double band_width = 0.0;
  int n = 0;  // cells per side
  double origin = 0.0;  // x0 = y0
  std::vector<CellKind> kind;
  /// Polar angle in [0, 2 pi) of every band cell, NaN elsewhere.
  std::vector<double> band_angle;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * n + i; }
  double center(int i) const { return origin + (i + 0.5) * h; }
  std::size_t count(CellKind k) const;
  /// Number of free cells times h^2.
  double mask_area() const;
};

/// Default band width max(2h, 0.01).
double default_band_width(int resolution);

/// resolution >= 64 cells across the diameter, band_width >= 2 / resolution.
DiskGrid build_grid(int resolution, double band_width);
inline DiskGrid build_grid(int resolution) { return build_grid(resolution, default_band_width(resolution)); }

/// Arc length of the unit circle owned by one free cell, split by trace value.
struct BoundaryWeight {
  std::size_t cell = 0;
  double on = 0.0;
  double off = 0.0;
};

struct TraceData {
  int depth = 0;
  double rotation = 0.0;
  /// 0/1 per grid cell; meaningful on band cells only.
  std::vector<std::uint8_t> values;
  /// One entry per free cell that is nearest to some point of the circle;
  /// the `on` weights sum to the measure of C_n.
  std::vector<BoundaryWeight> boundary;
};

/// chi_{C_n} at every band cell's polar angle minus `rotation`, plus the
/// boundary weights from 8 circle samples per cell width, n <= 12.
TraceData sample_trace(const DiskGrid& grid, int depth, double rotation = 0.0);

enum class BoundaryCoupling { ArcLength, Lattice };

struct SolverConfig {
  BoundaryCoupling coupling = BoundaryCoupling::ArcLength;
  int max_iterations = 20000;
  /// Primal and dual steps; tau * sigma * 8 < 1 is required.
  double tau = 0.35;
  double sigma = 0.35;
  /// Stop when the relative energy change over one check window falls below this.
  double stagnation_tolerance = 1e-7;
  int check_interval = 100;
  /// Solve on successively halved grids first (down to resolution 64) and
  /// start from the interpolated coarse solution.
  bool warm_start = true;
};

struct SolveResult {
  GridField field;
  double energy = 0.0;
  double l1_mass = 0.0;
  int iterations = 0;
  /// Relative energy change over the last check window.
  double residual = 0.0;
  bool converged = false;
};

/// Discrete energy of `u` (one value per grid cell) under a coupling.
double discrete_energy(const DiskGrid& grid, const TraceData& trace, const std::vector<double>& u,
                       BoundaryCoupling coupling = BoundaryCoupling::ArcLength);

SolveResult solve_tv(const DiskGrid& grid, const TraceData& trace, const SolverConfig& config = {});

/// 2^(n+1) sin(theta_n / 2), the total chord length of the arcs of C_n.
double chord_sum_reference(int n);
/// 2^n (theta_n - sin theta_n) / 2, the area of the circular segments of C_n.
double segment_mass_reference(int n);

struct ExperimentRow {
  int n = 0;
  int resolution = 0;
  double energy = 0.0;
  double chord_sum_reference = 0.0;
  double K_n = 0.0;
  double K_inf = 0.0;
  double l1_mass = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct ExperimentCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentCheck> checks;

  bool passed() const;
};

/// Solves n = 0..n_max (n_max <= 6) and checks that energies decrease, stay
/// above K_inf minus a 3% discretization margin, and that the minimizer mass
/// decreases.
/// band_width <= 0 selects default_band_width(resolution).
ExperimentTable nonattainment_experiment(int n_max, int resolution, const SolverConfig& config = {},
                                         double band_width = 0.0);

}  // namespace lgc
