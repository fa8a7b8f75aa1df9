// lgc: construct barriers, render them, run verification suites and the
// least-gradient experiment from the command line.

#include "lgc/cantor.hpp"
#include "lgc/io.hpp"
#include "lgc/solver.hpp"
#include "lgc/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

struct RunConfig {
  int depth = 2;
  int resolution = 256;
  double band_width = 0.0;  // 0 selects the grid default
  int iters = 20000;
  std::string out;
  std::string suite = "all";
  bool labels = false;
  std::uint64_t seed = lgc::SuiteOptions{}.seed;
  std::string coupling = "arc";
  double rotation = 0.0;
};

lgc::SolverConfig solver_config(const RunConfig& rc) {
  lgc::SolverConfig c;
  c.max_iterations = rc.iters;
  c.coupling = rc.coupling == "lattice" ? lgc::BoundaryCoupling::Lattice : lgc::BoundaryCoupling::ArcLength;
  return c;
}

double band_width(const RunConfig& rc) {
  return rc.band_width > 0.0 ? rc.band_width : lgc::default_band_width(rc.resolution);
}

// Resolved settings, recorded in CSV headers so a table names its own inputs.
std::string provenance(const char* command, const RunConfig& rc) {
  std::ostringstream os;
  os.precision(17);
  os << "lgc " << command << " --depth " << rc.depth << " --resolution " << rc.resolution << " --band-width "
     << band_width(rc) << " --iters " << rc.iters << " --coupling " << rc.coupling;
  if (rc.rotation != 0.0) os << " --rotation " << rc.rotation;
  return os.str();
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.out.empty() || rc.out == "-") {
    std::cout << text;
  } else {
    lgc::write_text(rc.out, text);
  }
}

int cmd_construct(const RunConfig& rc) {
  emit(rc, lgc::dump_json(lgc::geometry_to_json(lgc::build_geometry(rc.depth))));
  return kOk;
}

int cmd_render(const RunConfig& rc) {
  lgc::SvgStyle style;
  style.labels = rc.labels;
  emit(rc, lgc::render_svg(rc.depth, style));
  return kOk;
}

int cmd_verify(const RunConfig& rc) {
  lgc::SuiteOptions opt;
  opt.geometry_depth = rc.depth;
  opt.seed = rc.seed;
  const auto entries = lgc::run_suite(rc.suite, opt);
  const lgc::Json report = lgc::verify_report(rc.suite, entries);
  emit(rc, lgc::dump_json(report));
  bool ok = true;
  for (const auto& e : entries) {
    if (e.check.passed()) continue;
    ok = false;
    std::fprintf(stderr, "FAIL %s/%s [%s] lhs=%.17g rhs=%.17g margin=%.3g%s\n", e.suite.c_str(),
                 e.check.name.c_str(), e.check.inputs.c_str(), e.check.lhs, e.check.rhs, e.check.margin,
                 e.check.converged ? "" : " (quadrature not converged)");
  }
  std::fprintf(stderr, "%s: %zu checks, %s\n", rc.suite.c_str(), entries.size(), ok ? "all passed" : "FAILURES");
  return ok ? kOk : kVerifyFailed;
}

int cmd_solve(const RunConfig& rc) {
  const lgc::DiskGrid grid = lgc::build_grid(rc.resolution, band_width(rc));
  const lgc::TraceData trace = lgc::sample_trace(grid, rc.depth, rc.rotation);
  const lgc::SolveResult r = lgc::solve_tv(grid, trace, solver_config(rc));

  lgc::ExperimentRow row;
  row.n = rc.depth;
  row.resolution = rc.resolution;
  row.energy = r.energy;
  row.chord_sum_reference = lgc::chord_sum_reference(rc.depth);
  row.K_n = lgc::cantor_measure(rc.depth);
  row.K_inf = lgc::cantor_measure_limit(1e-15);
  row.l1_mass = r.l1_mass;
  row.iterations = r.iterations;
  row.converged = r.converged;
  const std::string prov = provenance("solve", rc);
  const std::string csv = lgc::experiment_csv({row}, prov);

  if (rc.out.empty() || rc.out == "-") {
    std::cout << csv;
  } else {
    lgc::write_text(rc.out, csv);
    std::filesystem::path stem(rc.out);
    stem.replace_extension();
    lgc::Json meta;
    meta["provenance"] = prov;
    meta["energy"] = r.energy;
    meta["converged"] = r.converged;
    lgc::write_field(stem.string() + "_field", r.field, meta);
  }
  if (!r.converged) std::fprintf(stderr, "warning: solver stopped at the iteration budget (%d)\n", r.iterations);
  return kOk;
}

int cmd_experiment(const RunConfig& rc) {
  const lgc::ExperimentTable t =
      lgc::nonattainment_experiment(rc.depth, rc.resolution, solver_config(rc), band_width(rc));
  emit(rc, lgc::experiment_csv(t.rows, provenance("experiment", rc)));
  for (const auto& c : t.checks)
    std::fprintf(stderr, "%s %s: %s\n", c.passed ? "ok  " : "FAIL", c.name.c_str(), c.detail.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fat Cantor barriers and least-gradient non-attainment experiments"};
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags win");
  app.require_subcommand(1);
  RunConfig rc;

  auto add_out = [&](CLI::App* sub, const char* what) {
    sub->add_option("--out,-o", rc.out, std::string("Output file for the ") + what + " (stdout if omitted)");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--resolution", rc.resolution, "Grid cells across the diameter")
        ->check(CLI::Range(64, 8192))
        ->capture_default_str();
    sub->add_option("--band-width", rc.band_width, "Width of the boundary band (0: max(4/resolution, 0.01))")
        ->check(CLI::Range(0.0, 0.5));
    sub->add_option("--iters", rc.iters, "Iteration budget")->check(CLI::Range(1, 100000000))->capture_default_str();
    sub->add_option("--coupling", rc.coupling, "Boundary coupling: arc or lattice")
        ->check(CLI::IsMember({"arc", "lattice"}))
        ->capture_default_str();
  };

  auto* construct = app.add_subcommand("construct", "Write arcs of C_n and components of B_n as JSON");
  construct->add_option("--depth,-n", rc.depth, "Stage n")->check(CLI::Range(1, 12))->required();
  add_out(construct, "geometry JSON");

  auto* render = app.add_subcommand("render", "Draw C_n and B_n as SVG");
  render->add_option("--depth,-n", rc.depth, "Stage n")->check(CLI::Range(1, 8))->required();
  render->add_flag("--labels", rc.labels, "Label the W, T_k and Bot pieces");
  add_out(render, "SVG");

  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
  verify->add_option("--suite", rc.suite, "Suite to run")
      ->check(CLI::IsMember({"cantor", "geometry", "lemma31", "lemma32", "lemma33", "chain", "all"}))
      ->capture_default_str();
  verify->add_option("--depth,-n", rc.depth, "Deepest barrier for the geometry suite")
      ->check(CLI::Range(1, 12))
      ->default_val(6);
  verify->add_option("--seed", rc.seed, "Seed for the randomized suites")->capture_default_str();
  add_out(verify, "report");

  auto* solve = app.add_subcommand("solve", "Minimize total variation for the trace 1_{C_n}");
  solve->add_option("--depth,-n", rc.depth, "Stage n")->check(CLI::Range(0, 12))->required();
  solve->add_option("--rotation", rc.rotation, "Rotate the trace by this angle (radians)");
  add_solver(solve);
  add_out(solve, "CSV row (the field goes to <stem>_field.bin/.json)");

  auto* experiment = app.add_subcommand("experiment", "Solve for n = 0..n_max and tabulate energies");
  experiment->add_option("--depth,-n", rc.depth, "Largest stage n_max")->check(CLI::Range(0, 6))->required();
  add_solver(experiment);
  add_out(experiment, "CSV table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) return cmd_construct(rc);
    if (*render) return cmd_render(rc);
    if (*verify) return cmd_verify(rc);
    if (*solve) return cmd_solve(rc);
    if (*experiment) return cmd_experiment(rc);
  } catch (const lgc::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  }
  return kUsage;
}
