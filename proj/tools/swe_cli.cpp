#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "swe/harness.hpp"

namespace {

struct Flags {
  std::string config;
  std::string case_name;
  std::string variant;
  std::string scheme;
  int nx = 0;
  int ny = 0;
  double eps = 0.0;
  double cfl = 0.0;
  double tfinal = 0.0;
  bool accuracy_mode = false;
  std::string out;
  std::vector<double> snap_times;
  double fixed_dt = 0.0;
  std::string stencil;
  std::string alpha;
  std::string preconditioner;
  std::string mass_weights;
};

void add_run_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "key=value config file")->check(CLI::ExistingFile);
  app->add_option("--case", f.case_name, "case identifier");
  app->add_option("--variant", f.variant, "case variant (multiscale: alt)");
  app->add_option("--scheme", f.scheme, "imex3 | first-order | explicit-ref");
  app->add_option("--nx", f.nx, "cells in x");
  app->add_option("--ny", f.ny, "cells in y (2D cases)");
  app->add_option("--eps", f.eps, "Froude number");
  app->add_option("--cfl", f.cfl, "CFL number");
  app->add_option("--tfinal", f.tfinal, "final time");
  app->add_flag("--accuracy-mode", f.accuracy_mode, "dt proportional to dx^(5/3)");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--snap-times", f.snap_times, "snapshot times")->delimiter(',');
  app->add_option("--fixed-dt", f.fixed_dt, "constant time step");
  app->add_option("--stencil", f.stencil, "fourth | second");
  app->add_option("--alpha", f.alpha, "local | global");
  app->add_option("--preconditioner", f.preconditioner, "spectral | jacobi");
  app->add_option("--mass-weights", f.mass_weights, "auto | nonlinear | linear");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

swe::RunConfig build_config(CLI::App* app, const Flags& f) {
  swe::RunConfig cfg;
  if (!f.config.empty()) swe::apply_config_file(cfg, f.config);
  std::string text;
  const auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--case")) text += "case=" + f.case_name + "\n";
  if (given("--variant")) text += "variant=" + f.variant + "\n";
  if (given("--scheme")) text += "scheme=" + f.scheme + "\n";
  if (given("--nx")) text += "nx=" + std::to_string(f.nx) + "\n";
  if (given("--ny")) text += "ny=" + std::to_string(f.ny) + "\n";
  if (given("--eps")) text += "eps=" + num(f.eps) + "\n";
  if (given("--cfl")) text += "cfl=" + num(f.cfl) + "\n";
  if (given("--tfinal")) text += "tfinal=" + num(f.tfinal) + "\n";
  if (given("--accuracy-mode")) text += "accuracy-mode=1\n";
  if (given("--out")) text += "out=" + f.out + "\n";
  if (given("--fixed-dt")) text += "fixed-dt=" + num(f.fixed_dt) + "\n";
  if (given("--stencil")) text += "stencil=" + f.stencil + "\n";
  if (given("--alpha")) text += "alpha=" + f.alpha + "\n";
  if (given("--preconditioner")) text += "preconditioner=" + f.preconditioner + "\n";
  if (given("--mass-weights")) text += "mass-weights=" + f.mass_weights + "\n";
  swe::apply_config_text(cfg, text);
  if (given("--snap-times")) cfg.snapshot_times = f.snap_times;
  return cfg;
}

void write_out(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream os(std::filesystem::path(dir) / name, std::ios::binary);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-implicit well-balanced shallow water solver"};
  app.require_subcommand(1);

  Flags run_f, conv_f, cmp_f;
  CLI::App* run = app.add_subcommand("run", "run one case");
  add_run_flags(run, run_f);

  CLI::App* conv = app.add_subcommand("converge", "self-convergence study");
  add_run_flags(conv, conv_f);
  std::vector<int> meshes;
  std::string field = "hu";
  conv->add_option("--meshes", meshes, "doubling mesh list")->delimiter(',');
  conv->add_option("--field", field, "h | hu | hv | H");

  CLI::App* cmp = app.add_subcommand("compare", "step counts, imex3 vs explicit-ref");
  add_run_flags(cmp, cmp_f);
  std::vector<double> eps_list = {1.0, 0.05, 0.01};
  cmp->add_option("--eps-list", eps_list, "Froude numbers")->delimiter(',');

  CLI::App* suite = app.add_subcommand("suite", "quick property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      const swe::RunConfig cfg = build_config(run, run_f);
      const swe::RunResult r = swe::run(cfg);
      std::cout << swe::summary_json(cfg, r);
      return 0;
    }
    if (*conv) {
      swe::RunConfig cfg = build_config(conv, conv_f);
      if (meshes.empty()) meshes = swe::find_case(cfg.case_name, cfg.variant).meshes;
      const swe::ConvergenceReport rep = swe::converge(cfg, meshes, field);
      std::printf("%8s %14s %8s\n", "N", "L1 error", "order");
      for (const auto& row : rep.rows) {
        std::printf("%8d ", row.n);
        if (row.error) std::printf("%14.3e ", *row.error);
        else std::printf("%14s ", "--");
        if (row.order) std::printf("%8.2f\n", *row.order);
        else std::printf("%8s\n", row.error ? "n/a" : "--");
      }
      write_out(cfg.out_dir, "convergence.json", rep.to_json());
      return 0;
    }
    if (*cmp) {
      swe::RunConfig cfg = build_config(cmp, cmp_f);
      if (cmp->count("--case") == 0 && cmp_f.config.empty()) {
        cfg.case_name = "vortex";
      }
      const auto rows = swe::compare_steps(cfg, eps_list);
      std::printf("%10s %12s %14s %10s %10s %12s\n", "eps", "steps imex", "steps explicit",
                  "ratio", "wall imex", "wall explicit");
      for (const auto& r : rows)
        std::printf("%10.4g %12lld %14lld %10.2f %10.2f %12.2f\n", r.eps, r.steps_imex,
                    r.steps_explicit, r.ratio, r.wall_imex, r.wall_explicit);
      return 0;
    }
    if (*suite) return swe::run_suite(std::cout) == 0 ? 0 : 3;
  } catch (const swe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const swe::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
