#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swe/cases.hpp"
#include "swe/integrator.hpp"

namespace swe {

struct RunConfig {
  std::string case_name = "lake-rest";
  std::string variant;
  Scheme scheme = Scheme::imex3;
  int nx = 0;  ///< 0 keeps the case default
  int ny = 0;
  std::optional<double> eps;
  double cfl = 0.2;
  std::optional<double> t_final;
  bool accuracy_mode = false;
  double fixed_dt = 0.0;
  std::string out_dir;  ///< empty: no files
  std::vector<double> snapshot_times;
  NumericsOptions numerics;

  /// Throws ConfigError on inconsistent settings.
  void validate(const CaseSpec& c) const;
};

/// Applies "key=value" lines (keys as the CLI long flags without dashes;
/// '#' starts a comment). Throws ConfigError on unknown keys or bad values.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

struct RunResult {
  CaseSpec spec;
  Problem problem;
  State initial;
  State final_state;
  RunStats stats;
};

/// Runs a case to its final time without touching the filesystem.
RunResult run_case(const RunConfig& cfg);

/// run_case plus output files in cfg.out_dir: one snapshot per requested
/// time, final.csv, summary.json and timing.json.
RunResult run(const RunConfig& cfg);

/// "x[,y],h,hu[,hv],b,H" rows with 17 significant digits.
void write_snapshot(std::ostream& os, const State& s, const Bathymetry& b);
std::string snapshot_text(const State& s, const Bathymetry& b);

/// Deterministic run summary (no wall time).
std::string summary_json(const RunConfig& cfg, const RunResult& r);

/// Fine-to-coarse restriction by 6-point midpoint interpolation, tensor
/// product in 2D. `fine` must have filled ghosts and twice the coarse
/// resolution on the same domain.
Field restrict_to_coarse(const Field& fine, const Grid& coarse);

/// mean |R(fine) - coarse| over coarse interior points.
double self_error(const Field& fine, const Field& coarse);

struct ConvergenceRow {
  int n = 0;
  std::optional<double> error;  ///< against the previous (half) mesh
  std::optional<double> order;
  long long steps = 0;
  double wall_seconds = 0.0;
};

struct ConvergenceReport {
  std::string case_name;
  std::string field;
  double eps = 0.0;
  std::vector<ConvergenceRow> rows;

  std::optional<double> finest_order() const;
  std::string to_json() const;
};

/// Runs every mesh (must strictly double) and reports self-convergence of
/// `field` in {h, hu, hv, H}. In 2D the mesh is n x n scaled by the case's
/// aspect ratio.
ConvergenceReport converge(const RunConfig& base, const std::vector<int>& meshes,
                           const std::string& field = "hu");

struct CompareRow {
  double eps = 0.0;
  long long steps_imex = 0;
  long long steps_explicit = 0;
  double ratio = 0.0;
  double wall_imex = 0.0;
  double wall_explicit = 0.0;
};

std::vector<CompareRow> compare_steps(const RunConfig& base, const std::vector<double>& eps_list);

/// Quick property checks; one line per check, returns the failure count.
int run_suite(std::ostream& os);

}  // namespace swe
