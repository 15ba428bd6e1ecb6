#pragma once

#include <functional>
#include <string>
#include <vector>

#include "swe/boundary.hpp"
#include "swe/central.hpp"
#include "swe/elliptic.hpp"
#include "swe/flux.hpp"
#include "swe/tableau.hpp"

namespace swe {

enum class Scheme { imex3, first_order, explicit_ref };

std::string to_string(Scheme s);
/// Accepts "imex3", "first-order", "explicit-ref". Throws ConfigError.
Scheme parse_scheme(const std::string& name);

/// Everything fixed during a run: mesh, bottom, boundary data, parameters.
struct Problem {
  Grid grid;
  Bathymetry bathy;
  Boundary bc;
  FlowParams params;
  NumericsOptions numerics;
};

/// Accumulated linear solver counters.
struct SolverStats {
  long long solves = 0;
  long long iterations = 0;
  long long fallbacks = 0;
  double max_residual = 0.0;
};

/// Time stepper holding every buffer a step needs, so repeated steps do
/// not allocate.
class Integrator {
 public:
  explicit Integrator(const Problem& p);

  const Problem& problem() const { return problem_; }

  /// One step of the partitioned IMEX scheme. s must have interior values;
  /// ghosts are refilled on return.
  void step_imex(State& s, double dt, const ButcherPair& tableau);
  void step_first_order(State& s, double dt);
  /// SSP-RK3 with uncapped viscosity and the balanced source split.
  void step_explicit_reference(State& s, double dt);
  void step(State& s, double dt, Scheme scheme);

  /// CFL step for the scheme: capped acoustic speed for the IMEX schemes,
  /// 1/eps for the explicit one.
  double stable_dt(const State& s, Scheme scheme) const;

  /// Surface perturbation of the last implicit stage.
  const Field& last_h2() const { return h2_; }
  const SolverStats& solver_stats() const { return stats_; }

 private:
  struct Stage {
    Field dm;
    VectorField mom;
  };

  void explicit_rhs(const State& u, State& out);
  void check_state(const State& s, const char* where) const;

  Problem problem_;
  ButcherPair first_order_;
  FluxOptions si_flux_;
  FluxOptions ex_flux_;
  FluxWorkspace flux_ws_;
  RhsWorkspace rhs_ws_;
  HelmholtzSolver solver_;
  std::vector<Stage> stages_;
  State ue_, us_, pred_, tmp_;
  State k_, u1_;
  Field h2_, rhs_, H_;
  SolverStats stats_;
};

/// Free-function forms; each builds a temporary Integrator.
State step_first_order(const State& s, const Problem& p, double dt);
State step_imex(const State& s, const Problem& p, double dt, const ButcherPair& tableau);
State step_explicit_reference(const State& s, const Problem& p, double dt);

struct RunStats {
  long long steps = 0;
  double t = 0.0;
  double wall_seconds = 0.0;
  double min_h = 0.0;
  double max_h = 0.0;
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double mass_drift = 0.0;  ///< |mass_final - mass_initial| / |mass_initial|
  SolverStats solver;
};

struct AdvanceOptions {
  Scheme scheme = Scheme::imex3;
  /// Positive: constant step (the last one clipped) instead of the CFL rule.
  double fixed_dt = 0.0;
  /// Times at which `on_snapshot` fires; steps are clipped to hit them.
  std::vector<double> snapshot_times;
  std::function<void(double, const State&)> on_snapshot;
  long long max_steps = 100000000;
};

/// Steps s from t = 0 to t_final. t_final = 0 leaves s untouched.
RunStats advance_to(State& s, double t_final, Integrator& integ, const AdvanceOptions& opt);

}  // namespace swe
