#pragma once

#include <functional>
#include <string>
#include <vector>

#include "swe/boundary.hpp"
#include "swe/integrator.hpp"

namespace swe {

struct PointValue {
  double h = 0.0;
  double hu = 0.0;
  double hv = 0.0;
};

/// Declarative description of one experiment.
struct CaseSpec {
  std::string name;
  int dim = 1;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  BoundarySpec bc{};
  double eps = 1.0;
  double t_final = 0.0;
  int nx = 100;
  int ny = 1;
  std::vector<int> meshes;  ///< default convergence meshes
  std::vector<double> snapshot_times;
  std::function<double(double, double)> bathy;
  std::function<PointValue(double, double)> init;
  std::string notes;
};

/// 1/sqrt(g), g = 9.812.
double gravity_eps();

CaseSpec case_accuracy_1d();
CaseSpec case_accuracy_eps_1d(double eps = 1.0);
CaseSpec case_perturbation_1d(double eta);
CaseSpec case_dam_break(double t_final = 15.0);
CaseSpec case_lake_at_rest(bool moving);
/// alt = false: sin(eps 40 pi x) short wave; alt = true: eps sin(40 pi x).
CaseSpec case_multiscale_wave(bool alt = false);
CaseSpec case_accuracy_2d(double eps = 1.0);
CaseSpec case_perturbation_2d();
CaseSpec case_traveling_vortex(bool nonflat, double eps = 0.05);

/// Transported flat-bottom vortex surface level at time t.
double vortex_surface(double x, double y, double t, double eps);
double vortex_k(double xi);

/// Stable CLI identifiers.
const std::vector<std::string>& case_names();
/// Throws ConfigError for unknown names. `variant` selects the alternate
/// short-wave reading of the multiscale case ("alt") and is otherwise empty.
CaseSpec find_case(const std::string& name, const std::string& variant = "");

/// Samples bathymetry and initial state on an nx x ny mesh (0 keeps the
/// case default) and assembles the Problem. Throws ConfigError if the
/// initial depth is not positive.
Problem make_problem(const CaseSpec& c, int nx, int ny, const FlowParams& params,
                     const NumericsOptions& numerics, State& initial);

}  // namespace swe
