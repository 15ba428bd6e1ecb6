#pragma once

#include "swe/state.hpp"

namespace swe {

/// H = h + b, pointwise over the full padded array.
Field surface_level(const State& s, const Bathymetry& b);

/// Arithmetic mean over interior points, summed in row-major order.
double spatial_mean(const Field& f);

double max_abs_interior(const Field& f);
double min_interior(const Field& f);
double max_interior(const Field& f);

struct WaveSpeeds {
  double lambda = 0.0;   ///< max(|u| + c sqrt(h)), |u| the velocity magnitude
  double alpha_x = 0.0;  ///< max(|u| + c sqrt(h))
  double alpha_y = 0.0;  ///< max(|v| + c sqrt(h)), zero in 1D
};

/// Interior maximum of the characteristic speeds with acoustic factor
/// `speed_factor` (min(1, 1/eps) for the semi-implicit scheme, 1/eps for
/// the explicit one). Throws SolverError on h <= 0.
WaveSpeeds max_wave_speed(const State& s, double speed_factor);

/// CFL step: cfl * min(dx, dy) / lambda, or cfl * min(dx, dy)^{5/3} / lambda
/// in accuracy mode. When lambda < 1e-12 the quiescent fallback
/// cfl * min(dx, dy) is returned.
double compute_dt(const State& s, const FlowParams& p, double speed_factor);
double compute_dt(const State& s, const FlowParams& p);

/// sum of h * dx * dy over interior points.
double total_mass(const State& s);

}  // namespace swe
