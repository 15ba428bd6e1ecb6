#include "swe/reductions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace swe {

Field surface_level(const State& s, const Bathymetry& b) {
  Field out(s.grid());
  const double* h = s.h.data();
  const double* bb = b.field().data();
  double* o = out.data();
  const std::size_t n = s.grid().storage_size();
  for (std::size_t k = 0; k < n; ++k) o[k] = h[k] + bb[k];
  return out;
}

double spatial_mean(const Field& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for_interior(g, [&](int i, int j) { sum += f(i, j); });
  return sum / static_cast<double>(g.interior_size());
}

double max_abs_interior(const Field& f) {
  double m = 0.0;
  for_interior(f.grid(), [&](int i, int j) { m = std::max(m, std::abs(f(i, j))); });
  return m;
}

double min_interior(const Field& f) {
  double m = std::numeric_limits<double>::infinity();
  for_interior(f.grid(), [&](int i, int j) { m = std::min(m, f(i, j)); });
  return m;
}

double max_interior(const Field& f) {
  double m = -std::numeric_limits<double>::infinity();
  for_interior(f.grid(), [&](int i, int j) { m = std::max(m, f(i, j)); });
  return m;
}

WaveSpeeds max_wave_speed(const State& s, double speed_factor) {
  const Grid& g = s.grid();
  WaveSpeeds w;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double h = s.h(i, j);
      if (!(h > 0.0)) {
        std::ostringstream msg;
        msg << "nonpositive depth h=" << h << " at (" << i << "," << j << ")";
        throw SolverError(msg.str());
      }
      const double c = speed_factor * std::sqrt(h);
      const double u = s.hu(i, j) / h;
      const double v = g.dim == 2 ? s.hv(i, j) / h : 0.0;
      w.lambda = std::max(w.lambda, std::hypot(u, v) + c);
      w.alpha_x = std::max(w.alpha_x, std::abs(u) + c);
      if (g.dim == 2) w.alpha_y = std::max(w.alpha_y, std::abs(v) + c);
    }
  }
  return w;
}

double compute_dt(const State& s, const FlowParams& p, double speed_factor) {
  const double lambda = max_wave_speed(s, speed_factor).lambda;
  const double d = s.grid().min_spacing();
  if (lambda < 1e-12) return p.cfl * d;
  const double len = p.accuracy_mode ? std::pow(d, 5.0 / 3.0) : d;
  return p.cfl * len / lambda;
}

double compute_dt(const State& s, const FlowParams& p) {
  return compute_dt(s, p, p.capped_speed_factor());
}

double total_mass(const State& s) {
  const Grid& g = s.grid();
  double sum = 0.0;
  for_interior(g, [&](int i, int j) { sum += s.h(i, j); });
  return sum * g.cell_volume();
}

}  // namespace swe
