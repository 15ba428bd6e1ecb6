#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "swe/boundary.hpp"
#include "swe/grid.hpp"
#include "swe/integrator.hpp"
#include "swe/state.hpp"

namespace swe::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline Field sample(const Grid& g, const std::function<double(double, double)>& f) {
  Field out(g);
  for (int j = -g.ghost_y(); j < g.ny + g.ghost_y(); ++j)
    for (int i = -g.ghost; i < g.nx + g.ghost; ++i) out(i, j) = f(g.x(i), g.y(j));
  return out;
}

inline Field random_field(const Grid& g, std::mt19937_64& rng, double lo, double hi,
                          const BoundarySpec& bc = {}) {
  std::uniform_real_distribution<double> d(lo, hi);
  Field out(g);
  for_interior(g, [&](int i, int j) { out(i, j) = d(rng); });
  fill_ghosts(out, bc);
  return out;
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for_interior(a.grid(), [&](int i, int j) { m = std::max(m, std::abs(a(i, j) - b(i, j))); });
  return m;
}

inline double interior_dot(const Field& a, const Field& b) {
  double s = 0.0;
  for_interior(a.grid(), [&](int i, int j) { s += a(i, j) * b(i, j); });
  return s;
}

inline double interior_sum(const Field& a) {
  double s = 0.0;
  for_interior(a.grid(), [&](int i, int j) { s += a(i, j); });
  return s;
}

/// Periodic problem with the given bathymetry field (ghosts filled here).
inline Problem periodic_problem(const Grid& g, Field b, double eps, double cfl = 0.2) {
  Problem p;
  p.grid = g;
  fill_ghosts(b, BoundarySpec{});
  p.bathy = Bathymetry(std::move(b));
  p.bc = Boundary(BoundarySpec{});
  p.params.eps = eps;
  p.params.cfl = cfl;
  return p;
}

}  // namespace swe::testing
