#include "swe/grid.hpp"

#include <algorithm>
#include <stdexcept>

#include "swe/state.hpp"

namespace swe {

Grid Grid::line(int nx, double x0, double x1, int ghost) {
  if (nx < 1) throw ConfigError("nx must be at least 1");
  if (ghost < kGhost) throw ConfigError("ghost width must be at least 3");
  if (!(x1 > x0)) throw ConfigError("empty x interval");
  Grid g;
  g.dim = 1;
  g.nx = nx;
  g.ny = 1;
  g.x0 = x0;
  g.x1 = x1;
  g.y0 = 0.0;
  g.y1 = 1.0;
  g.dx = (x1 - x0) / nx;
  g.dy = 1.0;
  g.ghost = ghost;
  return g;
}

Grid Grid::plane(int nx, int ny, double x0, double x1, double y0, double y1, int ghost) {
  Grid g = line(nx, x0, x1, ghost);
  if (ny < 1) throw ConfigError("ny must be at least 1");
  if (!(y1 > y0)) throw ConfigError("empty y interval");
  g.dim = 2;
  g.ny = ny;
  g.y0 = y0;
  g.y1 = y1;
  g.dy = (y1 - y0) / ny;
  return g;
}

double Grid::min_spacing() const { return dim == 2 ? std::min(dx, dy) : dx; }

Field::Field(const Grid& grid, double value) : grid_(grid), values_(grid.storage_size(), value) {}

void Field::fill(double value) { std::fill(values_.begin(), values_.end(), value); }

std::vector<double> Field::interior() const {
  std::vector<double> out;
  out.reserve(grid_.interior_size());
  for_interior(grid_, [&](int i, int j) { out.push_back((*this)(i, j)); });
  return out;
}

void Field::set_interior(std::span<const double> v) {
  if (v.size() != grid_.interior_size()) throw std::invalid_argument("interior size mismatch");
  std::size_t k = 0;
  for_interior(grid_, [&](int i, int j) { (*this)(i, j) = v[k++]; });
}

}  // namespace swe
