#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace swe {

/// Ghost-layer width shared by every field: WENO5 interface fluxes reach
/// three points past the last interior point.
inline constexpr int kGhost = 3;

enum class Axis { x = 0, y = 1 };

/// Uniform cell-centered mesh in one or two dimensions.
///
/// Point i sits at x0 + (i + 1/2) dx. Index ranges include the ghost layer:
/// i in [-ghost, nx + ghost), and j in [-ghost, ny + ghost) in 2D. In 1D the
/// y extent is a single row without ghosts.
struct Grid {
  int dim = 1;
  int nx = 1;
  int ny = 1;
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;
  double dx = 1.0;
  double dy = 1.0;
  int ghost = kGhost;

  static Grid line(int nx, double x0, double x1, int ghost = kGhost);
  static Grid plane(int nx, int ny, double x0, double x1, double y0, double y1,
                    int ghost = kGhost);

  int ghost_x() const { return ghost; }
  int ghost_y() const { return dim == 2 ? ghost : 0; }
  int pitch() const { return nx + 2 * ghost; }
  int rows() const { return ny + 2 * ghost_y(); }
  std::size_t storage_size() const {
    return static_cast<std::size_t>(pitch()) * static_cast<std::size_t>(rows());
  }
  std::size_t interior_size() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }

  std::ptrdiff_t index(int i, int j = 0) const {
    return static_cast<std::ptrdiff_t>(j + ghost_y()) * pitch() + (i + ghost);
  }
  std::ptrdiff_t stride(Axis a) const { return a == Axis::x ? 1 : pitch(); }
  int extent(Axis a) const { return a == Axis::x ? nx : ny; }
  double spacing(Axis a) const { return a == Axis::x ? dx : dy; }

  double x(int i) const { return x0 + (i + 0.5) * dx; }
  double y(int j) const { return y0 + (j + 0.5) * dy; }
  double cell_volume() const { return dim == 2 ? dx * dy : dx; }
  double min_spacing() const;

  bool operator==(const Grid&) const = default;
};

/// Point values on a Grid, stored row-major with the ghost layer included.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, double value = 0.0);

  const Grid& grid() const { return grid_; }

  double& operator()(int i, int j = 0) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j = 0) const { return values_[grid_.index(i, j)]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  void fill(double value);
  bool empty() const { return values_.empty(); }

  /// Interior values copied out row by row (y outer, x inner).
  std::vector<double> interior() const;
  void set_interior(std::span<const double> v);

 private:
  Grid grid_{};
  std::vector<double> values_;
};

/// Calls f(i, j) for every interior point, rows outer.
template <class F>
void for_interior(const Grid& g, F&& f) {
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f(i, j);
}

}  // namespace swe
