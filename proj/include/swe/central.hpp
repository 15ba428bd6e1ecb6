#pragma once

#include <array>

#include "swe/state.hpp"

namespace swe {

/// Coefficients of the compact variable-coefficient second derivative:
/// (a q_x)_x at i is (1/dx^2) sum_r sum_c a_{i+r} M[r][c] q_{i+c}.
/// Rows are a-offsets, columns q-offsets, both centered.
struct CompactStencil {
  static constexpr std::array<std::array<double, 5>, 5> fourth{{
      {-25.0 / 144.0, 1.0 / 3.0, -1.0 / 4.0, 1.0 / 9.0, -1.0 / 48.0},
      {1.0 / 6.0, 5.0 / 9.0, -1.0, 1.0 / 3.0, -1.0 / 18.0},
      {0.0, 0.0, 0.0, 0.0, 0.0},
      {-1.0 / 18.0, 1.0 / 3.0, -1.0, 5.0 / 9.0, 1.0 / 6.0},
      {-1.0 / 48.0, 1.0 / 9.0, -1.0 / 4.0, 1.0 / 3.0, -25.0 / 144.0},
  }};
  static constexpr std::array<std::array<double, 3>, 3> second{{
      {0.5, -0.5, 0.0},
      {0.5, -1.0, 0.5},
      {0.0, -0.5, 0.5},
  }};
};

/// q_xx (or q_yy) at interior points. Fourth order uses
/// (-1, 16, -30, 16, -1) / (12 d^2), second order (1, -2, 1) / d^2.
void second_deriv(const Field& q, Axis axis, StencilOrder order, Field& out);
Field second_deriv_c4(const Field& q, Axis axis);

/// q_x (or q_y). Fourth order uses (1, -8, 8, -1) / (12 d).
/// `extra` widens the evaluated region along the other axis by that many
/// ghost points (used by the mixed derivative).
void first_deriv(const Field& q, Axis axis, StencilOrder order, Field& out, int extra = 0);
Field first_deriv_c4(const Field& q, Axis axis);

struct CentralWorkspace {
  CentralWorkspace() = default;
  explicit CentralWorkspace(const Grid& g) : a(g), b(g), c(g) {}
  Field a;
  Field b;
  Field c;
};

/// (hu^2/h)_xx + 2 (hu hv/h)_xy + (hv^2/h)_yy, the mixed term as the x
/// derivative of the y derivative. Only the first term in 1D.
/// Requires filled ghosts, corners included.
void div_tensor_c(const State& s, StencilOrder order, CentralWorkspace& ws, Field& out);
Field div_tensor_c(const State& s);

/// (a q_x)_x + (a q_y)_y with the compact matrix per direction.
/// Throws ConfigError if a <= 0 on a point the stencil touches.
void div_var_diffusion(const Field& a, const Field& q, StencilOrder order, Field& out);
Field div_var_diffusion(const Field& a, const Field& q);

/// The compact operator with a fixed coefficient folded into per-point
/// weights, for repeated application to many q.
class DiffusionStencil {
 public:
  DiffusionStencil() = default;
  DiffusionStencil(const Field& a, StencilOrder order);

  /// out = shift * q + scale * div(a grad q) on interior points.
  void apply(const Field& q, double shift, double scale, Field& out) const;

  /// Diagonal of div(a grad .) at every interior point (row-major interior).
  const std::vector<double>& diagonal() const { return diag_; }
  const Grid& grid() const { return grid_; }
  int width() const { return width_; }

 private:
  Grid grid_{};
  int width_ = 0;  // taps per direction: 5 or 3
  // weights for axis d, tap c, interior point k at w_[d][c * n + k]
  std::array<std::vector<double>, 2> w_;
  std::vector<double> diag_;
};

}  // namespace swe
