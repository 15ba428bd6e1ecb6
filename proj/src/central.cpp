#include "swe/central.hpp"

#include <sstream>

namespace swe {

namespace {

void ensure(Field& f, const Grid& g) {
  if (f.empty() || !(f.grid() == g)) f = Field(g);
}

void require_axis(const Grid& g, Axis axis) {
  if (axis == Axis::y && g.dim < 2) throw ConfigError("y derivative requested on a 1D grid");
}

int half_width(StencilOrder order) { return order == StencilOrder::fourth ? 2 : 1; }

}  // namespace

void second_deriv(const Field& q, Axis axis, StencilOrder order, Field& out) {
  const Grid& g = q.grid();
  require_axis(g, axis);
  ensure(out, g);
  const std::ptrdiff_t s = g.stride(axis);
  const double d = g.spacing(axis);
  const double* Q = q.data();
  double* o = out.data();
  if (order == StencilOrder::fourth) {
    const double w = 1.0 / (12.0 * d * d);
    for (int j = 0; j < g.ny; ++j) {
      const std::ptrdiff_t row = g.index(0, j);
      for (int i = 0; i < g.nx; ++i) {
        const std::ptrdiff_t p = row + i;
        o[p] = (-Q[p - 2 * s] + 16.0 * Q[p - s] - 30.0 * Q[p] + 16.0 * Q[p + s] - Q[p + 2 * s]) * w;
      }
    }
  } else {
    const double w = 1.0 / (d * d);
    for (int j = 0; j < g.ny; ++j) {
      const std::ptrdiff_t row = g.index(0, j);
      for (int i = 0; i < g.nx; ++i) {
        const std::ptrdiff_t p = row + i;
        o[p] = (Q[p - s] - 2.0 * Q[p] + Q[p + s]) * w;
      }
    }
  }
}

Field second_deriv_c4(const Field& q, Axis axis) {
  Field out(q.grid());
  second_deriv(q, axis, StencilOrder::fourth, out);
  return out;
}

void first_deriv(const Field& q, Axis axis, StencilOrder order, Field& out, int extra) {
  const Grid& g = q.grid();
  require_axis(g, axis);
  ensure(out, g);
  const std::ptrdiff_t s = g.stride(axis);
  const double d = g.spacing(axis);
  const double* Q = q.data();
  double* o = out.data();
  int i0 = 0, i1 = g.nx, j0 = 0, j1 = g.ny;
  if (axis == Axis::x) {
    j0 -= std::min(extra, g.ghost_y());
    j1 += std::min(extra, g.ghost_y());
  } else {
    i0 -= std::min(extra, g.ghost_x());
    i1 += std::min(extra, g.ghost_x());
  }
  const bool fourth = order == StencilOrder::fourth;
  const double w = fourth ? 1.0 / (12.0 * d) : 1.0 / (2.0 * d);
  for (int j = j0; j < j1; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    for (int i = i0; i < i1; ++i) {
      const std::ptrdiff_t p = row + i;
      o[p] = fourth ? (Q[p - 2 * s] - 8.0 * Q[p - s] + 8.0 * Q[p + s] - Q[p + 2 * s]) * w
                    : (Q[p + s] - Q[p - s]) * w;
    }
  }
}

Field first_deriv_c4(const Field& q, Axis axis) {
  Field out(q.grid());
  first_deriv(q, axis, StencilOrder::fourth, out);
  return out;
}

void div_tensor_c(const State& s, StencilOrder order, CentralWorkspace& ws, Field& out) {
  const Grid& g = s.grid();
  ensure(ws.a, g);
  ensure(ws.b, g);
  ensure(ws.c, g);
  ensure(out, g);
  const std::size_t n = g.storage_size();
  const double* h = s.h.data();
  const double* hu = s.hu.data();
  const double* hv = s.hv.data();
  double* fa = ws.a.data();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(h[k] > 0.0)) throw SolverError("nonpositive depth in tensor term");
    fa[k] = hu[k] * hu[k] / h[k];
  }
  second_deriv(ws.a, Axis::x, order, out);
  if (g.dim < 2) return;

  double* o = out.data();
  const auto accumulate = [&](const Field& term, double factor) {
    const double* t = term.data();
    for (int j = 0; j < g.ny; ++j) {
      const std::ptrdiff_t row = g.index(0, j);
      for (int i = 0; i < g.nx; ++i) o[row + i] += factor * t[row + i];
    }
  };

  for (std::size_t k = 0; k < n; ++k) fa[k] = hv[k] * hv[k] / h[k];
  second_deriv(ws.a, Axis::y, order, ws.b);
  accumulate(ws.b, 1.0);

  for (std::size_t k = 0; k < n; ++k) fa[k] = hu[k] * hv[k] / h[k];
  first_deriv(ws.a, Axis::y, order, ws.b, half_width(order));
  first_deriv(ws.b, Axis::x, order, ws.c);
  accumulate(ws.c, 2.0);
}

Field div_tensor_c(const State& s) {
  CentralWorkspace ws(s.grid());
  Field out(s.grid());
  div_tensor_c(s, StencilOrder::fourth, ws, out);
  return out;
}

DiffusionStencil::DiffusionStencil(const Field& a, StencilOrder order)
    : grid_(a.grid()), width_(order == StencilOrder::fourth ? 5 : 3) {
  const Grid& g = grid_;
  const std::size_t n = g.interior_size();
  const int r = width_ / 2;
  const double* A = a.data();
  for (int d = 0; d < g.dim; ++d) {
    const std::ptrdiff_t s = g.stride(d == 0 ? Axis::x : Axis::y);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        for (int ro = -r; ro <= r; ++ro) {
          const double av = A[g.index(i, j) + ro * s];
          if (!(av > 0.0)) {
            std::ostringstream msg;
            msg << "diffusion coefficient " << av << " is not positive near (" << i << "," << j
                << ")";
            throw ConfigError(msg.str());
          }
        }
  }
  diag_.assign(n, 0.0);
  const std::ptrdiff_t nx = g.nx;
  for (int d = 0; d < g.dim; ++d) {
    const Axis axis = d == 0 ? Axis::x : Axis::y;
    const std::ptrdiff_t s = g.stride(axis);
    const double inv = 1.0 / (g.spacing(axis) * g.spacing(axis));
    auto& w = w_[d];
    w.assign(static_cast<std::size_t>(width_) * n, 0.0);
    for (int ro = -r; ro <= r; ++ro) {
      for (int c = 0; c < width_; ++c) {
        const double m = width_ == 5 ? CompactStencil::fourth[ro + 2][c]
                                     : CompactStencil::second[ro + 1][c];
        if (m == 0.0) continue;
        const double mi = m * inv;
        for (int j = 0; j < g.ny; ++j) {
          const double* ar = A + g.index(0, j) + ro * s;
          double* wr = w.data() + static_cast<std::size_t>(c) * n +
                       static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
          for (std::ptrdiff_t i = 0; i < nx; ++i) wr[i] += ar[i] * mi;
        }
      }
    }
    for (int c = 0; c < width_; ++c) {
      if (c == r) continue;
      const double* wc = w.data() + static_cast<std::size_t>(c) * n;
      for (std::size_t k = 0; k < n; ++k) diag_[k] -= wc[k];
    }
  }
}

void DiffusionStencil::apply(const Field& q, double shift, double scale, Field& out) const {
  const Grid& g = grid_;
  if (!(q.grid() == g)) throw std::invalid_argument("field grid does not match stencil");
  ensure(out, g);
  const std::size_t n = g.interior_size();
  const double* Q = q.data();
  double* o = out.data();
  const std::ptrdiff_t sy = g.stride(Axis::y);
  const std::ptrdiff_t nx = g.nx;
  if (width_ == 5) {
    const double* wx0 = w_[0].data();
    const double* wx1 = wx0 + n;
    const double* wx3 = wx1 + 2 * n;
    const double* wx4 = wx3 + n;
    for (int j = 0; j < g.ny; ++j) {
      const double* qr = Q + g.index(0, j);
      double* orow = o + g.index(0, j);
      const std::size_t k0 = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
      const double* a0 = wx0 + k0;
      const double* a1 = wx1 + k0;
      const double* a3 = wx3 + k0;
      const double* a4 = wx4 + k0;
      for (std::ptrdiff_t i = 0; i < nx; ++i) {
        const double q0 = qr[i];
        const double lap = a0[i] * (qr[i - 2] - q0) + a1[i] * (qr[i - 1] - q0) +
                           a3[i] * (qr[i + 1] - q0) + a4[i] * (qr[i + 2] - q0);
        orow[i] = shift * qr[i] + scale * lap;
      }
      if (g.dim == 2) {
        const double* b0 = w_[1].data() + k0;
        const double* b1 = b0 + n;
        const double* b3 = b1 + 2 * n;
        const double* b4 = b3 + n;
        for (std::ptrdiff_t i = 0; i < nx; ++i) {
          const double q0 = qr[i];
          const double lap = b0[i] * (qr[i - 2 * sy] - q0) + b1[i] * (qr[i - sy] - q0) +
                             b3[i] * (qr[i + sy] - q0) + b4[i] * (qr[i + 2 * sy] - q0);
          orow[i] += scale * lap;
        }
      }
    }
  } else {
    for (int j = 0; j < g.ny; ++j) {
      const double* qr = Q + g.index(0, j);
      double* orow = o + g.index(0, j);
      const std::size_t k0 = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
      const double* a0 = w_[0].data() + k0;
      const double* a2 = a0 + 2 * n;
      for (std::ptrdiff_t i = 0; i < nx; ++i)
        orow[i] =
            shift * qr[i] + scale * (a0[i] * (qr[i - 1] - qr[i]) + a2[i] * (qr[i + 1] - qr[i]));
      if (g.dim == 2) {
        const double* b0 = w_[1].data() + k0;
        const double* b2 = b0 + 2 * n;
        for (std::ptrdiff_t i = 0; i < nx; ++i)
          orow[i] += scale * (b0[i] * (qr[i - sy] - qr[i]) + b2[i] * (qr[i + sy] - qr[i]));
      }
    }
  }
}

void div_var_diffusion(const Field& a, const Field& q, StencilOrder order, Field& out) {
  if (!(a.grid() == q.grid())) throw std::invalid_argument("fields live on different grids");
  DiffusionStencil(a, order).apply(q, 0.0, 1.0, out);
}

Field div_var_diffusion(const Field& a, const Field& q) {
  Field out(q.grid());
  div_var_diffusion(a, q, StencilOrder::fourth, out);
  return out;
}

}  // namespace swe
