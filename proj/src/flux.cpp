#include "swe/flux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swe/reductions.hpp"
#include "swe/weno.hpp"

namespace swe {

namespace {

// Calls run(lo, hi) for each contiguous run of storage indices p whose
// interface p + 1/2 along A bounds an interior point.
template <Axis A, class Run>
void for_interface_runs(const Grid& g, Run&& run) {
  if constexpr (A == Axis::x) {
    for (int j = 0; j < g.ny; ++j) {
      const std::ptrdiff_t row = g.index(0, j);
      run(row - 1, row + g.nx);
    }
  } else {
    for (int k = -1; k < g.ny; ++k) {
      const std::ptrdiff_t row = g.index(0, k);
      run(row, row + g.nx);
    }
  }
}

inline double max6(const double* sp, std::ptrdiff_t p, std::ptrdiff_t s) {
  const double a = std::max(sp[p - 2 * s], sp[p - s]);
  const double b = std::max(sp[p], sp[p + s]);
  const double c = std::max(sp[p + 2 * s], sp[p + 3 * s]);
  return std::max(std::max(a, b), c);
}

template <bool Linear>
inline double lf_flux(const double* fp, const double* vp, std::ptrdiff_t p, std::ptrdiff_t s,
                      double a) {
  const double p0 = 0.5 * (fp[p - 2 * s] + a * vp[p - 2 * s]);
  const double p1 = 0.5 * (fp[p - s] + a * vp[p - s]);
  const double p2 = 0.5 * (fp[p] + a * vp[p]);
  const double p3 = 0.5 * (fp[p + s] + a * vp[p + s]);
  const double p4 = 0.5 * (fp[p + 2 * s] + a * vp[p + 2 * s]);
  const double m0 = 0.5 * (fp[p + 3 * s] - a * vp[p + 3 * s]);
  const double m1 = 0.5 * (fp[p + 2 * s] - a * vp[p + 2 * s]);
  const double m2 = 0.5 * (fp[p + s] - a * vp[p + s]);
  const double m3 = 0.5 * (fp[p] - a * vp[p]);
  const double m4 = 0.5 * (fp[p - s] - a * vp[p - s]);
  if constexpr (Linear)
    return weno5_with(kLinearWeights, p0, p1, p2, p3, p4) +
           weno5_with(kLinearWeights, m0, m1, m2, m3, m4);
  else
    return weno5(p0, p1, p2, p3, p4) + weno5(m0, m1, m2, m3, m4);
}

template <bool Linear>
void lf_run_local(const double* __restrict fp, const double* __restrict vp,
                  const double* __restrict sp, double* __restrict F, std::ptrdiff_t s,
                  std::ptrdiff_t lo, std::ptrdiff_t hi) {
  for (std::ptrdiff_t p = lo; p < hi; ++p) F[p] = lf_flux<Linear>(fp, vp, p, s, max6(sp, p, s));
}

template <bool Linear>
void lf_run_global(const double* __restrict fp, const double* __restrict vp, double a,
                   double* __restrict F, std::ptrdiff_t s, std::ptrdiff_t lo, std::ptrdiff_t hi) {
  for (std::ptrdiff_t p = lo; p < hi; ++p) F[p] = lf_flux<Linear>(fp, vp, p, s, a);
}

void shared_run(const double* __restrict gp, const double* __restrict bp, double* __restrict FG,
                double* __restrict FB, std::ptrdiff_t s, std::ptrdiff_t lo, std::ptrdiff_t hi) {
  for (std::ptrdiff_t p = lo; p < hi; ++p) {
    WenoWeights wp;
    WenoWeights wm;
    const double gplus = weno5(0.5 * gp[p - 2 * s], 0.5 * gp[p - s], 0.5 * gp[p],
                               0.5 * gp[p + s], 0.5 * gp[p + 2 * s], &wp);
    const double gminus = weno5(0.5 * gp[p + 3 * s], 0.5 * gp[p + 2 * s], 0.5 * gp[p + s],
                                0.5 * gp[p], 0.5 * gp[p - s], &wm);
    const double bplus = weno5_with(wp, 0.5 * bp[p - 2 * s], 0.5 * bp[p - s], 0.5 * bp[p],
                                    0.5 * bp[p + s], 0.5 * bp[p + 2 * s]);
    const double bminus = weno5_with(wm, 0.5 * bp[p + 3 * s], 0.5 * bp[p + 2 * s],
                                     0.5 * bp[p + s], 0.5 * bp[p], 0.5 * bp[p - s]);
    FG[p] = gplus + gminus;
    FB[p] = bplus + bminus;
  }
}

enum class Accumulate { assign, add };

// out = (F_{p} - F_{p-s}) * scale over interior points; optionally added.
template <Axis A>
void flux_difference(const Grid& g, const Field& flux, double scale, Accumulate mode, Field& out) {
  const std::ptrdiff_t s = g.stride(A);
  const double* F = flux.data();
  double* o = out.data();
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    if (mode == Accumulate::assign) {
      for (int i = 0; i < g.nx; ++i) o[row + i] = (F[row + i] - F[row + i - s]) * scale;
    } else {
      for (int i = 0; i < g.nx; ++i) o[row + i] += (F[row + i] - F[row + i - s]) * scale;
    }
  }
}

// Local Lax-Friedrichs split-flux interface values along A:
//   F_{i+1/2} = W+[(f + a v)/2] + W-[(f - a v)/2],
// with a the maximum of `speed` over i-2..i+3 (or the global maximum).
template <Axis A, bool Linear>
void lf_interface_fluxes(const Grid& g, const Field& f, const Field& v, const Field& speed,
                         AlphaMode mode, double alpha_global, Field& flux) {
  const std::ptrdiff_t s = g.stride(A);
  const double* fp = f.data();
  const double* vp = v.data();
  const double* sp = speed.data();
  double* F = flux.data();
  if (mode == AlphaMode::local) {
    for_interface_runs<A>(g, [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
      lf_run_local<Linear>(fp, vp, sp, F, s, lo, hi);
    });
  } else {
    for_interface_runs<A>(g, [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
      lf_run_global<Linear>(fp, vp, alpha_global, F, s, lo, hi);
    });
  }
}

// Zero-viscosity interfaces of G with the same weights carried over to b.
template <Axis A>
void shared_weight_fluxes(const Grid& g, const Field& G, const Field& b, Field& flux_g,
                          Field& flux_b) {
  const std::ptrdiff_t s = g.stride(A);
  const double* gp = G.data();
  const double* bp = b.data();
  double* FG = flux_g.data();
  double* FB = flux_b.data();
  for_interface_runs<A>(g, [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
    shared_run(gp, bp, FG, FB, s, lo, hi);
  });
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

void ensure(Field& f, const Grid& g) {
  if (f.empty() || !(f.grid() == g)) f = Field(g);
}

[[noreturn]] void throw_depth(const Grid& g, std::ptrdiff_t p, double h) {
  const int pitch = g.pitch();
  const int i = static_cast<int>(p % pitch) - g.ghost_x();
  const int j = static_cast<int>(p / pitch) - g.ghost_y();
  std::ostringstream msg;
  msg << "nonpositive depth h=" << h << " at (" << i << "," << j << ")";
  throw SolverError(msg.str());
}

// speed = |m / h| + c sqrt(h) over the whole padded array.
double fill_speed(const Field& h, const Field& m, double c, Field& speed) {
  const Grid& g = h.grid();
  const double* hp = h.data();
  const double* mp = m.data();
  double* sp = speed.data();
  const std::size_t n = g.storage_size();
  double amax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double hk = hp[k];
    if (!(hk > 0.0)) throw_depth(g, static_cast<std::ptrdiff_t>(k), hk);
    sp[k] = std::abs(mp[k] / hk) + c * std::sqrt(hk);
    amax = std::max(amax, sp[k]);
  }
  return amax;
}

template <Axis A, bool Linear = false>
void lf_divergence(const Grid& g, const Field& f, const Field& v, const Field& speed,
                   AlphaMode mode, double alpha_global, Accumulate acc, FluxWorkspace& ws,
                   Field& out) {
  lf_interface_fluxes<A, Linear>(g, f, v, speed, mode, alpha_global, ws.flux_a);
  flux_difference<A>(g, ws.flux_a, 1.0 / g.spacing(A), acc, out);
}

template <Axis A>
void grad_w_axis(const Grid& g, const Field& G, const Field& H2, const Bathymetry& b, double scale,
                 Accumulate acc, FluxWorkspace& ws, Field& out) {
  shared_weight_fluxes<A>(g, G, b.field(), ws.flux_a, ws.flux_b);
  const std::ptrdiff_t s = g.stride(A);
  const double inv = scale / g.spacing(A);
  const double* FG = ws.flux_a.data();
  const double* FB = ws.flux_b.data();
  const double* h2 = H2.data();
  double* o = out.data();
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    for (int i = 0; i < g.nx; ++i) {
      const std::ptrdiff_t p = row + i;
      const double val = ((FG[p] - FG[p - s]) + h2[p] * (FB[p] - FB[p - s])) * inv;
      if (acc == Accumulate::assign)
        o[p] = val;
      else
        o[p] += val;
    }
  }
}

void grad_w_impl(const Field& H2, double Hbar, const Bathymetry& b, double eps, double scale,
                 Accumulate acc, FluxWorkspace& ws, VectorField& out) {
  const Grid& g = H2.grid();
  require_same_grid(g, b.grid());
  if (!(ws.grid() == g)) ws = FluxWorkspace(g);
  ensure(out.x, g);
  ensure(out.y, g);
  const double half_eps2 = 0.5 * eps * eps;
  const double* h2 = H2.data();
  const double* bp = b.field().data();
  double* G = ws.work_a.data();
  const std::size_t n = g.storage_size();
  for (std::size_t k = 0; k < n; ++k) G[k] = (Hbar + half_eps2 * h2[k] - bp[k]) * h2[k];
  grad_w_axis<Axis::x>(g, ws.work_a, H2, b, scale, acc, ws, out.x);
  if (g.dim == 2) grad_w_axis<Axis::y>(g, ws.work_a, H2, b, scale, acc, ws, out.y);
}

template <bool Linear>
void mass_divergence(const State& s, const Field& H, const FluxOptions& opt, FluxWorkspace& ws,
                     Field& out) {
  const Grid& g = s.grid();
  const double amax_x = fill_speed(s.h, s.hu, opt.speed_factor, ws.speed);
  lf_divergence<Axis::x, Linear>(g, s.hu, H, ws.speed, opt.alpha, amax_x, Accumulate::assign, ws,
                                 out);
  if (g.dim == 2) {
    const double amax_y = fill_speed(s.h, s.hv, opt.speed_factor, ws.speed);
    lf_divergence<Axis::y, Linear>(g, s.hv, H, ws.speed, opt.alpha, amax_y, Accumulate::add, ws,
                                   out);
  }
}

}  // namespace

bool use_linear_mass_weights(MassWeights w, double speed_factor, double eps) {
  switch (w) {
    case MassWeights::linear:
      return true;
    case MassWeights::nonlinear:
      return false;
    case MassWeights::automatic:
      break;
  }
  return speed_factor < 1.0 / eps;
}

FluxOptions semi_implicit_flux_options(double eps, AlphaMode mode) {
  const double c = std::min(1.0, 1.0 / eps);
  return FluxOptions{c, mode, use_linear_mass_weights(MassWeights::automatic, c, eps)};
}

FluxWorkspace::FluxWorkspace(const Grid& g)
    : flux_a(g), flux_b(g), speed(g), work_a(g), work_b(g), grid_(g) {}

void div_lf_mass(const State& s, const Field& H, const FluxOptions& opt, FluxWorkspace& ws,
                 Field& out) {
  const Grid& g = s.grid();
  require_same_grid(g, H.grid());
  if (!(ws.grid() == g)) ws = FluxWorkspace(g);
  ensure(out, g);
  if (opt.linear_mass_weights)
    mass_divergence<true>(s, H, opt, ws, out);
  else
    mass_divergence<false>(s, H, opt, ws, out);
}

Field div_lf_mass(const State& s, const Bathymetry& b, double eps) {
  FluxWorkspace ws(s.grid());
  Field out(s.grid());
  div_lf_mass(s, surface_level(s, b), semi_implicit_flux_options(eps), ws, out);
  return out;
}

void div_lf_momentum(const State& s, const FluxOptions& opt, FluxWorkspace& ws, VectorField& out) {
  const Grid& g = s.grid();
  if (!(ws.grid() == g)) ws = FluxWorkspace(g);
  ensure(out.x, g);
  ensure(out.y, g);
  const std::size_t n = g.storage_size();
  const double* h = s.h.data();
  const double* hu = s.hu.data();
  const double* hv = s.hv.data();
  double* fa = ws.work_a.data();
  double* fb = ws.work_b.data();

  // x direction: (hu^2/h) for hu and (hu hv/h) for hv
  const double amax_x = fill_speed(s.h, s.hu, opt.speed_factor, ws.speed);
  for (std::size_t k = 0; k < n; ++k) fa[k] = hu[k] * hu[k] / h[k];
  lf_divergence<Axis::x>(g, ws.work_a, s.hu, ws.speed, opt.alpha, amax_x, Accumulate::assign, ws,
                         out.x);
  if (g.dim < 2) return;
  for (std::size_t k = 0; k < n; ++k) fb[k] = hu[k] * hv[k] / h[k];
  lf_divergence<Axis::x>(g, ws.work_b, s.hv, ws.speed, opt.alpha, amax_x, Accumulate::assign, ws,
                         out.y);

  // y direction: (hu hv/h) for hu and (hv^2/h) for hv
  const double amax_y = fill_speed(s.h, s.hv, opt.speed_factor, ws.speed);
  lf_divergence<Axis::y>(g, ws.work_b, s.hu, ws.speed, opt.alpha, amax_y, Accumulate::add, ws,
                         out.x);
  for (std::size_t k = 0; k < n; ++k) fa[k] = hv[k] * hv[k] / h[k];
  lf_divergence<Axis::y>(g, ws.work_a, s.hv, ws.speed, opt.alpha, amax_y, Accumulate::add, ws,
                         out.y);
}

VectorField div_lf_momentum(const State& s, double eps) {
  FluxWorkspace ws(s.grid());
  VectorField out(s.grid());
  div_lf_momentum(s, semi_implicit_flux_options(eps), ws, out);
  return out;
}

void grad_w_source(const Field& H2, double Hbar, const Bathymetry& b, double eps,
                   FluxWorkspace& ws, VectorField& out) {
  grad_w_impl(H2, Hbar, b, eps, 1.0, Accumulate::assign, ws, out);
}

VectorField grad_w_source(const Field& H2, double Hbar, const Bathymetry& b, double eps) {
  FluxWorkspace ws(H2.grid());
  VectorField out(H2.grid());
  grad_w_source(H2, Hbar, b, eps, ws, out);
  return out;
}

void add_grad_w_source(const Field& H2, double Hbar, const Bathymetry& b, double eps,
                       double scale, FluxWorkspace& ws, VectorField& out) {
  grad_w_impl(H2, Hbar, b, eps, scale, Accumulate::add, ws, out);
}

}  // namespace swe
