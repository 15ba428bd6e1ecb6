#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "swe/elliptic.hpp"

namespace swe {

namespace {

struct AxisTransform {
  fftw_r2r_kind forward;
  fftw_r2r_kind backward;
  double norm;
  std::vector<double> symbol;  // eigenvalue of -d^2/dx^2 times dx^2, per index
};

double stencil_symbol(double theta, StencilOrder order) {
  const double c = std::cos(theta);
  if (order == StencilOrder::second) return 2.0 - 2.0 * c;
  return (30.0 - 32.0 * c + 2.0 * std::cos(2.0 * theta)) / 12.0;
}

AxisTransform make_axis(int n, double d, bool periodic, StencilOrder order) {
  AxisTransform t;
  t.symbol.resize(static_cast<std::size_t>(n));
  const double inv = 1.0 / (d * d);
  if (periodic) {
    t.forward = FFTW_R2HC;
    t.backward = FFTW_HC2R;
    t.norm = n;
    for (int m = 0; m < n; ++m) {
      const double theta = 2.0 * std::numbers::pi * std::min(m, n - m) / n;
      t.symbol[static_cast<std::size_t>(m)] = stencil_symbol(theta, order) * inv;
    }
  } else {
    t.forward = FFTW_REDFT10;
    t.backward = FFTW_REDFT01;
    t.norm = 2.0 * n;
    for (int m = 0; m < n; ++m) {
      const double theta = std::numbers::pi * m / n;
      t.symbol[static_cast<std::size_t>(m)] = stencil_symbol(theta, order) * inv;
    }
  }
  return t;
}

}  // namespace

struct SpectralPreconditioner::Impl {
  Grid grid;
  AxisTransform tx;
  AxisTransform ty;
  double* buffer = nullptr;
  std::size_t size = 0;
  std::vector<double> inverse;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Impl() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buffer) fftw_free(buffer);
  }
};

SpectralPreconditioner::SpectralPreconditioner(const Grid& g, const BoundarySpec& bc,
                                               StencilOrder order)
    : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.grid = g;
  m.tx = make_axis(g.nx, g.dx, bc.periodic_x(), order);
  m.size = g.interior_size();
  m.buffer = fftw_alloc_real(m.size);
  if (!m.buffer) throw SolverError("failed to allocate FFT buffer");
  std::fill(m.buffer, m.buffer + m.size, 0.0);
  m.inverse.assign(m.size, 0.0);
  double* buf = m.buffer;
  if (g.dim == 1) {
    m.forward = fftw_plan_r2r_1d(g.nx, buf, buf, m.tx.forward, FFTW_ESTIMATE);
    m.backward = fftw_plan_r2r_1d(g.nx, buf, buf, m.tx.backward, FFTW_ESTIMATE);
  } else {
    m.ty = make_axis(g.ny, g.dy, bc.periodic_y(), order);
    m.forward = fftw_plan_r2r_2d(g.ny, g.nx, buf, buf, m.ty.forward, m.tx.forward, FFTW_ESTIMATE);
    m.backward =
        fftw_plan_r2r_2d(g.ny, g.nx, buf, buf, m.ty.backward, m.tx.backward, FFTW_ESTIMATE);
  }
  if (!m.forward || !m.backward) throw SolverError("failed to create FFT plans");
}

SpectralPreconditioner::~SpectralPreconditioner() = default;

void SpectralPreconditioner::set_coefficients(double eps2, double tau2_abar) {
  Impl& m = *impl_;
  const Grid& g = m.grid;
  const double norm = m.tx.norm * (g.dim == 2 ? m.ty.norm : 1.0);
  std::size_t k = 0;
  for (int j = 0; j < g.ny; ++j) {
    const double sy = g.dim == 2 ? m.ty.symbol[static_cast<std::size_t>(j)] : 0.0;
    for (int i = 0; i < g.nx; ++i, ++k) {
      const double p = eps2 + tau2_abar * (m.tx.symbol[static_cast<std::size_t>(i)] + sy);
      m.inverse[k] = p > 0.0 ? 1.0 / (p * norm) : 0.0;
    }
  }
}

void SpectralPreconditioner::apply(const Field& r, Field& z) {
  Impl& m = *impl_;
  const Grid& g = m.grid;
  double* buf = m.buffer;
  std::size_t k = 0;
  for (int j = 0; j < g.ny; ++j) {
    const double* row = r.data() + g.index(0, j);
    for (int i = 0; i < g.nx; ++i) buf[k++] = row[i];
  }
  fftw_execute(m.forward);
  const std::size_t n = m.size;
  for (std::size_t q = 0; q < n; ++q) buf[q] *= m.inverse[q];
  fftw_execute(m.backward);
  k = 0;
  for (int j = 0; j < g.ny; ++j) {
    double* row = z.data() + g.index(0, j);
    for (int i = 0; i < g.nx; ++i) row[i] = buf[k++];
  }
}

}  // namespace swe
