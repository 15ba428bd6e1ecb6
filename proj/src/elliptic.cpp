#include "swe/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "swe/reductions.hpp"

namespace swe {

namespace {

constexpr double kSingularEps2 = 1e-14;

double dot(const Field& a, const Field& b) {
  const Grid& g = a.grid();
  const double* A = a.data();
  const double* B = b.data();
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    for (int i = 0; i < g.nx; ++i) s += A[row + i] * B[row + i];
  }
  return s;
}

double norm2(const Field& a) { return std::sqrt(dot(a, a)); }

// y += alpha * x on interior points
void axpy(double alpha, const Field& x, Field& y) {
  const Grid& g = x.grid();
  const double* X = x.data();
  double* Y = y.data();
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    for (int i = 0; i < g.nx; ++i) Y[row + i] += alpha * X[row + i];
  }
}

void copy_interior(const Field& src, Field& dst) {
  const Grid& g = src.grid();
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    std::copy(src.data() + row, src.data() + row + g.nx, dst.data() + row);
  }
}

void add_constant(Field& f, double c) {
  const Grid& g = f.grid();
  double* F = f.data();
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    for (int i = 0; i < g.nx; ++i) F[row + i] += c;
  }
}

void remove_mean(Field& f) { add_constant(f, -spatial_mean(f)); }

int default_max_iter(const Grid& g) {
  const double n = static_cast<double>(g.interior_size());
  const double root = g.dim == 2 ? std::sqrt(n) : n;
  return static_cast<int>(std::min(1e5, 500.0 * root));
}

}  // namespace

void HelmholtzSystem::validate() const {
  if (!(eps2 >= 0.0)) throw ConfigError("eps2 must be non-negative");
  if (!(tau >= 0.0)) throw ConfigError("tau must be non-negative");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (coeff.empty()) throw ConfigError("Helmholtz coefficient is not set");
  bc.validate();
}

struct HelmholtzSolver::Impl {
  Grid grid;
  BoundarySpec bc;
  Field r, z, p, q, rhat, v, s, t, y, w, b;
  DiffusionStencil stencil;
  std::optional<SpectralPreconditioner> spectral;
  StencilOrder spectral_order = StencilOrder::fourth;
  std::vector<double> jacobi;
  PreconditionerKind kind = PreconditionerKind::spectral;
  double eps2 = 0.0;
  double tau2 = 0.0;
  // iterate is held as xc + x with x mean-free: L annihilates constants exactly
  double xc = 0.0;

  Impl(const Grid& g, const BoundarySpec& spec)
      : grid(g), bc(spec), r(g), z(g), p(g), q(g), rhat(g), v(g), s(g), t(g), y(g), w(g), b(g) {}

  void prepare(const HelmholtzSystem& sys) {
    eps2 = sys.eps2;
    tau2 = sys.tau * sys.tau;
    stencil = DiffusionStencil(sys.coeff, sys.stencil);
    kind = sys.preconditioner;
    if (kind == PreconditionerKind::spectral) {
      if (!spectral || spectral_order != sys.stencil) {
        spectral.emplace(grid, bc, sys.stencil);
        spectral_order = sys.stencil;
      }
      spectral->set_coefficients(eps2, tau2 * spatial_mean(sys.coeff));
    } else {
      const auto& d = stencil.diagonal();
      jacobi.resize(d.size());
      for (std::size_t k = 0; k < d.size(); ++k) {
        const double m = eps2 - tau2 * d[k];
        jacobi[k] = m > 0.0 ? 1.0 / m : 1.0;
      }
    }
  }

  void op(Field& x, Field& out) {
    fill_mirror_ghosts(x, bc);
    stencil.apply(x, eps2, -tau2, out);
  }

  void precond(const Field& in, Field& out) {
    if (kind == PreconditionerKind::spectral) {
      spectral->apply(in, out);
      return;
    }
    const Grid& g = grid;
    std::size_t k = 0;
    for (int jj = 0; jj < g.ny; ++jj) {
      const std::ptrdiff_t row = g.index(0, jj);
      for (int i = 0; i < g.nx; ++i, ++k) out.data()[row + i] = in.data()[row + i] * jacobi[k];
    }
  }

  // r = b - A (xc + x)
  double residual(Field& x) {
    op(x, q);
    const Grid& g = grid;
    const double shift = eps2 * xc;
    for (int jj = 0; jj < g.ny; ++jj) {
      const std::ptrdiff_t row = g.index(0, jj);
      for (int i = 0; i < g.nx; ++i)
        r.data()[row + i] = (b.data()[row + i] - shift) - q.data()[row + i];
    }
    return norm2(r);
  }

  // (xc + x) += alpha * d
  void update(double alpha, const Field& d, Field& x) {
    const double m = alpha * spatial_mean(d);
    xc += m;
    const Grid& g = grid;
    const double* D = d.data();
    double* X = x.data();
    for (int jj = 0; jj < g.ny; ++jj) {
      const std::ptrdiff_t row = g.index(0, jj);
      for (int i = 0; i < g.nx; ++i) X[row + i] += alpha * D[row + i] - m;
    }
  }

  // Returns true on convergence; false on breakdown or stagnation.
  bool cg(Field& x, double target, int max_iter, int& iters, bool singular) {
    double rn = residual(x);
    if (rn <= target) return true;
    precond(r, z);
    copy_interior(z, p);
    double rz = dot(r, z);
    double best = rn;
    int since_best = 0;
    while (iters < max_iter) {
      ++iters;
      op(p, q);
      const double pq = dot(p, q);
      if (!(pq > 0.0) || !(rz > 0.0)) return false;
      const double alpha = rz / pq;
      update(alpha, p, x);
      axpy(-alpha, q, r);
      if (singular) remove_mean(r);
      rn = norm2(r);
      if (!std::isfinite(rn)) return false;
      if (rn <= 0.5 * target) {
        rn = residual(x);
        if (rn <= target) return true;
        precond(r, z);
        copy_interior(z, p);
        rz = dot(r, z);
        continue;
      }
      if (rn < 0.5 * best) {
        best = rn;
        since_best = 0;
      } else if (++since_best > 40) {
        return false;
      }
      precond(r, z);
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      const Grid& g = grid;
      for (int jj = 0; jj < g.ny; ++jj) {
        const std::ptrdiff_t row = g.index(0, jj);
        for (int i = 0; i < g.nx; ++i)
          p.data()[row + i] = z.data()[row + i] + beta * p.data()[row + i];
      }
    }
    return false;
  }

  bool bicgstab(Field& x, double target, int max_iter, int& iters, bool singular) {
    double rn = residual(x);
    if (rn <= target) return true;
    copy_interior(r, rhat);
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    v.fill(0.0);
    p.fill(0.0);
    const Grid& g = grid;
    auto restart = [&] {
      copy_interior(r, rhat);
      rho = alpha = omega = 1.0;
      v.fill(0.0);
      p.fill(0.0);
    };
    while (iters < max_iter) {
      ++iters;
      const double rho_new = dot(rhat, r);
      if (rho_new == 0.0 || !std::isfinite(rho_new)) {
        rn = residual(x);
        if (rn <= target) return true;
        restart();
        continue;
      }
      const double beta = (rho_new / rho) * (alpha / omega);
      rho = rho_new;
      for (int jj = 0; jj < g.ny; ++jj) {
        const std::ptrdiff_t row = g.index(0, jj);
        for (int i = 0; i < g.nx; ++i) {
          const std::ptrdiff_t k = row + i;
          p.data()[k] = r.data()[k] + beta * (p.data()[k] - omega * v.data()[k]);
        }
      }
      precond(p, y);
      op(y, v);
      const double rv = dot(rhat, v);
      if (rv == 0.0 || !std::isfinite(rv)) return false;
      alpha = rho / rv;
      copy_interior(r, s);
      axpy(-alpha, v, s);
      if (norm2(s) <= 0.5 * target) {
        update(alpha, y, x);
        rn = residual(x);
        if (rn <= target) return true;
        restart();
        continue;
      }
      precond(s, w);
      op(w, t);
      const double tt = dot(t, t);
      omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
      update(alpha, y, x);
      update(omega, w, x);
      copy_interior(s, r);
      axpy(-omega, t, r);
      if (singular) remove_mean(r);
      rn = norm2(r);
      if (!std::isfinite(rn)) return false;
      if (rn <= 0.5 * target) {
        rn = residual(x);
        if (rn <= target) return true;
        restart();
        continue;
      }
      if (omega == 0.0) return false;
    }
    return false;
  }
};

HelmholtzSolver::HelmholtzSolver(const Grid& g, const BoundarySpec& bc)
    : impl_(std::make_unique<Impl>(g, bc)) {
  bc.validate();
}

HelmholtzSolver::~HelmholtzSolver() = default;
HelmholtzSolver::HelmholtzSolver(HelmholtzSolver&&) noexcept = default;
HelmholtzSolver& HelmholtzSolver::operator=(HelmholtzSolver&&) noexcept = default;

void HelmholtzSolver::apply(const HelmholtzSystem& sys, const Field& v, Field& out) {
  DiffusionStencil(sys.coeff, sys.stencil).apply(v, sys.eps2, -sys.tau * sys.tau, out);
}

SolveReport HelmholtzSolver::solve(const HelmholtzSystem& sys, const Field& rhs, Field& x) {
  sys.validate();
  Impl& m = *impl_;
  const Grid& g = m.grid;
  if (!(rhs.grid() == g) || !(sys.coeff.grid() == g))
    throw std::invalid_argument("Helmholtz fields do not match the solver grid");
  if (!(sys.bc == m.bc)) throw std::invalid_argument("Helmholtz boundary does not match solver");
  if (x.empty() || !(x.grid() == g)) x = Field(g);

  SolveReport rep;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (!std::isfinite(rhs(i, j))) throw SolverError("non-finite Helmholtz right-hand side");
  copy_interior(rhs, m.b);
  const bool singular = sys.eps2 < kSingularEps2;
  if (singular) remove_mean(m.b);
  const double bnorm = norm2(m.b);
  if (bnorm == 0.0) {
    x.fill(0.0);
    return rep;
  }

  m.prepare(sys);
  const int max_iter = sys.max_iter > 0 ? sys.max_iter : default_max_iter(g);
  const double target = sys.tol * bnorm;
  m.xc = singular ? 0.0 : spatial_mean(x);
  remove_mean(x);
  if (!(m.residual(x) < bnorm)) {
    x.fill(0.0);
    m.xc = 0.0;
  }
  int iters = 0;
  bool ok = m.cg(x, target, max_iter, iters, singular);
  if (!ok) {
    rep.used_fallback = true;
    ok = m.bicgstab(x, target, max_iter, iters, singular);
  }
  if (singular) {
    remove_mean(x);
    m.xc = 0.0;
  }
  rep.iterations = iters;
  rep.residual = m.residual(x) / bnorm;
  add_constant(x, m.xc);
  if (!(rep.residual <= sys.tol)) {
    std::ostringstream msg;
    msg << "Helmholtz solve did not converge: relative residual " << rep.residual << " after "
        << iters << " iterations";
    throw SolverError(msg.str());
  }
  fill_mirror_ghosts(x, m.bc);
  return rep;
}

Field apply_operator(const HelmholtzSystem& sys, const Field& v) {
  sys.validate();
  Field tmp = v;
  fill_mirror_ghosts(tmp, sys.bc);
  Field out(v.grid());
  DiffusionStencil(sys.coeff, sys.stencil).apply(tmp, sys.eps2, -sys.tau * sys.tau, out);
  return out;
}

Field solve(const HelmholtzSystem& sys, const Field& rhs, SolveReport* report) {
  HelmholtzSolver solver(rhs.grid(), sys.bc);
  Field x(rhs.grid());
  const SolveReport rep = solver.solve(sys, rhs, x);
  if (report) *report = rep;
  return x;
}

void build_rhs(const State& star, const State& tensor_state, const Bathymetry& b, double Hbar,
               double tau, double eps, const NumericsOptions& opt, RhsWorkspace& ws, Field& out) {
  const Grid& g = star.grid();
  if (ws.H.empty() || !(ws.H.grid() == g)) ws = RhsWorkspace(g);
  if (out.empty() || !(out.grid() == g)) out = Field(g);
  const std::size_t n = g.storage_size();
  const double* h = star.h.data();
  const double* bp = b.field().data();
  double* H = ws.H.data();
  for (std::size_t k = 0; k < n; ++k) H[k] = h[k] + bp[k];
  div_lf_mass(star, ws.H, semi_implicit_flux_options(eps, opt.alpha), ws.flux, ws.div);
  div_tensor_c(tensor_state, opt.stencil, ws.central, ws.tensor);
  const double* D = ws.div.data();
  const double* T = ws.tensor.data();
  double* o = out.data();
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    for (int i = 0; i < g.nx; ++i) {
      const std::ptrdiff_t k = row + i;
      o[k] = (H[k] - Hbar) - tau * (D[k] - tau * T[k]);
    }
  }
}

Field build_rhs_first_order(const State& s, const Bathymetry& b, double dt, double eps,
                            const NumericsOptions& opt) {
  RhsWorkspace ws(s.grid());
  Field out(s.grid());
  const double Hbar = spatial_mean(surface_level(s, b));
  build_rhs(s, s, b, Hbar, dt, eps, opt, ws, out);
  return out;
}

Field build_rhs_stage(const State& star, const State& explicit_state, const Bathymetry& b,
                      double a_ii, double dt, double eps, const NumericsOptions& opt) {
  RhsWorkspace ws(star.grid());
  Field out(star.grid());
  const double Hbar = spatial_mean(surface_level(explicit_state, b));
  build_rhs(star, explicit_state, b, Hbar, a_ii * dt, eps, opt, ws, out);
  return out;
}

}  // namespace swe
