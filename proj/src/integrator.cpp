#include "swe/integrator.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "swe/reductions.hpp"

namespace swe {

namespace {

constexpr double kBlowUp = 1e10;

// dst = base - dt * sum_j coef(j) * src_j over interior points.
template <class Coef, class Get>
void combine(const Field& base, double dt, int count, Coef coef, Get get, Field& dst) {
  const Grid& g = base.grid();
  const double* B = base.data();
  double* D = dst.data();
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    for (int i = 0; i < g.nx; ++i) D[row + i] = B[row + i];
  }
  for (int st = 0; st < count; ++st) {
    const double w = coef(st);
    if (w == 0.0) continue;
    const double f = dt * w;
    const double* S = get(st).data();
    for (int j = 0; j < g.ny; ++j) {
      const std::ptrdiff_t row = g.index(0, j);
      for (int i = 0; i < g.nx; ++i) D[row + i] -= f * S[row + i];
    }
  }
}

// dst = a * x + b * (y + dt * k) on interior points
void ssp_blend(double a, const Field& x, double b, const Field& y, double dt, const Field& k,
               Field& dst) {
  const Grid& g = x.grid();
  for (int j = 0; j < g.ny; ++j) {
    const std::ptrdiff_t row = g.index(0, j);
    const double* X = x.data() + row;
    const double* Y = y.data() + row;
    const double* K = k.data() + row;
    double* D = dst.data() + row;
    for (int i = 0; i < g.nx; ++i) D[i] = a * X[i] + b * (Y[i] + dt * K[i]);
  }
}

void interior_extrema(const Field& h, double& lo, double& hi) {
  lo = min_interior(h);
  hi = max_interior(h);
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::imex3:
      return "imex3";
    case Scheme::first_order:
      return "first-order";
    case Scheme::explicit_ref:
      return "explicit-ref";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "imex3") return Scheme::imex3;
  if (name == "first-order") return Scheme::first_order;
  if (name == "explicit-ref") return Scheme::explicit_ref;
  throw ConfigError("unknown scheme '" + name + "'");
}

Integrator::Integrator(const Problem& p)
    : problem_(p),
      first_order_(ButcherPair::first_order()),
      si_flux_{p.params.capped_speed_factor(), p.numerics.alpha,
               use_linear_mass_weights(p.numerics.mass_weights, p.params.capped_speed_factor(),
                                       p.params.eps)},
      ex_flux_{p.params.full_speed_factor(), p.numerics.alpha,
               use_linear_mass_weights(p.numerics.mass_weights, p.params.full_speed_factor(),
                                       p.params.eps)},
      flux_ws_(p.grid),
      rhs_ws_(p.grid),
      solver_(p.grid, p.bc.spec()),
      ue_(p.grid),
      us_(p.grid),
      pred_(p.grid),
      tmp_(p.grid),
      k_(p.grid),
      u1_(p.grid),
      h2_(p.grid),
      rhs_(p.grid),
      H_(p.grid) {
  p.params.validate();
  if (!(p.bathy.grid() == p.grid)) throw ConfigError("bathymetry grid does not match problem");
}

void Integrator::check_state(const State& s, const char* where) const {
  const Grid& g = s.grid();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double h = s.h(i, j);
      const double mu = s.hu(i, j);
      const double mv = s.hv(i, j);
      if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(mu) || !std::isfinite(mv) ||
          std::abs(h) > kBlowUp || std::abs(mu) > kBlowUp || std::abs(mv) > kBlowUp) {
        std::ostringstream msg;
        msg << where << ": invalid state at (" << i << "," << j << "): h=" << h << " hu=" << mu
            << " hv=" << mv;
        throw SolverError(msg.str());
      }
    }
  }
}

void Integrator::step_imex(State& s, double dt, const ButcherPair& tab) {
  const Problem& P = problem_;
  const Grid& g = P.grid;
  const bool two_d = g.dim == 2;
  const double eps = P.params.eps;
  const double eps2 = eps * eps;
  const int ns = tab.s;
  if (static_cast<int>(stages_.size()) < ns) {
    stages_.resize(static_cast<std::size_t>(ns));
    for (auto& st : stages_) {
      st.dm = Field(g);
      st.mom = VectorField(g);
    }
  }
  fill_ghosts(s, P.bc);

  const std::size_t n = g.storage_size();
  const double* bp = P.bathy.field().data();

  for (int i = 0; i < ns; ++i) {
    try {
      const auto at = [&](int j) { return tab.atil(i, j); };
      const auto ai = [&](int j) { return tab.a(i, j); };
      const auto dm = [&](int j) -> const Field& { return stages_[static_cast<std::size_t>(j)].dm; };
      const auto mx = [&](int j) -> const Field& {
        return stages_[static_cast<std::size_t>(j)].mom.x;
      };
      const auto my = [&](int j) -> const Field& {
        return stages_[static_cast<std::size_t>(j)].mom.y;
      };

      // explicit and starred states
      combine(s.h, dt, i, at, dm, ue_.h);
      combine(s.hu, dt, i, at, mx, ue_.hu);
      if (two_d) combine(s.hv, dt, i, at, my, ue_.hv);
      fill_ghosts(ue_, P.bc);
      combine(s.h, dt, i, ai, dm, us_.h);
      combine(s.hu, dt, i, ai, mx, us_.hu);
      if (two_d) combine(s.hv, dt, i, ai, my, us_.hv);
      fill_ghosts(us_, P.bc);

      // elliptic stage solve
      const double tau = tab.a(i, i) * dt;
      const double Hbar = [&] {
        double* H = H_.data();
        for (std::size_t k = 0; k < n; ++k) H[k] = ue_.h.data()[k] + bp[k];
        return spatial_mean(H_);
      }();
      build_rhs(us_, ue_, P.bathy, Hbar, tau, eps, P.numerics, rhs_ws_, rhs_);
      HelmholtzSystem sys;
      sys.eps2 = eps2;
      sys.tau = tau;
      sys.coeff = ue_.h;
      sys.bc = P.bc.spec();
      sys.tol = P.numerics.solver_tol;
      sys.stencil = P.numerics.stencil;
      sys.preconditioner = P.numerics.preconditioner;
      const SolveReport rep = solver_.solve(sys, rhs_, h2_);
      ++stats_.solves;
      stats_.iterations += rep.iterations;
      stats_.fallbacks += rep.used_fallback ? 1 : 0;
      stats_.max_residual = std::max(stats_.max_residual, rep.residual);

      // momentum closure
      Stage& cur = stages_[static_cast<std::size_t>(i)];
      div_lf_momentum(ue_, si_flux_, flux_ws_, cur.mom);
      add_grad_w_source(h2_, Hbar, P.bathy, eps, 1.0, flux_ws_, cur.mom);
      combine(us_.hu, tau, 1, [](int) { return 1.0; },
              [&](int) -> const Field& { return cur.mom.x; }, pred_.hu);
      if (two_d)
        combine(us_.hv, tau, 1, [](int) { return 1.0; },
                [&](int) -> const Field& { return cur.mom.y; }, pred_.hv);

      // mass closure with viscosity on the predicted level Hbar + eps^2 H2
      {
        double* hp = pred_.h.data();
        const double* h2 = h2_.data();
        for (int jj = 0; jj < g.ny; ++jj) {
          const std::ptrdiff_t row = g.index(0, jj);
          for (int ii = 0; ii < g.nx; ++ii) {
            const std::ptrdiff_t k = row + ii;
            hp[k] = Hbar + eps2 * h2[k] - bp[k];
          }
        }
      }
      fill_ghosts(pred_, P.bc);
      {
        double* H = H_.data();
        const double* hp = pred_.h.data();
        for (std::size_t k = 0; k < n; ++k) H[k] = hp[k] + bp[k];
      }
      div_lf_mass(pred_, H_, si_flux_, flux_ws_, cur.dm);
    } catch (const SolverError& e) {
      std::ostringstream msg;
      msg << "stage " << i + 1 << ": " << e.what();
      throw SolverError(msg.str());
    }
  }

  // final accumulation from the cached stage evaluations
  const auto bw = [&](int j) { return tab.b[static_cast<std::size_t>(j)]; };
  combine(s.h, dt, ns, bw, [&](int j) -> const Field& { return stages_[j].dm; }, tmp_.h);
  combine(s.hu, dt, ns, bw, [&](int j) -> const Field& { return stages_[j].mom.x; }, tmp_.hu);
  if (two_d)
    combine(s.hv, dt, ns, bw, [&](int j) -> const Field& { return stages_[j].mom.y; }, tmp_.hv);
  std::swap(s.h, tmp_.h);
  std::swap(s.hu, tmp_.hu);
  if (two_d) std::swap(s.hv, tmp_.hv);
  check_state(s, "imex step");
  fill_ghosts(s, P.bc);
}

void Integrator::step_first_order(State& s, double dt) { step_imex(s, dt, first_order_); }

void Integrator::explicit_rhs(const State& u, State& out) {
  const Problem& P = problem_;
  const Grid& g = P.grid;
  const double eps = P.params.eps;
  const std::size_t n = g.storage_size();
  const double* bp = P.bathy.field().data();
  double* H = H_.data();
  for (std::size_t k = 0; k < n; ++k) H[k] = u.h.data()[k] + bp[k];
  const double Hbar = spatial_mean(H_);
  const double inv_eps2 = 1.0 / (eps * eps);
  double* h2 = h2_.data();
  for (std::size_t k = 0; k < n; ++k) h2[k] = (H[k] - Hbar) * inv_eps2;

  div_lf_mass(u, H_, ex_flux_, flux_ws_, out.h);
  VectorField mom;
  mom.x = std::move(out.hu);
  mom.y = std::move(out.hv);
  div_lf_momentum(u, ex_flux_, flux_ws_, mom);
  add_grad_w_source(h2_, Hbar, P.bathy, eps, 1.0, flux_ws_, mom);
  out.hu = std::move(mom.x);
  out.hv = std::move(mom.y);
  // k = -(div + source)
  for (Field* f : {&out.h, &out.hu, &out.hv}) {
    double* F = f->data();
    for (int j = 0; j < g.ny; ++j) {
      const std::ptrdiff_t row = g.index(0, j);
      for (int i = 0; i < g.nx; ++i) F[row + i] = -F[row + i];
    }
  }
  if (g.dim < 2) out.hv.fill(0.0);
}

void Integrator::step_explicit_reference(State& s, double dt) {
  const Problem& P = problem_;
  fill_ghosts(s, P.bc);
  // U1 = U + dt L(U)
  explicit_rhs(s, k_);
  ssp_blend(0.0, s.h, 1.0, s.h, dt, k_.h, u1_.h);
  ssp_blend(0.0, s.hu, 1.0, s.hu, dt, k_.hu, u1_.hu);
  ssp_blend(0.0, s.hv, 1.0, s.hv, dt, k_.hv, u1_.hv);
  check_state(u1_, "explicit stage 1");
  fill_ghosts(u1_, P.bc);
  // U2 = 3/4 U + 1/4 (U1 + dt L(U1))
  explicit_rhs(u1_, k_);
  ssp_blend(0.75, s.h, 0.25, u1_.h, dt, k_.h, tmp_.h);
  ssp_blend(0.75, s.hu, 0.25, u1_.hu, dt, k_.hu, tmp_.hu);
  ssp_blend(0.75, s.hv, 0.25, u1_.hv, dt, k_.hv, tmp_.hv);
  check_state(tmp_, "explicit stage 2");
  fill_ghosts(tmp_, P.bc);
  // U = 1/3 U + 2/3 (U2 + dt L(U2))
  explicit_rhs(tmp_, k_);
  ssp_blend(1.0 / 3.0, s.h, 2.0 / 3.0, tmp_.h, dt, k_.h, u1_.h);
  ssp_blend(1.0 / 3.0, s.hu, 2.0 / 3.0, tmp_.hu, dt, k_.hu, u1_.hu);
  ssp_blend(1.0 / 3.0, s.hv, 2.0 / 3.0, tmp_.hv, dt, k_.hv, u1_.hv);
  std::swap(s.h, u1_.h);
  std::swap(s.hu, u1_.hu);
  std::swap(s.hv, u1_.hv);
  check_state(s, "explicit step");
  fill_ghosts(s, P.bc);
}

void Integrator::step(State& s, double dt, Scheme scheme) {
  static const ButcherPair imex = ButcherPair::si_imex_443();
  switch (scheme) {
    case Scheme::imex3:
      step_imex(s, dt, imex);
      return;
    case Scheme::first_order:
      step_first_order(s, dt);
      return;
    case Scheme::explicit_ref:
      step_explicit_reference(s, dt);
      return;
  }
}

double Integrator::stable_dt(const State& s, Scheme scheme) const {
  const FlowParams& p = problem_.params;
  const double c = scheme == Scheme::explicit_ref ? p.full_speed_factor() : p.capped_speed_factor();
  return compute_dt(s, p, c);
}

State step_first_order(const State& s, const Problem& p, double dt) {
  Integrator integ(p);
  State out = s;
  integ.step_first_order(out, dt);
  return out;
}

State step_imex(const State& s, const Problem& p, double dt, const ButcherPair& tableau) {
  tableau.validate();
  Integrator integ(p);
  State out = s;
  integ.step_imex(out, dt, tableau);
  return out;
}

State step_explicit_reference(const State& s, const Problem& p, double dt) {
  Integrator integ(p);
  State out = s;
  integ.step_explicit_reference(out, dt);
  return out;
}

RunStats advance_to(State& s, double t_final, Integrator& integ, const AdvanceOptions& opt) {
  if (!(t_final >= 0.0)) throw ConfigError("t_final must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  RunStats st;
  fill_ghosts(s, integ.problem().bc);
  st.mass_initial = total_mass(s);

  std::vector<double> marks;
  for (double t : opt.snapshot_times)
    if (t >= 0.0 && t <= t_final) marks.push_back(t);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  std::size_t next = 0;
  const auto emit = [&](double t) {
    while (next < marks.size() && marks[next] <= t) {
      if (opt.on_snapshot) opt.on_snapshot(marks[next], s);
      ++next;
    }
  };
  emit(0.0);

  double t = 0.0;
  while (t < t_final) {
    if (st.steps >= opt.max_steps) throw SolverError("step limit exceeded");
    const double target = next < marks.size() ? std::min(marks[next], t_final) : t_final;
    double dt = opt.fixed_dt > 0.0 ? opt.fixed_dt : integ.stable_dt(s, opt.scheme);
    const double remaining = target - t;
    bool land = false;
    if (dt >= remaining * (1.0 - 1e-12)) {
      dt = remaining;
      land = true;
    }
    integ.step(s, dt, opt.scheme);
    ++st.steps;
    t = land ? target : t + dt;
    emit(t);
  }
  st.t = t;
  st.mass_final = total_mass(s);
  st.mass_drift = st.mass_initial != 0.0
                      ? std::abs(st.mass_final - st.mass_initial) / std::abs(st.mass_initial)
                      : std::abs(st.mass_final);
  interior_extrema(s.h, st.min_h, st.max_h);
  st.solver = integ.solver_stats();
  st.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return st;
}

}  // namespace swe
