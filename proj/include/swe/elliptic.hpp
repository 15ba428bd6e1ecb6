#pragma once

#include <memory>

#include "swe/boundary.hpp"
#include "swe/central.hpp"
#include "swe/flux.hpp"

namespace swe {

/// eps2 v - tau^2 div(coeff grad v) = rhs for the surface perturbation.
struct HelmholtzSystem {
  double eps2 = 1.0;
  double tau = 0.0;
  Field coeff;  ///< h_E, ghosts filled
  BoundarySpec bc{};
  double tol = 1e-12;
  int max_iter = 0;  ///< 0 selects 500 * N^(1/dim), capped at 1e5
  StencilOrder stencil = StencilOrder::fourth;
  PreconditionerKind preconditioner = PreconditionerKind::spectral;

  void validate() const;
};

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;  ///< final true relative residual
  bool used_fallback = false;
};

/// Fast inverse of the constant-coefficient operator
/// eps2 - tau^2 abar (D_xx + D_yy) with cosine transforms on mirrored sides
/// and real Fourier transforms on periodic ones.
class SpectralPreconditioner {
 public:
  SpectralPreconditioner(const Grid& g, const BoundarySpec& bc, StencilOrder order);
  ~SpectralPreconditioner();
  SpectralPreconditioner(const SpectralPreconditioner&) = delete;
  SpectralPreconditioner& operator=(const SpectralPreconditioner&) = delete;

  void set_coefficients(double eps2, double tau2_abar);
  /// z = P^{-1} r on interior points.
  void apply(const Field& r, Field& z);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reusable matrix-free Krylov solver for one grid and boundary closure.
class HelmholtzSolver {
 public:
  HelmholtzSolver(const Grid& g, const BoundarySpec& bc);
  ~HelmholtzSolver();
  HelmholtzSolver(HelmholtzSolver&&) noexcept;
  HelmholtzSolver& operator=(HelmholtzSolver&&) noexcept;

  /// x holds the initial guess on entry and the solution, ghosts filled,
  /// on exit. Throws SolverError when the residual contract cannot be met.
  SolveReport solve(const HelmholtzSystem& sys, const Field& rhs, Field& x);

  /// Operator application; v must have ghosts filled.
  void apply(const HelmholtzSystem& sys, const Field& v, Field& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Fills v's ghosts per sys.bc (mirror closure off periodic sides), then
/// applies the operator.
Field apply_operator(const HelmholtzSystem& sys, const Field& v);
Field solve(const HelmholtzSystem& sys, const Field& rhs, SolveReport* report = nullptr);

/// H^n - Hbar^n - dt (div_LF(hu)^n - dt div2_C(hu hu / h)^n).
/// Requires filled ghosts in s and b.
Field build_rhs_first_order(const State& s, const Bathymetry& b, double dt, double eps,
                            const NumericsOptions& opt = {});

/// h_* + b - Hbar_E - a_ii dt (div_LF(hu)_* - a_ii dt div2_C(hu hu / h)_E),
/// Hbar_E the spatial mean of h_E + b.
Field build_rhs_stage(const State& star, const State& explicit_state, const Bathymetry& b,
                      double a_ii, double dt, double eps, const NumericsOptions& opt = {});

/// Workspace form used by the integrator. `star` supplies h_* and (hu)_*,
/// `tensor_state` the explicit stage state; Hbar is passed in.
struct RhsWorkspace {
  RhsWorkspace() = default;
  explicit RhsWorkspace(const Grid& g) : flux(g), central(g), H(g), div(g), tensor(g) {}
  FluxWorkspace flux;
  CentralWorkspace central;
  Field H;
  Field div;
  Field tensor;
};
void build_rhs(const State& star, const State& tensor_state, const Bathymetry& b, double Hbar,
               double tau, double eps, const NumericsOptions& opt, RhsWorkspace& ws, Field& out);

}  // namespace swe
