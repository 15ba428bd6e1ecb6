#pragma once

#include "swe/state.hpp"

namespace swe {

/// Viscosity configuration of the Lax-Friedrichs splittings.
struct FluxOptions {
  /// Acoustic factor c in alpha = |u| + c sqrt(h).
  double speed_factor = 1.0;
  AlphaMode alpha = AlphaMode::local;
  /// Linear WENO weights in the mass flux (momentum flux unaffected).
  bool linear_mass_weights = false;
};

/// Semi-implicit defaults: c = min(1, 1/eps), linear mass weights when eps < 1.
FluxOptions semi_implicit_flux_options(double eps, AlphaMode mode = AlphaMode::local);

/// Resolves MassWeights for a viscosity factor c at Froude number eps.
bool use_linear_mass_weights(MassWeights w, double speed_factor, double eps);

/// Vector-valued field pair; y is empty-valued (zeros) in 1D.
struct VectorField {
  Field x;
  Field y;
  VectorField() = default;
  explicit VectorField(const Grid& g) : x(g), y(g) {}
};

/// Scratch buffers reused between evaluations on the same grid.
class FluxWorkspace {
 public:
  FluxWorkspace() = default;
  explicit FluxWorkspace(const Grid& g);

  const Grid& grid() const { return grid_; }

  // Public on purpose: the operators below write into these freely.
  Field flux_a;
  Field flux_b;
  Field speed;
  Field work_a;
  Field work_b;

 private:
  Grid grid_{};
};

/// Conservative flux difference approximating div(h u). The interface flux
/// is the sum of left- and right-biased WENO5 reconstructions of
/// (hu +- alpha H) / 2, so the numerical viscosity acts on the surface
/// level H rather than on h. Requires filled ghosts in s and H.
/// Writes interior points of `out`.
void div_lf_mass(const State& s, const Field& H, const FluxOptions& opt, FluxWorkspace& ws,
                 Field& out);
Field div_lf_mass(const State& s, const Bathymetry& b, double eps);

/// Conservative flux difference approximating div(hu (x) hu / h), per
/// momentum component, with viscosity on hu (hv).
void div_lf_momentum(const State& s, const FluxOptions& opt, FluxWorkspace& ws, VectorField& out);
VectorField div_lf_momentum(const State& s, double eps);

/// Well-balanced approximation of h grad(H2):
///   grad_W(Hbar H2 + eps^2 H2^2 / 2 - H2 b) + H2 grad_W(b).
/// Both gradients are zero-viscosity WENO5 flux differences; the weights
/// computed for the composite term are reused for b at every interface and
/// split sign. Requires filled ghosts in H2. Writes interior points.
void grad_w_source(const Field& H2, double Hbar, const Bathymetry& b, double eps,
                   FluxWorkspace& ws, VectorField& out);
VectorField grad_w_source(const Field& H2, double Hbar, const Bathymetry& b, double eps);

/// Adds `scale` times the grad_w_source result to `out` (interior only),
/// without a temporary.
void add_grad_w_source(const Field& H2, double Hbar, const Bathymetry& b, double eps,
                       double scale, FluxWorkspace& ws, VectorField& out);

}  // namespace swe
