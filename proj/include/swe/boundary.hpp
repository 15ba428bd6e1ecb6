#pragma once

#include <optional>

#include "swe/state.hpp"

namespace swe {

enum class BoundaryKind {
  periodic,
  outflow,  ///< zero-gradient extrapolation of the nearest interior value
  inflow,   ///< ghost values pinned to the stored initial values
};

/// One condition per side. In 1D only left/right are used.
struct BoundarySpec {
  BoundaryKind left = BoundaryKind::periodic;
  BoundaryKind right = BoundaryKind::periodic;
  BoundaryKind bottom = BoundaryKind::periodic;
  BoundaryKind top = BoundaryKind::periodic;

  static BoundarySpec all(BoundaryKind k) { return {k, k, k, k}; }
  bool periodic_x() const { return left == BoundaryKind::periodic; }
  bool periodic_y() const { return bottom == BoundaryKind::periodic; }
  bool any_inflow() const {
    return left == BoundaryKind::inflow || right == BoundaryKind::inflow ||
           bottom == BoundaryKind::inflow || top == BoundaryKind::inflow;
  }

  /// Throws ConfigError when a periodic side is not paired with its opposite.
  void validate() const;

  bool operator==(const BoundarySpec&) const = default;
};

/// Fills the ghost layer of a scalar field. x sides are filled on interior
/// rows first, then y sides across the full padded width, so corners come
/// out consistent. `fixed` supplies values for inflow sides.
void fill_ghosts(Field& f, const BoundarySpec& bc, const Field* fixed = nullptr);

/// Closure for the surface perturbation H2: periodic sides wrap, every other
/// side mirrors the interior (homogeneous Neumann).
void fill_mirror_ghosts(Field& f, const BoundarySpec& bc);

/// Boundary conditions together with the stored inflow values.
class Boundary {
 public:
  Boundary() = default;
  /// `initial` must already hold valid ghost values on inflow sides.
  Boundary(BoundarySpec spec, const State& initial);
  explicit Boundary(BoundarySpec spec);

  const BoundarySpec& spec() const { return spec_; }
  const State* fixed() const { return fixed_ ? &*fixed_ : nullptr; }

 private:
  BoundarySpec spec_{};
  std::optional<State> fixed_;
};

void fill_ghosts(State& s, const Boundary& bc);

}  // namespace swe
