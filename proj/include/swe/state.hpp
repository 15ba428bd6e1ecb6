#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "swe/grid.hpp"

namespace swe {

/// Raised for invalid inputs: bad parameters, malformed boundary specs,
/// unknown case names.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a solve or a time step cannot produce a valid state.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conservative unknowns (h, hu, hv). hv is allocated in 1D as well and
/// stays zero there.
struct State {
  Field h;
  Field hu;
  Field hv;

  State() = default;
  explicit State(const Grid& g) : h(g), hu(g), hv(g) {}

  const Grid& grid() const { return h.grid(); }
};

/// Time-independent bottom elevation, ghost values included.
class Bathymetry {
 public:
  Bathymetry() = default;
  explicit Bathymetry(Field b) : b_(std::move(b)) {}

  const Field& field() const { return b_; }
  const Grid& grid() const { return b_.grid(); }
  double operator()(int i, int j = 0) const { return b_(i, j); }

 private:
  Field b_;
};

struct FlowParams {
  double eps = 1.0;  ///< Froude number
  double cfl = 0.2;
  bool accuracy_mode = false;  ///< dt ~ dx^{5/3}

  /// min(1, 1/eps): caps the acoustic part of the viscosity and the CFL speed.
  double capped_speed_factor() const { return std::min(1.0, 1.0 / eps); }
  /// 1/eps: the true gravity-wave scaling used by the explicit scheme.
  double full_speed_factor() const { return 1.0 / eps; }

  void validate() const {
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  }
};

enum class StencilOrder { fourth, second };
enum class AlphaMode { local, global };
enum class PreconditionerKind { spectral, jacobi };
/// Weights of the mass-flux reconstruction. automatic: linear whenever the
/// viscosity factor is capped below the acoustic one, nonlinear otherwise.
enum class MassWeights { automatic, nonlinear, linear };

/// Discretization switches. Defaults reproduce the high-order scheme.
struct NumericsOptions {
  StencilOrder stencil = StencilOrder::fourth;
  AlphaMode alpha = AlphaMode::local;
  PreconditionerKind preconditioner = PreconditionerKind::spectral;
  MassWeights mass_weights = MassWeights::automatic;
  double solver_tol = 1e-12;
};

}  // namespace swe
