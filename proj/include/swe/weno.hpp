#pragma once

#include <array>
#include <span>

namespace swe {

/// Nonlinear weights of the three candidate substencils of one WENO5
/// reconstruction. Non-negative and summing to one.
struct WenoWeights {
  double w0 = 0.1;
  double w1 = 0.6;
  double w2 = 0.3;
};

inline constexpr WenoWeights kLinearWeights{0.1, 0.6, 0.3};
/// Regularization in the weight denominator (Jiang-Shu, p = 2).
inline constexpr double kWenoEpsilon = 1e-6;

namespace detail {

struct Candidates {
  double q0, q1, q2;
};

// Interface values at i+1/2 of the three 3-point substencil parabolas.
inline Candidates candidates(double vm2, double vm1, double v0, double vp1, double vp2) {
  return {(2.0 * vm2 - 7.0 * vm1 + 11.0 * v0) * (1.0 / 6.0),
          (-vm1 + 5.0 * v0 + 2.0 * vp1) * (1.0 / 6.0),
          (2.0 * v0 + 5.0 * vp1 - vp2) * (1.0 / 6.0)};
}

inline WenoWeights nonlinear_weights(double vm2, double vm1, double v0, double vp1, double vp2) {
  const double d0 = vm2 - 2.0 * vm1 + v0;
  const double e0 = vm2 - 4.0 * vm1 + 3.0 * v0;
  const double d1 = vm1 - 2.0 * v0 + vp1;
  const double e1 = vm1 - vp1;
  const double d2 = v0 - 2.0 * vp1 + vp2;
  const double e2 = 3.0 * v0 - 4.0 * vp1 + vp2;
  const double b0 = (13.0 / 12.0) * d0 * d0 + 0.25 * e0 * e0;
  const double b1 = (13.0 / 12.0) * d1 * d1 + 0.25 * e1 * e1;
  const double b2 = (13.0 / 12.0) * d2 * d2 + 0.25 * e2 * e2;
  const double s0 = kWenoEpsilon + b0;
  const double s1 = kWenoEpsilon + b1;
  const double s2 = kWenoEpsilon + b2;
  // alpha_k = d_k / s_k^2, scaled by (s0 s1 s2)^2 to need one division
  const double t0 = s0 * s0;
  const double t1 = s1 * s1;
  const double t2 = s2 * s2;
  const double a0 = 0.1 * (t1 * t2);
  const double a1 = 0.6 * (t0 * t2);
  const double a2 = 0.3 * (t0 * t1);
  const double inv = 1.0 / (a0 + a1 + a2);
  return {a0 * inv, a1 * inv, a2 * inv};
}

}  // namespace detail

/// Left-biased WENO5 value at the right edge of the center point of
/// (v_{i-2}, ..., v_{i+2}); optionally reports the weights used.
inline double weno5(double vm2, double vm1, double v0, double vp1, double vp2,
                    WenoWeights* weights = nullptr) {
  const WenoWeights w = detail::nonlinear_weights(vm2, vm1, v0, vp1, vp2);
  const detail::Candidates q = detail::candidates(vm2, vm1, v0, vp1, vp2);
  if (weights) *weights = w;
  return w.w0 * q.q0 + w.w1 * q.q1 + w.w2 * q.q2;
}

/// Combines the three substencil values of (v_{i-2}, ..., v_{i+2}) with
/// weights obtained elsewhere.
inline double weno5_with(const WenoWeights& w, double vm2, double vm1, double v0, double vp1,
                         double vp2) {
  const detail::Candidates q = detail::candidates(vm2, vm1, v0, vp1, vp2);
  return w.w0 * q.q0 + w.w1 * q.q1 + w.w2 * q.q2;
}

struct Reconstruction {
  double value = 0.0;
  WenoWeights weights{};
};

/// Checked entry point. Throws std::domain_error on non-finite input.
Reconstruction weno5_reconstruct(std::span<const double, 5> v);

/// Throws std::domain_error unless the weights are non-negative and sum to
/// one within 1e-12.
double apply_weights(const WenoWeights& w, std::span<const double, 5> v);

/// Lax-Friedrichs split values around interface i+1/2.
/// plus holds f^+ on (i-2..i+2), minus holds f^- on (i+3..i-1), i.e. already
/// mirrored so both reconstruct through weno5().
struct SplitPair {
  std::array<double, 5> plus{};
  std::array<double, 5> minus{};
};

/// Splits f^{+-} = (f +- alpha v) / 2 from the six values f, v on
/// (i-2, ..., i+3).
SplitPair lf_split(std::span<const double, 6> f, std::span<const double, 6> v, double alpha);

/// Interface flux: WENO5 of the plus part plus WENO5 of the minus part.
double interface_flux(const SplitPair& s);

}  // namespace swe
