#include "swe/weno.hpp"

#include <cmath>
#include <stdexcept>

namespace swe {

Reconstruction weno5_reconstruct(std::span<const double, 5> v) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::domain_error("non-finite value in WENO stencil");
  Reconstruction r;
  r.value = weno5(v[0], v[1], v[2], v[3], v[4], &r.weights);
  return r;
}

double apply_weights(const WenoWeights& w, std::span<const double, 5> v) {
  if (w.w0 < 0.0 || w.w1 < 0.0 || w.w2 < 0.0 || std::abs(w.w0 + w.w1 + w.w2 - 1.0) > 1e-12)
    throw std::domain_error("WENO weights must be non-negative and sum to one");
  return weno5_with(w, v[0], v[1], v[2], v[3], v[4]);
}

SplitPair lf_split(std::span<const double, 6> f, std::span<const double, 6> v, double alpha) {
  SplitPair s;
  for (int m = 0; m < 5; ++m) {
    s.plus[m] = 0.5 * (f[m] + alpha * v[m]);
    s.minus[m] = 0.5 * (f[5 - m] - alpha * v[5 - m]);
  }
  return s;
}

double interface_flux(const SplitPair& s) {
  const auto& p = s.plus;
  const auto& m = s.minus;
  return weno5(p[0], p[1], p[2], p[3], p[4]) + weno5(m[0], m[1], m[2], m[3], m[4]);
}

}  // namespace swe
