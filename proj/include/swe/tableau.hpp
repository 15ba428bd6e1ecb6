#pragma once

#include <string>
#include <vector>

namespace swe {

/// Double Butcher tableau (Atil, btil, ctil | A, b, c) of a partitioned
/// IMEX Runge-Kutta method. Matrices are stored row-major, s x s.
struct ButcherPair {
  std::string name;
  int s = 0;
  std::vector<double> Atil;
  std::vector<double> btil;
  std::vector<double> ctil;
  std::vector<double> A;
  std::vector<double> b;
  std::vector<double> c;

  double atil(int i, int j) const { return Atil[static_cast<std::size_t>(i * s + j)]; }
  double a(int i, int j) const { return A[static_cast<std::size_t>(i * s + j)]; }

  /// U_E = U^n, U_I = U^{n+1}.
  static ButcherPair first_order();
  /// Third order stiffly accurate SI-IMEX(4,4,3).
  static ButcherPair si_imex_443();

  /// Throws ConfigError unless Atil is strictly lower triangular, A lower
  /// triangular with positive diagonal, the abscissae match the row sums to
  /// `tol`, and b equals the last row of A.
  void validate(double tol = 1e-12) const;
};

inline constexpr double kImexGamma = 0.435866521508;

}  // namespace swe
