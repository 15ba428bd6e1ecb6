#include "swe/tableau.hpp"

#include <cmath>
#include <sstream>

#include "swe/state.hpp"

namespace swe {

ButcherPair ButcherPair::first_order() {
  ButcherPair t;
  t.name = "first-order";
  t.s = 1;
  t.Atil = {0.0};
  t.btil = {1.0};
  t.ctil = {0.0};
  t.A = {1.0};
  t.b = {1.0};
  t.c = {1.0};
  return t;
}

ButcherPair ButcherPair::si_imex_443() {
  constexpr double g = kImexGamma;
  ButcherPair t;
  t.name = "si-imex-443";
  t.s = 4;
  // clang-format off
  t.Atil = {0.0,            0.0,            0.0,             0.0,
            g,              0.0,            0.0,             0.0,
            1.243893189483, -0.525959928729, 0.0,            0.0,
            0.630412558153, 0.786580740199, -0.416993298352, 0.0};
  t.A    = {g,   0.0,            0.0,             0.0,
            0.0, g,              0.0,             0.0,
            0.0, 0.282066739245, g,               0.0,
            0.0, 1.208496649176, -0.644363170684, g};
  // clang-format on
  t.btil = {0.0, 1.208496649176, -0.644363170684, g};
  t.b = {0.0, 1.208496649176, -0.644363170684, g};
  t.ctil = {0.0, g, 0.717933260754, 1.0};
  t.c = {g, g, 0.717933260754, 1.0};
  return t;
}

void ButcherPair::validate(double tol) const {
  const auto fail = [&](const std::string& what) {
    throw ConfigError("tableau " + name + ": " + what);
  };
  const std::size_t n = static_cast<std::size_t>(s);
  if (s < 1 || Atil.size() != n * n || A.size() != n * n || btil.size() != n || b.size() != n ||
      ctil.size() != n || c.size() != n)
    fail("inconsistent sizes");
  for (int i = 0; i < s; ++i) {
    double rt = 0.0;
    double ri = 0.0;
    for (int j = 0; j < s; ++j) {
      if (j >= i && atil(i, j) != 0.0) fail("explicit part is not strictly lower triangular");
      if (j > i && a(i, j) != 0.0) fail("implicit part is not lower triangular");
      rt += atil(i, j);
      ri += a(i, j);
    }
    if (!(a(i, i) > 0.0)) fail("implicit diagonal must be positive");
    if (std::abs(rt - ctil[static_cast<std::size_t>(i)]) > tol) {
      std::ostringstream m;
      m << "explicit row " << i << " sums to " << rt;
      fail(m.str());
    }
    if (std::abs(ri - c[static_cast<std::size_t>(i)]) > tol) {
      std::ostringstream m;
      m << "implicit row " << i << " sums to " << ri;
      fail(m.str());
    }
  }
  for (int j = 0; j < s; ++j)
    if (std::abs(b[static_cast<std::size_t>(j)] - a(s - 1, j)) > tol)
      fail("not stiffly accurate");
}

}  // namespace swe
