#include "swe/boundary.hpp"

#include <algorithm>

namespace swe {

namespace {

int wrap(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

enum class Closure { periodic, copy, fixed, mirror };

Closure closure_for(BoundaryKind k, bool mirror_nonperiodic) {
  if (k == BoundaryKind::periodic) return Closure::periodic;
  if (mirror_nonperiodic) return Closure::mirror;
  return k == BoundaryKind::outflow ? Closure::copy : Closure::fixed;
}

// Source index along one axis for ghost index `i` (outside [0, n)), or -1
// when the value comes from the fixed field.
int source_index(int i, int n, Closure c) {
  switch (c) {
    case Closure::periodic:
      return wrap(i, n);
    case Closure::copy:
      return i < 0 ? 0 : n - 1;
    case Closure::mirror:
      // q(-k) = q(k-1), q(n-1+k) = q(n-k); deep ghosts clamp on tiny grids
      return i < 0 ? std::min(-i - 1, n - 1) : std::max(2 * n - 1 - i, 0);
    case Closure::fixed:
      return -1;
  }
  return -1;
}

void fill_impl(Field& f, const BoundarySpec& bc, const Field* fixed, bool mirror) {
  const Grid& g = f.grid();
  const Closure cl = closure_for(bc.left, mirror);
  const Closure cr = closure_for(bc.right, mirror);
  if ((cl == Closure::fixed || cr == Closure::fixed) && fixed == nullptr)
    throw ConfigError("inflow boundary requires stored initial values");

  for (int j = 0; j < g.ny; ++j) {
    for (int k = 1; k <= g.ghost; ++k) {
      const int il = -k;
      const int ir = g.nx - 1 + k;
      const int sl = source_index(il, g.nx, cl);
      const int sr = source_index(ir, g.nx, cr);
      f(il, j) = sl >= 0 ? f(sl, j) : (*fixed)(il, j);
      f(ir, j) = sr >= 0 ? f(sr, j) : (*fixed)(ir, j);
    }
  }
  if (g.dim < 2) return;

  const Closure cb = closure_for(bc.bottom, mirror);
  const Closure ct = closure_for(bc.top, mirror);
  if ((cb == Closure::fixed || ct == Closure::fixed) && fixed == nullptr)
    throw ConfigError("inflow boundary requires stored initial values");
  for (int k = 1; k <= g.ghost; ++k) {
    const int jb = -k;
    const int jt = g.ny - 1 + k;
    const int sb = source_index(jb, g.ny, cb);
    const int st = source_index(jt, g.ny, ct);
    for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
      f(i, jb) = sb >= 0 ? f(i, sb) : (*fixed)(i, jb);
      f(i, jt) = st >= 0 ? f(i, st) : (*fixed)(i, jt);
    }
  }
}

}  // namespace

void BoundarySpec::validate() const {
  const bool px = left == BoundaryKind::periodic;
  const bool qx = right == BoundaryKind::periodic;
  const bool py = bottom == BoundaryKind::periodic;
  const bool qy = top == BoundaryKind::periodic;
  if (px != qx) throw ConfigError("periodic x boundary must be paired on both sides");
  if (py != qy) throw ConfigError("periodic y boundary must be paired on both sides");
}

void fill_ghosts(Field& f, const BoundarySpec& bc, const Field* fixed) {
  bc.validate();
  fill_impl(f, bc, fixed, false);
}

void fill_mirror_ghosts(Field& f, const BoundarySpec& bc) {
  bc.validate();
  fill_impl(f, bc, nullptr, true);
}

Boundary::Boundary(BoundarySpec spec, const State& initial) : spec_(spec) {
  spec_.validate();
  if (spec_.any_inflow()) fixed_ = initial;
}

Boundary::Boundary(BoundarySpec spec) : spec_(spec) {
  spec_.validate();
  if (spec_.any_inflow()) throw ConfigError("inflow boundary requires stored initial values");
}

void fill_ghosts(State& s, const Boundary& bc) {
  const State* fx = bc.fixed();
  fill_ghosts(s.h, bc.spec(), fx ? &fx->h : nullptr);
  fill_ghosts(s.hu, bc.spec(), fx ? &fx->hu : nullptr);
  if (s.grid().dim == 2) fill_ghosts(s.hv, bc.spec(), fx ? &fx->hv : nullptr);
}

}  // namespace swe
