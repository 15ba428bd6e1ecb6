#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "support.hpp"
#include "swe/reductions.hpp"

using namespace swe;
using namespace swe::testing;

TEST_CASE("grid geometry") {
  const Grid g = Grid::line(10, -1.0, 1.0);
  CHECK(g.dx == doctest::Approx(0.2));
  CHECK(g.x(0) == doctest::Approx(-0.9));
  CHECK(g.ghost >= 3);
  const Grid p = Grid::plane(4, 2, 0.0, 2.0, 0.0, 1.0);
  CHECK(p.dy == 0.5);
  CHECK(p.y(1) == 0.75);
  CHECK(p.storage_size() == static_cast<std::size_t>((4 + 6) * (2 + 6)));
  CHECK_THROWS_AS(Grid::line(0, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid::line(4, 0.0, 1.0, 2), ConfigError);
  CHECK_THROWS_AS(Grid::line(4, 1.0, 1.0), ConfigError);
}

TEST_CASE("periodic fill wraps by index") {
  const Grid g = Grid::line(4, 0.0, 1.0);
  Field f(g);
  f.set_interior(std::vector<double>{1, 2, 3, 4});
  fill_ghosts(f, BoundarySpec{});
  CHECK(f(-1) == 4);
  CHECK(f(-2) == 3);
  CHECK(f(-3) == 2);
  CHECK(f(4) == 1);
  CHECK(f(5) == 2);
  CHECK(f(6) == 3);
}

TEST_CASE("outflow fill copies the nearest interior value") {
  const Grid g = Grid::line(4, 0.0, 1.0);
  Field f(g);
  f.set_interior(std::vector<double>{1, 2, 3, 4});
  fill_ghosts(f, BoundarySpec::all(BoundaryKind::outflow));
  for (int k = 1; k <= g.ghost; ++k) {
    CHECK(f(-k) == 1);
    CHECK(f(3 + k) == 4);
  }
}

TEST_CASE("inflow fill pins the stored values") {
  const Grid g = Grid::line(4, 0.0, 1.0);
  Field fixed(g, 20.0);
  Field f(g);
  f.set_interior(std::vector<double>{1, 2, 3, 4});
  BoundarySpec bc = BoundarySpec::all(BoundaryKind::outflow);
  bc.left = BoundaryKind::inflow;
  fill_ghosts(f, bc, &fixed);
  for (int k = 1; k <= g.ghost; ++k) {
    CHECK(f(-k) == 20.0);
    CHECK(f(3 + k) == 4.0);
  }
}

TEST_CASE("unpaired periodic sides are rejected") {
  BoundarySpec bc;
  bc.right = BoundaryKind::outflow;
  CHECK_THROWS_AS(bc.validate(), ConfigError);
  Field f(Grid::line(4, 0.0, 1.0));
  CHECK_THROWS_AS(fill_ghosts(f, bc), ConfigError);
}

TEST_CASE("fill_ghosts is idempotent") {
  std::mt19937_64 rng(7);
  const Grid g = Grid::plane(7, 5, 0.0, 1.0, 0.0, 1.0);
  Field fixed = random_field(g, rng, 1.0, 2.0);
  const BoundarySpec specs[] = {
      BoundarySpec{},
      BoundarySpec::all(BoundaryKind::outflow),
      {BoundaryKind::inflow, BoundaryKind::outflow, BoundaryKind::periodic,
       BoundaryKind::periodic},
      {BoundaryKind::periodic, BoundaryKind::periodic, BoundaryKind::outflow,
       BoundaryKind::inflow},
  };
  for (const auto& bc : specs) {
    Field f = random_field(g, rng, -1.0, 1.0);
    fill_ghosts(f, bc, &fixed);
    Field once = f;
    fill_ghosts(f, bc, &fixed);
    CHECK(std::equal(f.values().begin(), f.values().end(), once.values().begin()));
  }
}

TEST_CASE("2D periodic corners wrap diagonally") {
  const Grid g = Grid::plane(4, 3, 0.0, 1.0, 0.0, 1.0);
  Field f(g);
  for_interior(g, [&](int i, int j) { f(i, j) = 10 * j + i; });
  fill_ghosts(f, BoundarySpec{});
  CHECK(f(-1, -1) == f(3, 2));
  CHECK(f(4, 3) == f(0, 0));
  CHECK(f(-2, 4) == f(2, 1));
}

TEST_CASE("mirror closure for the surface perturbation") {
  const Grid g = Grid::line(4, 0.0, 1.0);
  Field f(g);
  f.set_interior(std::vector<double>{1, 2, 3, 4});
  fill_mirror_ghosts(f, BoundarySpec::all(BoundaryKind::outflow));
  CHECK(f(-1) == 1);
  CHECK(f(-2) == 2);
  CHECK(f(-3) == 3);
  CHECK(f(4) == 4);
  CHECK(f(5) == 3);
  fill_mirror_ghosts(f, BoundarySpec{});
  CHECK(f(-1) == 4);
  CHECK(f(4) == 1);
}

TEST_CASE("surface level") {
  const Grid g = Grid::line(2, 0.0, 1.0);
  State s(g);
  Field b(g);
  s.h.set_interior(std::vector<double>{2, 3});
  b.set_interior(std::vector<double>{1, 0});
  const Field H = surface_level(s, Bathymetry(b));
  CHECK(H(0) == 3);
  CHECK(H(1) == 3);

  std::mt19937_64 rng(3);
  const Grid g2 = Grid::line(16, 0.0, 1.0);
  const Field bb = random_field(g2, rng, 0.0, 0.5);
  State lake(g2);
  for_interior(g2, [&](int i, int j) { lake.h(i, j) = 1.0 - bb(i, j); });
  const Field H1 = surface_level(lake, Bathymetry(bb));
  for_interior(g2, [&](int i, int j) {
    CHECK(H1(i, j) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(H1(i, j) - bb(i, j) == lake.h(i, j));
  });
}

TEST_CASE("surface level minus bathymetry recovers h") {
  std::mt19937_64 rng(11);
  const Grid g = Grid::line(64, 0.0, 1.0);
  State s(g);
  s.h = random_field(g, rng, 0.5, 20.0);
  Field b = random_field(g, rng, -5.0, 5.0);
  const Field H = surface_level(s, Bathymetry(b));
  for_interior(g, [&](int i, int j) {
    const double scale = std::max(std::abs(H(i, j)), std::abs(b(i, j)));
    CHECK(std::abs(H(i, j) - b(i, j) - s.h(i, j)) <= 2.0 * std::numeric_limits<double>::epsilon() * scale);
  });

  // dyadic data: every sum is representable
  auto dyadic = [](double v) { return std::ldexp(std::round(std::ldexp(v, 20)), -20); };
  for_interior(g, [&](int i, int j) {
    s.h(i, j) = dyadic(s.h(i, j));
    b(i, j) = dyadic(b(i, j));
  });
  const Field Hd = surface_level(s, Bathymetry(b));
  for_interior(g, [&](int i, int j) { CHECK(Hd(i, j) - b(i, j) == s.h(i, j)); });
}

TEST_CASE("spatial mean") {
  const Grid g = Grid::line(2, 0.0, 1.0);
  Field f(g);
  f.set_interior(std::vector<double>{0, 1});
  CHECK(spatial_mean(f) == 0.5);
  CHECK(spatial_mean(Field(Grid::plane(3, 5, 0, 1, 0, 1), 2.5)) == doctest::Approx(2.5));
  const Grid g64 = Grid::line(64, 0.0, 1.0);
  const Field s = sample(g64, [](double x, double) { return 10.0 + std::sin(2 * kPi * x); });
  CHECK(std::abs(spatial_mean(s) - 10.0) < 1e-14);
}

TEST_CASE("mean removal leaves round-off") {
  std::mt19937_64 rng(5);
  const Grid g = Grid::plane(17, 9, 0.0, 1.0, 0.0, 1.0);
  Field f = random_field(g, rng, -3.0, 7.0);
  const double m = spatial_mean(f);
  for (auto& v : f.values()) v -= m;
  CHECK(std::abs(spatial_mean(f)) <= 1e-14 * 7.0);
}

namespace {
State uniform(const Grid& g, double h, double u, double v = 0.0) {
  State s(g);
  s.h.fill(h);
  s.hu.fill(h * u);
  s.hv.fill(h * v);
  return s;
}
}  // namespace

TEST_CASE("max wave speed") {
  const Grid g = Grid::line(8, 0.0, 1.0);
  FlowParams p;
  p.eps = 0.5;
  CHECK(max_wave_speed(uniform(g, 1.0, 2.0), p.capped_speed_factor()).lambda ==
        doctest::Approx(3.0));
  p.eps = 2.0;
  CHECK(max_wave_speed(uniform(g, 4.0, 0.0), p.capped_speed_factor()).lambda ==
        doctest::Approx(1.0));
  p.eps = 1e-4;
  CHECK(max_wave_speed(uniform(g, 1.0, 1.0), p.capped_speed_factor()).lambda ==
        doctest::Approx(2.0));
  CHECK(max_wave_speed(uniform(g, 1.0, 1.0), p.full_speed_factor()).lambda ==
        doctest::Approx(1.0 + 1e4));

  const Grid g2 = Grid::plane(4, 4, 0, 1, 0, 1);
  const WaveSpeeds w = max_wave_speed(uniform(g2, 1.0, 3.0, 4.0), 1.0);
  CHECK(w.lambda == doctest::Approx(6.0));
  CHECK(w.alpha_x == doctest::Approx(4.0));
  CHECK(w.alpha_y == doctest::Approx(5.0));

  State dry = uniform(g, 1.0, 0.0);
  dry.h(3) = 0.0;
  CHECK_THROWS_AS(max_wave_speed(dry, 1.0), SolverError);
}

TEST_CASE("max wave speed is a pure reduction and monotone") {
  std::mt19937_64 rng(9);
  const Grid g = Grid::line(40, 0.0, 1.0);
  State s(g);
  s.h = random_field(g, rng, 0.5, 3.0);
  s.hu = random_field(g, rng, -2.0, 2.0);
  State r = s;
  std::vector<double> h = s.h.interior(), hu = s.hu.interior();
  std::vector<std::size_t> perm(h.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> ph(h.size()), phu(h.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    ph[k] = h[perm[k]];
    phu[k] = hu[perm[k]];
  }
  r.h.set_interior(ph);
  r.hu.set_interior(phu);
  CHECK(max_wave_speed(s, 0.7).lambda == max_wave_speed(r, 0.7).lambda);

  State faster = s;
  for (auto& v : faster.hu.values()) v *= 1.5;
  State deeper = s;
  for_interior(g, [&](int i, int j) {
    const double u = s.hu(i, j) / s.h(i, j);
    deeper.h(i, j) = s.h(i, j) * 1.2;
    deeper.hu(i, j) = u * deeper.h(i, j);
  });
  CHECK(max_wave_speed(faster, 0.7).lambda >= max_wave_speed(s, 0.7).lambda);
  CHECK(max_wave_speed(deeper, 0.7).lambda >= max_wave_speed(s, 0.7).lambda);
}

TEST_CASE("CFL time step") {
  FlowParams p;
  p.cfl = 0.2;
  p.eps = 1.0;
  // u = 3, h = 1: lambda = 4
  const State s = uniform(Grid::line(100, 0.0, 1.0), 1.0, 3.0);
  CHECK(compute_dt(s, p) == doctest::Approx(5e-4));

  p.accuracy_mode = true;
  const State s2 = uniform(Grid::line(10, 0.0, 1.0), 1.0, 1.0);
  const double oracle = 0.2 * std::exp(5.0 / 3.0 * std::log(0.1)) / 2.0;
  CHECK(oracle == doctest::Approx(2.154e-3).epsilon(1e-3));
  CHECK(compute_dt(s2, p) == doctest::Approx(oracle).epsilon(1e-13));

  // still water at depth 10 with eps = 1/sqrt(g): lambda = sqrt(10)
  FlowParams q;
  q.eps = 1.0 / std::sqrt(9.812);
  const State lake = uniform(Grid::line(100, 0.0, 1.0), 10.0, 0.0);
  CHECK(max_wave_speed(lake, q.capped_speed_factor()).lambda ==
        doctest::Approx(std::sqrt(10.0)));

  // quiescent fallback
  const State zero_speed = uniform(Grid::line(50, 0.0, 1.0), 1e-30, 0.0);
  CHECK(compute_dt(zero_speed, p) == doctest::Approx(0.2 * 0.02));
}

TEST_CASE("flow parameter validation") {
  FlowParams p;
  p.eps = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.eps = 1.0;
  p.cfl = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.cfl = 1.0;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("total mass") {
  for (int n : {3, 10, 77}) CHECK(total_mass(uniform(Grid::line(n, 0.0, 1.0), 1.0, 0.0)) ==
                                  doctest::Approx(1.0).epsilon(1e-15));
  CHECK(total_mass(uniform(Grid::plane(8, 4, 0, 2, 0, 1), 2.0, 0.0)) == doctest::Approx(4.0));
}
