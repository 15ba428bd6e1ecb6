#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "swe/cases.hpp"
#include "swe/integrator.hpp"
#include "swe/reductions.hpp"

using namespace swe;
using namespace swe::testing;

TEST_CASE("SI-IMEX(4,4,3) coefficients") {
  const ButcherPair t = ButcherPair::si_imex_443();
  const double g = 0.435866521508;
  CHECK(kImexGamma == g);
  const double Atil[4][4] = {{0, 0, 0, 0},
                             {g, 0, 0, 0},
                             {1.243893189483, -0.525959928729, 0, 0},
                             {0.630412558153, 0.786580740199, -0.416993298352, 0}};
  const double A[4][4] = {{g, 0, 0, 0},
                          {0, g, 0, 0},
                          {0, 0.282066739245, g, 0},
                          {0, 1.208496649176, -0.644363170684, g}};
  const double bt[4] = {0, 1.208496649176, -0.644363170684, g};
  const double ct[4] = {0, g, 0.717933260754, 1};
  const double c[4] = {g, g, 0.717933260754, 1};
  REQUIRE(t.s == 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(t.atil(i, j) - Atil[i][j]) <= 1e-12);
      CHECK(std::abs(t.a(i, j) - A[i][j]) <= 1e-12);
    }
    CHECK(std::abs(t.btil[i] - bt[i]) <= 1e-12);
    CHECK(std::abs(t.b[i] - bt[i]) <= 1e-12);
    CHECK(std::abs(t.ctil[i] - ct[i]) <= 1e-12);
    CHECK(std::abs(t.c[i] - c[i]) <= 1e-12);
  }
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("tableau structure") {
  for (const ButcherPair& t : {ButcherPair::first_order(), ButcherPair::si_imex_443()}) {
    CAPTURE(t.name);
    for (int i = 0; i < t.s; ++i) {
      double rt = 0.0, ri = 0.0;
      for (int j = 0; j < t.s; ++j) {
        if (j >= i) CHECK(t.atil(i, j) == 0.0);
        if (j > i) CHECK(t.a(i, j) == 0.0);
        rt += t.atil(i, j);
        ri += t.a(i, j);
      }
      CHECK(t.a(i, i) > 0.0);
      CHECK(std::abs(rt - t.ctil[i]) <= 1e-12);
      CHECK(std::abs(ri - t.c[i]) <= 1e-12);
    }
    for (int j = 0; j < t.s; ++j) {
      CHECK(t.b[j] == t.a(t.s - 1, j));
      CHECK(t.btil[j] == t.b[j]);
    }
  }
  ButcherPair bad = ButcherPair::si_imex_443();
  bad.b[1] += 1e-9;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ButcherPair::si_imex_443();
  bad.Atil[5] = 0.1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("scheme names round-trip") {
  for (Scheme s : {Scheme::imex3, Scheme::first_order, Scheme::explicit_ref})
    CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("rk4"), ConfigError);
}

namespace {

Field random_bottom(const Grid& g, std::mt19937_64& rng, bool discontinuous) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  const double a = d(rng), p = 6 * d(rng), c = d(rng);
  const double lo = 0.2 + 0.3 * d(rng), hi = lo + 0.2 + 0.2 * d(rng);
  const double jump = 0.5 * d(rng) + 0.1;
  Field b(g);
  for_interior(g, [&](int i, int j) {
    const double x = g.x(i), y = g.y(j);
    double v = 0.5 * a * std::sin(2 * kPi * x + p) + 0.3 * c * std::cos(2 * kPi * (x + y));
    if (discontinuous && x >= lo && x <= hi) v += jump;
    b(i, j) = v;
  });
  return b;
}

State lake(const Problem& p, double level) {
  State s(p.grid);
  for_interior(p.grid, [&](int i, int j) { s.h(i, j) = level - p.bathy(i, j); });
  fill_ghosts(s, p.bc);
  return s;
}

}  // namespace

TEST_CASE("lake at rest survives ten steps of every scheme") {
  std::mt19937_64 rng(30);
  for (const Grid& g : {Grid::line(64, 0.0, 1.0), Grid::plane(20, 16, 0.0, 1.0, 0.0, 1.0)}) {
    for (bool disc : {false, true}) {
      for (double eps : {1.0, 0.05, 1e-3}) {
        CAPTURE(g.dim);
        CAPTURE(disc);
        CAPTURE(eps);
        Problem p = periodic_problem(g, random_bottom(g, rng, disc), eps);
        Integrator integ(p);
        for (Scheme sch : {Scheme::imex3, Scheme::first_order, Scheme::explicit_ref}) {
          State s = lake(p, 2.0);
          const double dt = integ.stable_dt(s, sch);
          for (int k = 0; k < 10; ++k) integ.step(s, dt, sch);
          double dH = 0.0, du = 0.0;
          for_interior(g, [&](int i, int j) {
            dH = std::max(dH, std::abs(s.h(i, j) + p.bathy(i, j) - 2.0));
            du = std::max({du, std::abs(s.hu(i, j)), std::abs(s.hv(i, j))});
          });
          CHECK(dH <= 1e-12);
          CHECK(du <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("mass is conserved under periodic closure") {
  std::mt19937_64 rng(31);
  for (const Grid& g : {Grid::line(80, 0.0, 1.0), Grid::plane(24, 24, 0.0, 1.0, 0.0, 1.0)}) {
    for (double eps : {1.0, 0.1}) {
      Problem p = periodic_problem(g, random_bottom(g, rng, false), eps);
      State s(g);
      for_interior(g, [&](int i, int j) {
        const double x = g.x(i), y = g.y(j);
        s.h(i, j) = 2.0 - p.bathy(i, j) + eps * eps * 0.2 * std::sin(2 * kPi * (x - y));
        s.hu(i, j) = 0.3 + 0.1 * std::cos(2 * kPi * x);
        if (g.dim == 2) s.hv(i, j) = -0.2 + 0.1 * std::sin(2 * kPi * y);
      });
      fill_ghosts(s, p.bc);
      Integrator integ(p);
      for (Scheme sch : {Scheme::imex3, Scheme::first_order, Scheme::explicit_ref}) {
        State u = s;
        const double m0 = total_mass(u);
        const double dt = integ.stable_dt(u, sch);
        for (int k = 0; k < 5; ++k) integ.step(u, dt, sch);
        CHECK(std::abs(total_mass(u) - m0) <= 1e-12 * std::abs(m0));
      }
    }
  }
}

TEST_CASE("one step changes the state by O(dt)") {
  std::mt19937_64 rng(32);
  const Grid g = Grid::line(64, 0.0, 1.0);
  Problem p = periodic_problem(g, random_bottom(g, rng, false), 1.0);
  State s(g);
  for_interior(g, [&](int i, int) {
    s.h(i) = 2.0 - p.bathy(i) + 0.1 * std::sin(2 * kPi * g.x(i));
    s.hu(i) = 0.5;
  });
  fill_ghosts(s, p.bc);
  Integrator integ(p);
  auto change = [&](double dt) {
    State u = s;
    integ.step(u, dt, Scheme::imex3);
    return std::max(max_abs_diff(u.h, s.h), max_abs_diff(u.hu, s.hu));
  };
  const double c1 = change(1e-3), c2 = change(5e-4);
  CHECK(c1 > 0.0);
  CHECK(c1 / c2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("free step functions agree with the integrator") {
  std::mt19937_64 rng(33);
  const Grid g = Grid::line(40, 0.0, 1.0);
  Problem p = periodic_problem(g, random_bottom(g, rng, false), 0.5);
  State s = lake(p, 2.0);
  for_interior(g, [&](int i, int) { s.hu(i) = 0.1 * std::sin(2 * kPi * g.x(i)); });
  fill_ghosts(s, p.bc);
  Integrator integ(p);
  State a = s;
  integ.step_imex(a, 1e-3, ButcherPair::si_imex_443());
  const State b = step_imex(s, p, 1e-3, ButcherPair::si_imex_443());
  CHECK(max_abs_diff(a.h, b.h) == 0.0);
  CHECK(max_abs_diff(a.hu, b.hu) == 0.0);
  State c = s;
  Integrator(p).step_first_order(c, 1e-3);
  CHECK(max_abs_diff(c.hu, step_first_order(s, p, 1e-3).hu) == 0.0);
  State d = s;
  integ.step_explicit_reference(d, 1e-4);
  CHECK(max_abs_diff(d.hu, step_explicit_reference(s, p, 1e-4).hu) == 0.0);
  // the first-order tableau drives the same stage loop
  State e = s;
  Integrator(p).step_imex(e, 1e-3, ButcherPair::first_order());
  CHECK(max_abs_diff(c.hu, e.hu) == 0.0);
  CHECK(max_abs_diff(c.h, e.h) == 0.0);
  // a warm-started solver differs only at the solver tolerance
  State w = s;
  integ.step_first_order(w, 1e-3);
  CHECK(max_abs_diff(c.hu, w.hu) <= 1e-12);
  CHECK(max_abs_diff(c.h, w.h) <= 1e-12);
}

TEST_CASE("stable step scales with the acoustic factor") {
  const Grid g = Grid::line(100, 0.0, 1.0);
  Problem p = periodic_problem(g, Field(g, 0.0), 0.01);
  State s = lake(p, 1.0);
  Integrator integ(p);
  const double di = integ.stable_dt(s, Scheme::imex3);
  const double de = integ.stable_dt(s, Scheme::explicit_ref);
  CHECK(di == doctest::Approx(0.2 * 0.01));
  CHECK(di / de == doctest::Approx(100.0));
}

TEST_CASE("advance_to lands on snapshot and final times") {
  std::mt19937_64 rng(34);
  const Grid g = Grid::line(50, 0.0, 1.0);
  Problem p = periodic_problem(g, random_bottom(g, rng, false), 1.0);
  State s = lake(p, 2.0);
  for_interior(g, [&](int i, int) { s.hu(i) = 0.2 * std::cos(2 * kPi * g.x(i)); });
  fill_ghosts(s, p.bc);
  Integrator integ(p);

  State zero = s;
  const RunStats none = advance_to(zero, 0.0, integ, {});
  CHECK(none.steps == 0);
  CHECK(max_abs_diff(zero.hu, s.hu) == 0.0);

  AdvanceOptions opt;
  opt.snapshot_times = {0.013, 0.05};
  std::vector<double> hits;
  opt.on_snapshot = [&](double t, const State&) { hits.push_back(t); };
  State u = s;
  const RunStats st = advance_to(u, 0.07, integ, opt);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0] == doctest::Approx(0.013).epsilon(1e-14));
  CHECK(hits[1] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(st.t == doctest::Approx(0.07).epsilon(1e-14));
  CHECK(st.mass_drift <= 1e-12);
  CHECK(st.min_h > 0.0);

  AdvanceOptions fixed;
  fixed.fixed_dt = 0.003;
  State v = s;
  const RunStats sf = advance_to(v, 0.01, integ, fixed);
  CHECK(sf.steps == 4);
  CHECK(sf.t == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("repeated runs are bitwise identical") {
  std::mt19937_64 rng(35);
  const Grid g = Grid::plane(20, 12, 0.0, 1.0, 0.0, 1.0);
  const Field b = random_bottom(g, rng, true);
  auto once = [&]() {
    Problem p = periodic_problem(g, b, 0.1);
    State s(g);
    for_interior(g, [&](int i, int j) {
      s.h(i, j) = 2.0 - p.bathy(i, j) + 0.01 * std::sin(2 * kPi * g.x(i));
      s.hu(i, j) = 0.1;
      s.hv(i, j) = 0.05 * std::cos(2 * kPi * g.y(j));
    });
    fill_ghosts(s, p.bc);
    Integrator integ(p);
    for (int k = 0; k < 3; ++k) integ.step(s, 1e-3, Scheme::imex3);
    return s;
  };
  const State a = once(), c = once();
  CHECK(std::equal(a.h.values().begin(), a.h.values().end(), c.h.values().begin()));
  CHECK(std::equal(a.hu.values().begin(), a.hu.values().end(), c.hu.values().begin()));
  CHECK(std::equal(a.hv.values().begin(), a.hv.values().end(), c.hv.values().begin()));
}

TEST_CASE("well-prepared data stay close to the lake limit") {
  // post-step surface deviation shrinks like eps^2
  auto deviation = [](double eps) {
    const CaseSpec c = case_accuracy_eps_1d(eps);
    FlowParams fp;
    fp.eps = eps;
    State s;
    const Problem p = make_problem(c, 80, 0, fp, {}, s);
    Integrator integ(p);
    integ.step(s, integ.stable_dt(s, Scheme::imex3), Scheme::imex3);
    const Field H = surface_level(s, p.bathy);
    const double m = spatial_mean(H);
    double d = 0.0;
    for_interior(p.grid, [&](int i, int j) { d = std::max(d, std::abs(H(i, j) - m)); });
    return d;
  };
  const double d2 = deviation(1e-2), d4 = deviation(1e-4);
  CHECK(std::log10(d2 / d4) / 2.0 >= 1.8);
}

TEST_CASE("non-positive depth aborts the step") {
  const Grid g = Grid::line(20, 0.0, 1.0);
  Problem p = periodic_problem(g, Field(g, 0.0), 1.0);
  State s = lake(p, 1.0);
  s.h(7) = -1.0;
  Integrator integ(p);
  CHECK_THROWS_AS(integ.step(s, 1e-3, Scheme::imex3), SolverError);
}

TEST_CASE("low-Froude vortex keeps an O(eps^2) surface") {
  const double eps = 0.05;
  const CaseSpec c = case_traveling_vortex(false, eps);
  FlowParams fp;
  fp.eps = eps;
  auto deviation = [](const State& s, const Problem& p) {
    const Field H = surface_level(s, p.bathy);
    double d = 0.0;
    for_interior(p.grid, [&](int i, int j) { d = std::max(d, std::abs(H(i, j) - 110.0)); });
    return d;
  };
  State s;
  const Problem p = make_problem(c, 60, 30, fp, {}, s);
  const double d0 = deviation(s, p);
  Integrator integ(p);
  double t = 0.0, worst = 0.0;
  while (t < 0.1) {
    const double dt = std::min(integ.stable_dt(s, Scheme::imex3), 0.1 - t);
    integ.step(s, dt, Scheme::imex3);
    t += dt;
    // past the initial acoustic layer
    if (t >= 0.02) worst = std::max(worst, deviation(s, p));
  }
  CAPTURE(d0);
  CHECK(worst <= 3.0 * d0);
}
