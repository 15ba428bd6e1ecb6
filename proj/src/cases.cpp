#include "swe/cases.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace swe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGravity = 9.812;

std::vector<int> doubling(int first, int count) {
  std::vector<int> m;
  for (int i = 0; i < count; ++i) m.push_back(first << i);
  return m;
}

}  // namespace

double gravity_eps() { return 1.0 / std::sqrt(kGravity); }

CaseSpec case_accuracy_1d() {
  CaseSpec c;
  c.name = "accuracy1d";
  c.x0 = 0.0;
  c.x1 = 1.0;
  c.bc = BoundarySpec::all(BoundaryKind::periodic);
  c.eps = gravity_eps();
  c.t_final = 0.1;
  c.nx = 320;
  c.meshes = doubling(40, 6);
  c.bathy = [](double x, double) {
    const double s = std::sin(kPi * x);
    return s * s;
  };
  c.init = [](double x, double) {
    const double cs = std::cos(2.0 * kPi * x);
    return PointValue{5.0 + std::exp(cs), std::sin(cs), 0.0};
  };
  return c;
}

CaseSpec case_accuracy_eps_1d(double eps) {
  CaseSpec c;
  c.name = "accuracy-eps";
  c.x0 = 0.0;
  c.x1 = 2.0;
  c.bc = BoundarySpec::all(BoundaryKind::periodic);
  c.eps = eps;
  c.t_final = 0.05;
  c.nx = 320;
  c.meshes = doubling(40, 5);
  c.bathy = [](double x, double) { return 1.0 + std::sin(2.0 * kPi * x); };
  c.init = [eps](double x, double) {
    const double s = std::sin(2.0 * kPi * x);
    const double b = 1.0 + s;
    return PointValue{10.0 - b + eps * eps * std::exp(s), 1.0 + eps * eps * s, 0.0};
  };
  return c;
}

CaseSpec case_perturbation_1d(double eta) {
  CaseSpec c;
  c.name = eta >= 0.01 ? "perturb1d-big" : "perturb1d-small";
  c.x0 = 0.0;
  c.x1 = 2.0;
  c.bc = BoundarySpec::all(BoundaryKind::outflow);
  c.eps = gravity_eps();
  c.t_final = 0.2;
  c.nx = 200;
  const auto bottom = [](double x) {
    return (x >= 1.4 && x <= 1.6) ? 0.25 * (std::cos(10.0 * kPi * (x - 1.5)) + 1.0) : 0.0;
  };
  c.bathy = [bottom](double x, double) { return bottom(x); };
  c.init = [bottom, eta](double x, double) {
    const double h = 1.0 - bottom(x) + ((x >= 1.1 && x <= 1.2) ? eta : 0.0);
    return PointValue{h, 0.0, 0.0};
  };
  return c;
}

CaseSpec case_dam_break(double t_final) {
  CaseSpec c;
  c.name = "dambreak";
  c.x0 = 0.0;
  c.x1 = 1500.0;
  c.bc = BoundarySpec::all(BoundaryKind::inflow);
  c.eps = gravity_eps();
  c.t_final = t_final;
  c.nx = 500;
  const auto bottom = [](double x) { return std::abs(x - 750.0) <= 1500.0 / 8.0 ? 8.0 : 0.0; };
  c.bathy = [bottom](double x, double) { return bottom(x); };
  c.init = [bottom](double x, double) {
    return PointValue{(x <= 750.0 ? 20.0 : 15.0) - bottom(x), 0.0, 0.0};
  };
  return c;
}

CaseSpec case_lake_at_rest(bool moving) {
  CaseSpec c;
  c.name = moving ? "lake-moving" : "lake-rest";
  c.x0 = 0.0;
  c.x1 = 10.0;
  c.bc = BoundarySpec::all(BoundaryKind::periodic);
  c.eps = gravity_eps();
  c.t_final = moving ? 0.1 : 10.0;
  c.nx = 100;
  const auto bottom = [](double x) { return (x >= 4.0 && x <= 8.0) ? 4.0 : 0.0; };
  c.bathy = [bottom](double x, double) { return bottom(x); };
  c.init = [bottom, moving](double x, double) {
    const double h = 10.0 - bottom(x);
    return PointValue{h, moving ? h : 0.0, 0.0};
  };
  return c;
}

CaseSpec case_multiscale_wave(bool alt) {
  CaseSpec c;
  c.name = "multiscale";
  c.x0 = -51.0;
  c.x1 = 51.0;
  c.bc = BoundarySpec::all(BoundaryKind::periodic);
  c.eps = 0.02;
  c.t_final = 4.1;
  c.nx = 2040;
  c.snapshot_times = {0.0, 0.2, 0.5, 1.0, 2.4, 4.1};
  c.notes = alt ? "short wave eps*sin(40 pi x)" : "short wave sin(eps*40 pi x)";
  const double eps = c.eps;
  c.bathy = [](double, double) { return 0.0; };
  c.init = [eps, alt](double x, double) {
    const double sigma = (x >= 0.0 && x <= 20.0) ? 0.5 * (1.0 - std::cos(0.1 * kPi * x)) : 0.0;
    const double shortwave =
        alt ? eps * std::sin(40.0 * kPi * x) : std::sin(eps * 40.0 * kPi * x);
    const double cl = 1.0 + std::cos(eps * kPi * x);
    const double H = 1.0 + 0.5 * sigma * shortwave + eps * cl;
    const double u = std::sqrt(2.0) * cl;
    return PointValue{H, H * u, 0.0};
  };
  return c;
}

CaseSpec case_accuracy_2d(double eps) {
  CaseSpec c;
  c.name = "accuracy2d";
  c.dim = 2;
  c.bc = BoundarySpec::all(BoundaryKind::periodic);
  c.eps = eps;
  c.t_final = 0.05;
  c.nx = 64;
  c.ny = 64;
  c.meshes = doubling(8, 5);
  c.bathy = [](double x, double y) {
    return std::sin(2.0 * kPi * x) + std::cos(2.0 * kPi * y) + 2.0;
  };
  c.init = [eps](double x, double y) {
    const double sx = std::sin(2.0 * kPi * x);
    const double cx = std::cos(2.0 * kPi * x);
    const double sy = std::sin(2.0 * kPi * y);
    const double cy = std::cos(2.0 * kPi * y);
    const double b = sx + cy + 2.0;
    return PointValue{10.0 - b + eps * eps * sx * cy, sx * cy, -cx * sy};
  };
  return c;
}

CaseSpec case_perturbation_2d() {
  CaseSpec c;
  c.name = "perturb2d";
  c.dim = 2;
  c.x0 = 0.0;
  c.x1 = 2.0;
  c.y0 = 0.0;
  c.y1 = 1.0;
  c.bc = {BoundaryKind::outflow, BoundaryKind::outflow, BoundaryKind::periodic,
          BoundaryKind::periodic};
  c.eps = gravity_eps();
  c.t_final = 0.6;
  c.nx = 200;
  c.ny = 100;
  c.snapshot_times = {0.12, 0.24, 0.36, 0.48, 0.6};
  const auto bottom = [](double x, double y) {
    return 0.8 * std::exp(-5.0 * (x - 0.9) * (x - 0.9) - 50.0 * (y - 0.5) * (y - 0.5));
  };
  c.bathy = bottom;
  c.init = [bottom](double x, double y) {
    const double h = 1.0 - bottom(x, y) + ((x >= 0.05 && x <= 0.15) ? 0.01 : 0.0);
    return PointValue{h, 0.0, 0.0};
  };
  return c;
}

double vortex_k(double xi) {
  return 2.0 * std::cos(xi) + 2.0 * xi * std::sin(xi) + 0.125 * std::cos(2.0 * xi) +
         0.25 * xi * std::sin(2.0 * xi) + 0.75 * xi * xi;
}

namespace {

constexpr double kVortexGamma = 8.0;
constexpr double kVortexOmega = 4.0 * kPi;

struct VortexValue {
  double H, u, v;
};

VortexValue vortex_at(double x, double y, double eps) {
  const double rc = std::hypot(x - 0.5, y - 0.5);
  const double wr = kVortexOmega * rc;
  VortexValue out{110.0, 2.0, 0.0};
  if (wr <= kPi) {
    const double f = eps * kVortexGamma / kVortexOmega;
    out.H += f * f * (vortex_k(wr) - vortex_k(kPi));
    const double g = kVortexGamma * (1.0 + std::cos(wr));
    out.u += g * (0.5 - y);
    out.v = g * (x - 0.5);
  }
  return out;
}

}  // namespace

double vortex_surface(double x, double y, double t, double eps) {
  double xs = std::fmod(x - 2.0 * t, 2.0);
  if (xs < 0.0) xs += 2.0;
  return vortex_at(xs, y, eps).H;
}

CaseSpec case_traveling_vortex(bool nonflat, double eps) {
  CaseSpec c;
  c.name = nonflat ? "vortex-bump" : "vortex";
  c.dim = 2;
  c.x0 = 0.0;
  c.x1 = 2.0;
  c.y0 = 0.0;
  c.y1 = 1.0;
  c.bc = BoundarySpec::all(BoundaryKind::periodic);
  c.eps = eps;
  c.t_final = 1.0;
  c.nx = 200;
  c.ny = 100;
  if (nonflat) c.snapshot_times = {0.0, 0.3, 0.6, 1.0};
  const auto bottom = [nonflat](double x, double) {
    return nonflat ? std::exp(-5.0 * (x - 1.0) * (x - 1.0)) : 0.0;
  };
  c.bathy = bottom;
  c.init = [bottom, eps](double x, double y) {
    const VortexValue w = vortex_at(x, y, eps);
    const double h = w.H - bottom(x, y);
    return PointValue{h, h * w.u, h * w.v};
  };
  return c;
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = {
      "accuracy1d", "accuracy-eps", "perturb1d-big", "perturb1d-small", "dambreak", "lake-rest",
      "lake-moving", "multiscale", "accuracy2d", "perturb2d", "vortex", "vortex-bump"};
  return names;
}

CaseSpec find_case(const std::string& name, const std::string& variant) {
  if (!variant.empty() && !(name == "multiscale" && variant == "alt"))
    throw ConfigError("unknown variant '" + variant + "' for case '" + name + "'");
  if (name == "accuracy1d") return case_accuracy_1d();
  if (name == "accuracy-eps") return case_accuracy_eps_1d();
  if (name == "perturb1d-big") return case_perturbation_1d(0.2);
  if (name == "perturb1d-small") return case_perturbation_1d(0.001);
  if (name == "dambreak") return case_dam_break();
  if (name == "lake-rest") return case_lake_at_rest(false);
  if (name == "lake-moving") return case_lake_at_rest(true);
  if (name == "multiscale") return case_multiscale_wave(variant == "alt");
  if (name == "accuracy2d") return case_accuracy_2d();
  if (name == "perturb2d") return case_perturbation_2d();
  if (name == "vortex") return case_traveling_vortex(false);
  if (name == "vortex-bump") return case_traveling_vortex(true);
  throw ConfigError("unknown case '" + name + "'");
}

Problem make_problem(const CaseSpec& c, int nx, int ny, const FlowParams& params,
                     const NumericsOptions& numerics, State& initial) {
  params.validate();
  c.bc.validate();
  if (nx <= 0) nx = c.nx;
  if (ny <= 0) ny = c.ny;
  if (c.dim == 1 && ny != 1) throw ConfigError("a 1D case takes no y resolution");
  const Grid g = c.dim == 1 ? Grid::line(nx, c.x0, c.x1)
                            : Grid::plane(nx, ny, c.x0, c.x1, c.y0, c.y1);

  Field b(g);
  initial = State(g);
  const int gy = g.ghost_y();
  for (int j = -gy; j < g.ny + gy; ++j) {
    const double y = c.dim == 2 ? g.y(j) : 0.0;
    for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
      const double x = g.x(i);
      b(i, j) = c.bathy(x, y);
      const PointValue v = c.init(x, y);
      initial.h(i, j) = v.h;
      initial.hu(i, j) = v.hu;
      initial.hv(i, j) = c.dim == 2 ? v.hv : 0.0;
    }
  }
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!(initial.h(i, j) > 0.0)) {
        std::ostringstream msg;
        msg << "case " << c.name << ": initial depth " << initial.h(i, j) << " at (" << i << ","
            << j << ") is not positive";
        throw ConfigError(msg.str());
      }
    }
  }
  Problem p;
  p.grid = g;
  p.params = params;
  p.numerics = numerics;
  p.bc = Boundary(c.bc, initial);
  fill_ghosts(b, c.bc, &b);
  p.bathy = Bathymetry(std::move(b));
  fill_ghosts(initial, p.bc);
  return p;
}

}  // namespace swe
