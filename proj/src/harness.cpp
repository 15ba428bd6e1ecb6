#include "swe/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "swe/reductions.hpp"

namespace swe {

namespace {

using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* first = v.data();
  const auto* last = v.data() + v.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last)
    throw ConfigError("bad number for '" + key + "': '" + v + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("bad integer for '" + key + "': '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean for '" + key + "': '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  return out;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snap_t%.6g.csv", t);
  return buf;
}

const Field& select_field(const State& s, const Bathymetry& b, const std::string& name,
                          Field& scratch) {
  if (name == "h") return s.h;
  if (name == "hu") return s.hu;
  if (name == "hv") return s.hv;
  if (name == "H") {
    scratch = surface_level(s, b);
    return scratch;
  }
  throw ConfigError("unknown field '" + name + "'");
}

double max_deviation(const Field& H, double ref) {
  double m = 0.0;
  const Grid& g = H.grid();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) m = std::max(m, std::abs(H(i, j) - ref));
  return m;
}

double max_change(const Field& a, const Field& b) {
  double m = 0.0;
  const Grid& g = a.grid();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + p.string());
  os << text;
}

// 6-point interpolation to the midpoint of fine points k and k+1.
double midpoint6(const double* f, std::ptrdiff_t k, std::ptrdiff_t s) {
  return (3.0 * f[k - 2 * s] - 25.0 * f[k - s] + 150.0 * f[k] + 150.0 * f[k + s] -
          25.0 * f[k + 2 * s] + 3.0 * f[k + 3 * s]) *
         (1.0 / 256.0);
}

}  // namespace

void RunConfig::validate(const CaseSpec& c) const {
  if (nx < 0 || ny < 0) throw ConfigError("mesh sizes must be positive");
  if (c.dim == 1 && ny > 1) throw ConfigError("case " + c.name + " is 1D; --ny is not allowed");
  if (eps && !(*eps > 0.0)) throw ConfigError("eps must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (t_final && !(*t_final >= 0.0)) throw ConfigError("tfinal must be non-negative");
  if (fixed_dt < 0.0) throw ConfigError("fixed-dt must be non-negative");
  if (!(numerics.solver_tol > 0.0)) throw ConfigError("solver-tol must be positive");
  for (double t : snapshot_times)
    if (!(t >= 0.0)) throw ConfigError("snapshot times must be non-negative");
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "case") {
      cfg.case_name = val;
    } else if (key == "variant") {
      cfg.variant = val;
    } else if (key == "scheme") {
      cfg.scheme = parse_scheme(val);
    } else if (key == "nx") {
      cfg.nx = parse_int(key, val);
    } else if (key == "ny") {
      cfg.ny = parse_int(key, val);
    } else if (key == "eps") {
      cfg.eps = parse_double(key, val);
    } else if (key == "cfl") {
      cfg.cfl = parse_double(key, val);
    } else if (key == "tfinal") {
      cfg.t_final = parse_double(key, val);
    } else if (key == "accuracy-mode") {
      cfg.accuracy_mode = parse_bool(key, val);
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "snap-times") {
      cfg.snapshot_times = parse_list(key, val);
    } else if (key == "fixed-dt") {
      cfg.fixed_dt = parse_double(key, val);
    } else if (key == "solver-tol") {
      cfg.numerics.solver_tol = parse_double(key, val);
    } else if (key == "stencil") {
      if (val == "fourth") cfg.numerics.stencil = StencilOrder::fourth;
      else if (val == "second") cfg.numerics.stencil = StencilOrder::second;
      else throw ConfigError("bad stencil '" + val + "'");
    } else if (key == "alpha") {
      if (val == "local") cfg.numerics.alpha = AlphaMode::local;
      else if (val == "global") cfg.numerics.alpha = AlphaMode::global;
      else throw ConfigError("bad alpha mode '" + val + "'");
    } else if (key == "mass-weights") {
      if (val == "auto") cfg.numerics.mass_weights = MassWeights::automatic;
      else if (val == "nonlinear") cfg.numerics.mass_weights = MassWeights::nonlinear;
      else if (val == "linear") cfg.numerics.mass_weights = MassWeights::linear;
      else throw ConfigError("bad mass weights '" + val + "'");
    } else if (key == "preconditioner") {
      if (val == "spectral") cfg.numerics.preconditioner = PreconditionerKind::spectral;
      else if (val == "jacobi") cfg.numerics.preconditioner = PreconditionerKind::jacobi;
      else throw ConfigError("bad preconditioner '" + val + "'");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  apply_config_text(cfg, ss.str());
}

void write_snapshot(std::ostream& os, const State& s, const Bathymetry& b) {
  const Grid& g = s.grid();
  const bool two = g.dim == 2;
  os << (two ? "x,y,h,hu,hv,b,H\n" : "x,h,hu,b,H\n");
  std::string line;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      line.clear();
      line += format_g17(g.x(i));
      if (two) line += "," + format_g17(g.y(j));
      line += "," + format_g17(s.h(i, j));
      line += "," + format_g17(s.hu(i, j));
      if (two) line += "," + format_g17(s.hv(i, j));
      line += "," + format_g17(b(i, j));
      line += "," + format_g17(s.h(i, j) + b(i, j));
      line += "\n";
      os << line;
    }
  }
}

std::string snapshot_text(const State& s, const Bathymetry& b) {
  std::ostringstream os;
  write_snapshot(os, s, b);
  return os.str();
}

RunResult run(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  RunResult r;
  r.spec = find_case(cfg.case_name, cfg.variant);
  cfg.validate(r.spec);
  if (cfg.eps) {
    if (r.spec.name == "accuracy-eps") r.spec = case_accuracy_eps_1d(*cfg.eps);
    else if (r.spec.name == "accuracy2d") r.spec = case_accuracy_2d(*cfg.eps);
    else if (r.spec.name == "vortex") r.spec = case_traveling_vortex(false, *cfg.eps);
    else if (r.spec.name == "vortex-bump") r.spec = case_traveling_vortex(true, *cfg.eps);
    r.spec.eps = *cfg.eps;
  }
  if (cfg.t_final) r.spec.t_final = *cfg.t_final;
  FlowParams params;
  params.eps = r.spec.eps;
  params.cfl = cfg.cfl;
  params.accuracy_mode = cfg.accuracy_mode;
  r.problem = make_problem(r.spec, cfg.nx, cfg.ny, params, cfg.numerics, r.initial);
  r.final_state = r.initial;

  const bool write = !cfg.out_dir.empty();
  fs::path dir(cfg.out_dir);
  if (write) fs::create_directories(dir);
  Integrator integ(r.problem);
  AdvanceOptions opt;
  opt.scheme = cfg.scheme;
  opt.fixed_dt = cfg.fixed_dt;
  opt.snapshot_times = cfg.snapshot_times.empty() ? r.spec.snapshot_times : cfg.snapshot_times;
  if (write) {
    const Bathymetry& b = r.problem.bathy;
    opt.on_snapshot = [&](double t, const State& s) {
      write_file(dir / snapshot_name(t), snapshot_text(s, b));
    };
  }
  r.stats = advance_to(r.final_state, r.spec.t_final, integ, opt);
  if (write) {
    write_file(dir / "final.csv", snapshot_text(r.final_state, r.problem.bathy));
    write_file(dir / "summary.json", summary_json(cfg, r));
    ordered_json t;
    t["wall_seconds"] = r.stats.wall_seconds;
    t["steps"] = r.stats.steps;
    write_file(dir / "timing.json", t.dump(2) + "\n");
  }
  return r;
}

RunResult run_case(const RunConfig& cfg) {
  RunConfig quiet = cfg;
  quiet.out_dir.clear();
  return run(quiet);
}

std::string summary_json(const RunConfig& cfg, const RunResult& r) {
  const State& s = r.final_state;
  const Bathymetry& b = r.problem.bathy;
  const Field H = surface_level(s, b);
  const Field H0 = surface_level(r.initial, b);
  ordered_json j;
  j["case"] = r.spec.name;
  if (!cfg.variant.empty()) j["variant"] = cfg.variant;
  j["scheme"] = to_string(cfg.scheme);
  j["dim"] = r.problem.grid.dim;
  j["nx"] = r.problem.grid.nx;
  j["ny"] = r.problem.grid.ny;
  j["eps"] = r.problem.params.eps;
  j["cfl"] = r.problem.params.cfl;
  j["accuracy_mode"] = r.problem.params.accuracy_mode;
  j["t_final"] = r.stats.t;
  j["steps"] = r.stats.steps;
  j["min_h"] = r.stats.min_h;
  j["max_h"] = r.stats.max_h;
  j["mass_initial"] = r.stats.mass_initial;
  j["mass_final"] = r.stats.mass_final;
  j["mass_drift"] = r.stats.mass_drift;
  j["max_abs_hu"] = max_abs_interior(s.hu);
  j["max_abs_hv"] = max_abs_interior(s.hv);
  j["max_surface_deviation"] = max_deviation(H, spatial_mean(H));
  j["max_surface_change"] = max_change(H, H0);
  j["linear_solves"] = r.stats.solver.solves;
  j["linear_iterations"] = r.stats.solver.iterations;
  j["linear_fallbacks"] = r.stats.solver.fallbacks;
  j["max_relative_residual"] = r.stats.solver.max_residual;
  return j.dump(2) + "\n";
}

Field restrict_to_coarse(const Field& fine, const Grid& coarse) {
  const Grid& f = fine.grid();
  if (f.dim != coarse.dim || f.nx != 2 * coarse.nx || (f.dim == 2 && f.ny != 2 * coarse.ny))
    throw ConfigError("restriction needs exactly doubled resolution");
  Field out(coarse);
  const double* F = fine.data();
  if (f.dim == 1) {
    for (int i = 0; i < coarse.nx; ++i) out(i) = midpoint6(F, f.index(2 * i), 1);
    return out;
  }
  // x pass on every fine row a y pass needs, then y pass
  const int need = 3;
  std::vector<double> rows(static_cast<std::size_t>((f.ny + 2 * need) * coarse.nx));
  const auto at = [&](int jf, int ic) -> double& {
    return rows[static_cast<std::size_t>((jf + need) * coarse.nx + ic)];
  };
  for (int jf = -2; jf < f.ny + need; ++jf)
    for (int ic = 0; ic < coarse.nx; ++ic) at(jf, ic) = midpoint6(F, f.index(2 * ic, jf), 1);
  for (int jc = 0; jc < coarse.ny; ++jc) {
    for (int ic = 0; ic < coarse.nx; ++ic) {
      const int k = 2 * jc;
      out(ic, jc) = (3.0 * at(k - 2, ic) - 25.0 * at(k - 1, ic) + 150.0 * at(k, ic) +
                     150.0 * at(k + 1, ic) - 25.0 * at(k + 2, ic) + 3.0 * at(k + 3, ic)) *
                    (1.0 / 256.0);
    }
  }
  return out;
}

double self_error(const Field& fine, const Field& coarse) {
  const Field r = restrict_to_coarse(fine, coarse.grid());
  const Grid& g = coarse.grid();
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) s += std::abs(r(i, j) - coarse(i, j));
  return s / static_cast<double>(g.interior_size());
}

std::optional<double> ConvergenceReport::finest_order() const {
  for (auto it = rows.rbegin(); it != rows.rend(); ++it)
    if (it->order) return it->order;
  return std::nullopt;
}

std::string ConvergenceReport::to_json() const {
  ordered_json j;
  j["case"] = case_name;
  j["field"] = field;
  j["eps"] = eps;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json o;
    o["n"] = r.n;
    o["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
    o["order"] = r.order ? ordered_json(*r.order) : ordered_json(nullptr);
    o["steps"] = r.steps;
    arr.push_back(o);
  }
  j["rows"] = arr;
  return j.dump(2) + "\n";
}

ConvergenceReport converge(const RunConfig& base, const std::vector<int>& meshes,
                           const std::string& field) {
  if (meshes.size() < 2) throw ConfigError("convergence needs at least two meshes");
  for (std::size_t k = 1; k < meshes.size(); ++k)
    if (meshes[k] != 2 * meshes[k - 1]) throw ConfigError("meshes must strictly double");
  ConvergenceReport rep;
  rep.field = field;
  constexpr double kExact = 1e-12;
  std::optional<Field> prev;
  std::optional<double> prev_err;
  for (int n : meshes) {
    RunConfig cfg = base;
    const CaseSpec spec = find_case(cfg.case_name, cfg.variant);
    cfg.nx = n;
    if (spec.dim == 2) {
      const double aspect = (spec.y1 - spec.y0) / (spec.x1 - spec.x0);
      cfg.ny = std::max(1, static_cast<int>(std::lround(n * aspect)));
    }
    RunResult r = run_case(cfg);
    rep.case_name = r.spec.name;
    rep.eps = r.problem.params.eps;
    Field scratch;
    Field cur = select_field(r.final_state, r.problem.bathy, field, scratch);
    fill_ghosts(cur, r.problem.bc.spec());
    ConvergenceRow row;
    row.n = n;
    row.steps = r.stats.steps;
    row.wall_seconds = r.stats.wall_seconds;
    if (prev) {
      row.error = self_error(cur, *prev);
      if (prev_err && !(*prev_err <= kExact && *row.error <= kExact))
        row.order = std::log2(*prev_err / *row.error);
      prev_err = row.error;
    }
    prev = std::move(cur);
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<CompareRow> compare_steps(const RunConfig& base, const std::vector<double>& eps_list) {
  std::vector<CompareRow> out;
  for (double e : eps_list) {
    CompareRow row;
    row.eps = e;
    RunConfig cfg = base;
    cfg.eps = e;
    cfg.scheme = Scheme::imex3;
    const RunResult a = run_case(cfg);
    cfg.scheme = Scheme::explicit_ref;
    const RunResult b = run_case(cfg);
    row.steps_imex = a.stats.steps;
    row.steps_explicit = b.stats.steps;
    row.ratio = static_cast<double>(b.stats.steps) / static_cast<double>(a.stats.steps);
    row.wall_imex = a.stats.wall_seconds;
    row.wall_explicit = b.stats.wall_seconds;
    out.push_back(row);
  }
  return out;
}

int run_suite(std::ostream& os) {
  int failures = 0;
  const auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    os << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
    if (!ok) ++failures;
  };
  const auto sci = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return std::string(buf);
  };

  try {
    ButcherPair::si_imex_443().validate();
    ButcherPair::first_order().validate();
    report("tableau", true, "row sums, triangularity, stiff accuracy");
  } catch (const std::exception& e) {
    report("tableau", false, e.what());
  }

  for (Scheme sc : {Scheme::imex3, Scheme::explicit_ref}) {
    try {
      RunConfig cfg;
      cfg.case_name = "lake-rest";
      cfg.scheme = sc;
      cfg.t_final = 0.5;
      const RunResult r = run_case(cfg);
      const Field H = surface_level(r.final_state, r.problem.bathy);
      const double dh = max_deviation(H, 10.0);
      const double mu = max_abs_interior(r.final_state.hu);
      report("well-balance " + to_string(sc), dh <= 1e-12 && mu <= 1e-12,
             "max|H-10|=" + sci(dh) + " max|hu|=" + sci(mu));
    } catch (const std::exception& e) {
      report("well-balance " + to_string(sc), false, e.what());
    }
  }

  for (Scheme sc : {Scheme::imex3, Scheme::first_order, Scheme::explicit_ref}) {
    try {
      RunConfig cfg;
      cfg.case_name = "accuracy1d";
      cfg.scheme = sc;
      cfg.nx = 80;
      cfg.t_final = 0.02;
      const RunResult r = run_case(cfg);
      report("mass " + to_string(sc), r.stats.mass_drift <= 1e-12,
             "drift=" + sci(r.stats.mass_drift));
    } catch (const std::exception& e) {
      report("mass " + to_string(sc), false, e.what());
    }
  }
  return failures;
}

}  // namespace swe
