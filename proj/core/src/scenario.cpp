#include "calogero/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "calogero/errors.hpp"
#include "json.hpp"

namespace calogero {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

long parse_integer(std::string_view key, std::string_view v) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::string parse_word(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return std::string(v);
}

std::vector<cplx> parse_solitons(std::string_view v) {
  json j;
  try {
    j = json::parse(v);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("solitons: ") + e.what());
  }
  if (!j.is_array()) throw ConfigError("solitons must be an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ConfigError("solitons entries must be [re, im] pairs");
    }
    out.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view val = trim(line.substr(eq + 1));
    if (key == "kernel") {
      cfg.kernel = parse_word(val);
      parse_kernel_kind(cfg.kernel);
    } else if (key == "g") cfg.g = parse_real(key, val);
    else if (key == "c0") cfg.c0 = parse_real(key, val);
    else if (key == "c1") cfg.c1 = parse_real(key, val);
    else if (key == "c2") cfg.c2 = parse_real(key, val);
    else if (key == "c3") cfg.c3 = parse_real(key, val);
    else if (key == "n_particles") cfg.n_particles = static_cast<int>(parse_integer(key, val));
    else if (key == "solitons") cfg.solitons = parse_solitons(val);
    else if (key == "t_end") cfg.t_end = parse_real(key, val);
    else if (key == "output_every") cfg.output_every = parse_real(key, val);
    else if (key == "rtol") cfg.rtol = parse_real(key, val);
    else if (key == "atol") cfg.atol = parse_real(key, val);
    else if (key == "gamma") cfg.gamma = parse_real(key, val);
    else if (key == "init_tol") cfg.init_tol = parse_real(key, val);
    else if (key == "max_iter") cfg.max_iter = parse_integer(key, val);
    else if (key == "grid_size") cfg.grid_size = static_cast<int>(parse_integer(key, val));
    else if (key == "lambda") cfg.lambda = parse_real(key, val);
    else if (key == "collision_eps") cfg.collision_eps = parse_real(key, val);
    else if (key == "dynamics") cfg.dynamics = parse_word(val);
    else if (key == "tamper") cfg.tamper = parse_word(val);
    else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
  }
  if (cfg.dynamics != "dual" && cfg.dynamics != "newtonian") {
    throw ConfigError("dynamics must be 'dual' or 'newtonian'");
  }
  if (!cfg.tamper.empty() && cfg.tamper != "v-form" && cfg.tamper != "w-form") {
    throw ConfigError("tamper must be empty, 'v-form' or 'w-form'");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "kernel = " << cfg.kernel << '\n'
     << "g = " << format_double(cfg.g) << '\n'
     << "c0 = " << format_double(cfg.c0) << '\n'
     << "c1 = " << format_double(cfg.c1) << '\n'
     << "c2 = " << format_double(cfg.c2) << '\n'
     << "c3 = " << format_double(cfg.c3) << '\n'
     << "n_particles = " << cfg.n_particles << '\n'
     << "solitons = [";
  for (std::size_t a = 0; a < cfg.solitons.size(); ++a) {
    if (a) os << ", ";
    os << '[' << format_double(cfg.solitons[a].real()) << ", " << format_double(cfg.solitons[a].imag()) << ']';
  }
  os << "]\n"
     << "t_end = " << format_double(cfg.t_end) << '\n'
     << "output_every = " << format_double(cfg.output_every) << '\n'
     << "rtol = " << format_double(cfg.rtol) << '\n'
     << "atol = " << format_double(cfg.atol) << '\n'
     << "gamma = " << format_double(cfg.gamma) << '\n'
     << "init_tol = " << format_double(cfg.init_tol) << '\n'
     << "max_iter = " << cfg.max_iter << '\n'
     << "grid_size = " << cfg.grid_size << '\n'
     << "lambda = " << format_double(cfg.lambda) << '\n'
     << "collision_eps = " << format_double(cfg.collision_eps) << '\n'
     << "dynamics = " << cfg.dynamics << '\n';
  if (!cfg.tamper.empty()) os << "tamper = " << cfg.tamper << '\n';
  return os.str();
}

ModelSpec to_spec(const ScenarioConfig& cfg) {
  ModelSpec spec;
  spec.kernel = parse_kernel_kind(cfg.kernel);
  spec.g = cfg.g;
  spec.c = {cfg.c0, cfg.c1, cfg.c2, cfg.c3};
  spec.n_particles = cfg.n_particles;
  spec.n_solitons = static_cast<int>(cfg.solitons.size());
  spec.lambda = cfg.lambda;
  spec.collision_eps = cfg.collision_eps;
  spec.validate();
  if (!cfg.solitons.empty()) spec.validate_soliton_mode();
  if (!(cfg.t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (!(cfg.output_every >= 0.0)) throw ConfigError("output_every must be >= 0");
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) throw ConfigError("rtol and atol must be positive");
  if (cfg.grid_size < 3) throw ConfigError("grid_size must be >= 3");
  return spec;
}

std::vector<std::string> preset_names() { return {"fig1-one-soliton", "fig1-two-soliton"}; }

ScenarioConfig preset_config(std::string_view name) {
  ScenarioConfig cfg;
  cfg.kernel = "rational";
  cfg.g = 1.0;
  cfg.c0 = 0.0;
  cfg.c1 = 1.0;
  cfg.c2 = 0.06;
  cfg.c3 = 0.0;
  cfg.n_particles = 31;
  cfg.t_end = 0.3;
  cfg.output_every = 0.01;
  if (name == "fig1-one-soliton") {
    cfg.solitons = {cplx(0.0, 0.0239)};
  } else if (name == "fig1-two-soliton") {
    cfg.solitons = {cplx(0.0, 0.0239), cplx(0.0, -0.0239)};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return cfg;
}

InitReport run_init(const ScenarioConfig& cfg) {
  const ModelSpec spec = to_spec(cfg);
  GradientFlowOptions opts;
  opts.gamma = cfg.gamma;
  opts.tol = cfg.init_tol;
  opts.max_iter = cfg.max_iter;
  return gradient_flow(spec, cfg.solitons, opts);
}

Snapshot snapshot(const ScenarioConfig& cfg, std::span<const double> y) {
  const int n = cfg.n_particles;
  const int m = static_cast<int>(cfg.solitons.size());
  Snapshot s;
  if (cfg.dynamics == "newtonian") {
    PhaseState p = unpack_phase(y, n, m, 0.0);
    s.x = std::move(p.x);
    s.z = std::move(p.z);
  } else {
    DualState d = unpack_dual(y, n, m, 0.0);
    for (const cplx& v : d.x) s.x.push_back(v.real());
    s.z = std::move(d.z);
  }
  return s;
}

EvolveResult run_evolve(const ScenarioConfig& cfg) {
  const ModelSpec spec = to_spec(cfg);
  EvolveResult res;
  res.init = run_init(cfg);

  DualState d0;
  d0.x.assign(res.init.x.begin(), res.init.x.end());
  d0.z = cfg.solitons;

  IntegratorOptions opts;
  opts.rtol = cfg.rtol;
  opts.atol = cfg.atol;
  opts.output_every = cfg.output_every;

  const int n = cfg.n_particles;
  const int m = static_cast<int>(cfg.solitons.size());
  const bool newtonian = cfg.dynamics == "newtonian";
  if (newtonian) {
    res.trajectory = integrate(newtonian_system(spec), pack(phase_from_dual(spec, d0)), 0.0, cfg.t_end, opts);
  } else {
    res.trajectory = integrate(dual_system(spec), pack(d0), 0.0, cfg.t_end, opts);
  }

  if (spec.c.c3 == 0.0) {
    auto energy_at = [&](std::size_t i) {
      const auto& y = res.trajectory.states[i];
      const double t = res.trajectory.times[i];
      return newtonian ? total_energy(spec, unpack_phase(y, n, m, t))
                       : total_energy(spec, phase_from_dual(spec, unpack_dual(y, n, m, t)));
    };
    const EnergyBreakdown e0 = energy_at(0);
    // The two sectors can cancel exactly (harmonic trap, E = 0); fall back to
    // the sector scale then.
    const double sectors = std::abs(e0.particles) + std::abs(e0.solitons);
    const double scale = std::abs(e0.total) > 1e-12 * sectors ? std::abs(e0.total) : sectors;
    for (std::size_t i = 1; i < res.trajectory.states.size(); ++i) {
      res.energy_drift = std::max(res.energy_drift, std::abs(energy_at(i).total - e0.total) / scale);
    }
  } else {
    res.energy_drift = std::numeric_limits<double>::quiet_NaN();
  }
  for (double v : res.trajectory.max_im_log) res.max_im = std::max(res.max_im, v);
  return res;
}

HydroResult run_hydro(const ScenarioConfig& cfg) {
  const ModelSpec spec = to_spec(cfg);
  if (spec.kernel != KernelKind::Rational) throw ConfigError("hydro fields are implemented for the rational kernel only");
  HydroResult res;
  res.init = run_init(cfg);
  res.grid = density_grid(res.init.x, static_cast<std::size_t>(cfg.grid_size));
  if (cfg.solitons.size() == 1) res.grid.v = one_soliton_fields(spec, cfg.solitons[0], res.grid).v;

  const double floor = density_floor(res.grid);
  const std::size_t g = res.grid.size();
  res.u_plus.assign(g, cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()));
  std::size_t i = 1;
  while (i + 1 < g) {
    if (res.grid.rho[i - 1] <= floor || res.grid.rho[i] <= floor || res.grid.rho[i + 1] <= floor) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < g && res.grid.rho[j + 1] > floor) ++j;
    // [i, j) has positive density on both neighbours of every point.
    const std::vector<cplx> u = u_plus_hydro(res.grid, spec.g, i, j);
    std::copy(u.begin(), u.end(), res.u_plus.begin() + static_cast<std::ptrdiff_t>(i));
    i = j + 1;
  }
  return res;
}

void write_trajectory_csv(std::ostream& os, const ScenarioConfig& cfg, const Trajectory& traj) {
  os << 't';
  for (int j = 1; j <= cfg.n_particles; ++j) os << ",x_" << j;
  for (std::size_t a = 1; a <= cfg.solitons.size(); ++a) os << ",Re_z_" << a << ",Im_z_" << a;
  os << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Snapshot s = snapshot(cfg, traj.states[i]);
    os << format_double(traj.times[i]);
    for (double x : s.x) os << ',' << format_double(x);
    for (const cplx& z : s.z) os << ',' << format_double(z.real()) << ',' << format_double(z.imag());
    os << '\n';
  }
}

void write_init_report(std::ostream& os, const InitReport& rep) {
  json j;
  j["x"] = rep.x;
  j["p"] = rep.p;
  json zd = json::array();
  for (const cplx& v : rep.zdot) zd.push_back({v.real(), v.imag()});
  j["zdot"] = zd;
  j["final_U"] = rep.final_U;
  j["iterations"] = rep.iterations;
  j["constraint_residual"] = rep.constraint_residual;
  j["warnings"] = rep.warnings;
  os << j.dump(2) << '\n';
}

void write_fields_csv(std::ostream& os, const HydroResult& res) {
  os << "x,rho,v,rhoH,Re_u_plus,Im_u_plus\n";
  const FieldGrid& g = res.grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    os << format_double(g.x[i]) << ',' << format_double(g.rho[i]) << ',' << format_double(g.v[i]) << ','
       << format_double(g.rhoH[i]) << ',' << format_double(res.u_plus[i].real()) << ','
       << format_double(res.u_plus[i].imag()) << '\n';
  }
}

void write_summary_json(std::ostream& os, const ScenarioConfig& cfg, const EvolveResult& res) {
  json j;
  j["dynamics"] = cfg.dynamics;
  j["n_particles"] = cfg.n_particles;
  j["n_solitons"] = cfg.solitons.size();
  j["t_end"] = cfg.t_end;
  if (std::isnan(res.energy_drift)) {
    j["energy_drift"] = nullptr;
  } else {
    j["energy_drift"] = res.energy_drift;
  }
  j["max_im_x"] = res.max_im;
  json zd = json::array();
  for (const cplx& v : res.init.zdot) zd.push_back({{"re", v.real()}, {"im", v.imag()}});
  j["zdot_0"] = zd;
  j["constraint_residual"] = res.init.constraint_residual;
  j["init_iterations"] = res.init.iterations;
  const IntegrationStats& st = res.trajectory.stats;
  j["steps"] = {{"accepted", st.accepted}, {"rejected", st.rejected}, {"rhs_evals", st.rhs_evals}};
  j["warnings"] = res.init.warnings;
  os << j.dump(2) << '\n';
}

}  // namespace calogero
