#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "calogero/dynamics.hpp"
#include "calogero/hydro.hpp"
#include "calogero/integrator.hpp"
#include "calogero/model.hpp"
#include "calogero/soliton_init.hpp"

namespace calogero {

/// Flat key = value scenario file. '#' starts a comment; `solitons` holds a
/// JSON-style array of [re, im] pairs. Unknown keys are rejected.
struct ScenarioConfig {
  std::string kernel = "rational";
  double g = 1.0;
  double c0 = 0.0;
  double c1 = 1.0;
  double c2 = 0.0;
  double c3 = 0.0;
  int n_particles = 10;
  std::vector<cplx> solitons;
  double t_end = 1.0;
  double output_every = 0.01;
  double rtol = 1e-10;
  double atol = 1e-10;
  double gamma = 1.0;
  double init_tol = 1e-10;
  long max_iter = 1'000'000;
  int grid_size = 2048;
  double lambda = 1.0;
  double collision_eps = 1e-10;
  /// "dual" or "newtonian".
  std::string dynamics = "dual";
  /// Negative controls for `verify`: "", "v-form" or "w-form".
  std::string tamper;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);

/// Validated ModelSpec (M = solitons.size()). Throws ConfigError.
ModelSpec to_spec(const ScenarioConfig& cfg);

/// Shortest text that reads back to the same double, at most 17 significant
/// digits; locale independent.
std::string format_double(double v);

/// Built-in presets: "fig1-one-soliton", "fig1-two-soliton".
ScenarioConfig preset_config(std::string_view name);
std::vector<std::string> preset_names();

InitReport run_init(const ScenarioConfig& cfg);

struct EvolveResult {
  InitReport init;
  Trajectory trajectory;
  /// max_t |E(t) - E(0)| / |E(0)| of the total (complex) energy; divided by
  /// |E_particles| + |E_solitons| instead when E(0) cancels to zero.
  double energy_drift = 0.0;
  /// max over output times of max_j |Im x_j| (zero for Newtonian runs).
  double max_im = 0.0;
};

/// Gradient-flow initialisation followed by dual or Newtonian evolution.
EvolveResult run_evolve(const ScenarioConfig& cfg);

/// Real particle positions and complex soliton positions of one output row.
struct Snapshot {
  std::vector<double> x;
  std::vector<cplx> z;
};
Snapshot snapshot(const ScenarioConfig& cfg, std::span<const double> y);

/// Relaxed positions and their field grid (density, Hilbert transform and,
/// with one soliton, the Lorentzian velocity profile).
struct HydroResult {
  InitReport init;
  FieldGrid grid;
  std::vector<cplx> u_plus;
};
HydroResult run_hydro(const ScenarioConfig& cfg);

// Writers -------------------------------------------------------------------

/// Header `t,x_1..x_N[,Re_z_1,Im_z_1,...]`, one row per output time.
void write_trajectory_csv(std::ostream& os, const ScenarioConfig& cfg, const Trajectory& traj);
void write_init_report(std::ostream& os, const InitReport& rep);
void write_fields_csv(std::ostream& os, const HydroResult& res);
/// JSON summary: energy drift, max |Im x|, initial zdot, constraint residual.
void write_summary_json(std::ostream& os, const ScenarioConfig& cfg, const EvolveResult& res);

}  // namespace calogero
