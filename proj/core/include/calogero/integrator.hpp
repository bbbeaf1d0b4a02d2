#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace calogero {

enum class IntegratorMethod {
  /// 5th order solution, 4th order error estimate, 7 stages (6 with FSAL).
  DormandPrince54,
  /// 8th order solution with the 5th/3rd order error estimate, 12 stages.
  DormandPrince853,
};

struct IntegratorOptions {
  IntegratorMethod method = IntegratorMethod::DormandPrince853;
  double rtol = 1e-10;
  double atol = 1e-10;
  /// Record a state at every multiple of this interval (steps land on
  /// the output times exactly). Zero records only the two endpoints.
  double output_every = 0.0;
  /// Step cap factor: h <= eta * (collision time scale).
  double step_cap_eta = 0.1;
  double min_step = 1e-14;
  /// Zero selects an automatic first step.
  double initial_step = 0.0;
  long max_steps = 100'000'000;
};

/// Per-state quantities logged alongside the trajectory.
struct Diagnostics {
  double energy = std::numeric_limits<double>::quiet_NaN();
  double max_im = std::numeric_limits<double>::quiet_NaN();
};

struct OdeSystem {
  std::function<void(double t, std::span<const double> y, std::span<double> dydt)> rhs;
  /// Collision time scale (min pair distance / max speed) at y; empty or
  /// non-finite means uncapped.
  std::function<double(std::span<const double> y, std::span<const double> dydt)> collision_time;
  std::function<Diagnostics(double t, std::span<const double> y)> monitor;
};

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
  double largest_step = 0.0;
  double smallest_step = std::numeric_limits<double>::infinity();
  /// max over accepted steps of h / (eta * collision time); <= 1 when the
  /// cap is honoured.
  double max_cap_ratio = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> energy_log;
  std::vector<double> max_im_log;
  IntegrationStats stats;
};

/// Adaptive embedded Runge-Kutta integration from t0 to t_end.
///
/// Error norm: max over components of |err_i| / (atol + rtol * max(|y_i|, |y_new_i|)),
/// with err_i blended from the 5th and 3rd order estimates for DormandPrince853.
/// Complex systems are integrated as interleaved real/imaginary pairs and so
/// share this norm. Throws StepUnderflowError when the controller asks for a
/// step below min_step; exceptions from rhs propagate unchanged.
Trajectory integrate(const OdeSystem& sys, std::vector<double> y0, double t0, double t_end,
                     const IntegratorOptions& opts);

/// Final state only; convenience for short propagations.
std::vector<double> propagate(const OdeSystem& sys, std::vector<double> y0, double t0, double t_end,
                              const IntegratorOptions& opts);

}  // namespace calogero
