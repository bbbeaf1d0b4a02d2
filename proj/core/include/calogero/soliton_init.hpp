#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "calogero/model.hpp"

namespace calogero {

struct InitReport {
  std::vector<double> x;
  std::vector<double> p;
  std::vector<cplx> zdot;
  double final_U = 0.0;
  long iterations = 0;
  /// max_j |dU/dx_j| at the returned configuration.
  double constraint_residual = 0.0;
  std::vector<std::string> warnings;
  /// U at the start and after every accepted step.
  std::vector<double> u_history;
};

/// U = sum_j W(x_j) - g sum_{j<k} ln|s(x_j - x_k)|
///     + (g/2) sum_j sum_a [ln|s(x_j - z_a)| + ln|s(x_j - conj z_a)|]
/// with s = x, sin x, sinh x.
double electrostatic_U(const ModelSpec& spec, std::span<const double> x, std::span<const cplx> z);

/// dU/dx_j = w(x_j) - g sum_k K(x_j - x_k) + (g/2) sum_a [K(x_j - z_a) + K(x_j - conj z_a)].
/// Equals Im x_j' of the dual flow at real x.
std::vector<double> constraint_residual(const ModelSpec& spec, std::span<const double> x,
                                        std::span<const cplx> z);

struct GradientFlowOptions {
  double gamma = 1.0;
  double tol = 1e-10;
  long max_iter = 1'000'000;
  /// Starting configuration; default_initial_positions() when empty.
  std::optional<std::vector<double>> x0;
  /// First pseudo-time step.
  double initial_dt = 1e-3;
};

/// Relaxes x' = -gamma dU/dx until max|dU/dx| < tol.
///
/// Each pseudo-time step is linearly implicit, (I/dt + gamma H) dx = -gamma grad U
/// with the exact Hessian H, so the stiff short-range repulsion does not force
/// tiny steps. A step is accepted only if U does not increase and the
/// ordering of x survives; accepted steps double dt, rejected ones quarter it.
///
/// Throws ConvergenceError when max_iter is exhausted or the cloud runs away
/// (no confining well), ConfigError for a bad x0.
InitReport gradient_flow(const ModelSpec& spec, std::span<const cplx> z, const GradientFlowOptions& opts = {});

/// Tolerated U increase per accepted gradient-flow step: 1e-12, widened to
/// 1e-14 |U| once rounding in U itself exceeds that.
double descent_slack(double u);

/// p_j = (i g / 2) sum_a [K(x_j - z_a) - K(x_j - conj z_a)]  (real).
std::vector<double> momenta_from_solitons(const ModelSpec& spec, std::span<const double> x,
                                          std::span<const cplx> z);

/// z_a' of the dual flow at real particle positions x.
std::vector<cplx> soliton_velocities(const ModelSpec& spec, std::span<const double> x, std::span<const cplx> z);

/// sqrt(g / omega) times the roots of the physicists' Hermite polynomial H_N,
/// from the eigenvalues of its Jacobi matrix (zero diagonal, off-diagonal
/// sqrt(k/2)). Sorted ascending.
std::vector<double> harmonic_equilibrium_reference(int n, double omega, double g);

/// Deterministic starting point for gradient_flow: Hermite roots scaled to
/// the curvature of W at its well and centered on it. Trigonometric clouds are
/// compressed to fit inside one period.
std::vector<double> default_initial_positions(const ModelSpec& spec);

}  // namespace calogero
