#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "calogero/model.hpp"

namespace calogero {

/// Uniform real-axis grid with the fluid fields sampled on it.
struct FieldGrid {
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> v;
  std::vector<double> rhoH;

  std::size_t size() const { return x.size(); }
  double spacing() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }
};

/// G points covering [x_1 - m, x_N + m] with m = margin * (x_N - x_1).
/// Fields are zero-initialised.
FieldGrid make_grid(std::span<const double> xs, std::size_t points = 2048, double margin = 0.1);

/// Density rho = 1/x'(s) from the monotone cubic (PCHIP) interpolant of
/// x(s) through (j, x_j), j = 1..N. Each particle owns the unit interval of s
/// around it; the outer half interval at each end is spread as a linear ramp
/// from zero over one end slope, so rho is continuous and integrates to N.
/// A positive bandwidth applies Gaussian smoothing of that width (x units).
/// Throws Error for non-increasing input or fewer than two particles.
std::vector<double> empirical_density(std::span<const double> xs, std::span<const double> grid,
                                      double bandwidth);

/// Default smoothing width: two grid cells.
double default_bandwidth(const FieldGrid& grid);

/// make_grid + empirical_density(default bandwidth) + hilbert_transform, v = 0.
FieldGrid density_grid(std::span<const double> xs, std::size_t points = 2048, double margin = 0.1);

/// rhoH(x) = (1/pi) PV int rho(y) / (y - x) dy by the punctured trapezoid rule
/// (the singular node is skipped, so the stencil is odd around it). For the
/// unit-mass semicircle of radius R this gives -2x / (pi R^2) inside.
std::vector<double> hilbert_transform(std::span<const double> x, std::span<const double> rho);
std::vector<double> hilbert_transform(const FieldGrid& grid);

/// Linear interpolation of a grid field at point p (zero outside the grid).
double interpolate(const FieldGrid& grid, std::span<const double> field, double p);

/// Centered-difference derivative of a grid field (one-sided at the ends).
std::vector<double> derivative(const FieldGrid& grid, std::span<const double> field);

/// u+(x) = i g sum_a 1/(x - z_a) + i lambda w(x). Rational kernel only.
cplx u_plus_micro(const ModelSpec& spec, std::span<const cplx> z, cplx x);
/// u-(x) = -i g sum_j 1/(x - x_j) + i (1 - lambda) w(x). Rational kernel only.
cplx u_minus_micro(const ModelSpec& spec, std::span<const double> xs, cplx x);

/// Floor below which rho counts as zero for log terms: 1e-12 max rho.
double density_floor(const FieldGrid& grid);

/// u+ = v - i pi g rhoH + i g d/dx ln sqrt(rho) on grid indices [begin, end).
/// Throws ZeroDensityError if rho is below the floor anywhere in range.
std::vector<cplx> u_plus_hydro(const FieldGrid& grid, double g, std::size_t begin, std::size_t end);

/// |sum_{k != j} 1/(x_j - x_k) - [d/dx ln rho / 2 - pi rhoH](x_j)| with the
/// fields taken from `grid` (built from the same xs). Throws BoundaryError
/// unless at least floor(N/10) particles lie on each side of j.
double sum_identity_residual(std::span<const double> xs, std::size_t j, const FieldGrid& grid);

struct JumpReport {
  /// max |u-(x + i eps) - u-(x - i eps) + 2 pi g rho(x)|
  double max_abs = 0.0;
  /// same deviation divided by 2 pi |g| rho(x), maximised
  double max_rel = 0.0;
  std::size_t points = 0;
};

/// Sokhotski jump of u- across the real axis, over interior grid points
/// (the middle 80% of the particle range).
JumpReport u_minus_jump(const ModelSpec& spec, std::span<const double> xs, const FieldGrid& grid, double eps);

/// Trapezoidal quadrature of
///   rho v^2 / 2 + (pi^2 g^2 / 6) rho^3 + (pi g^2 / 2) rho d(rhoH)/dx
///   + g^2 (d rho/dx)^2 / (8 rho) + rho V
/// with V the particle-species one-body potential. The gradient term is
/// dropped where rho is below the floor.
double fluid_energy(const FieldGrid& grid, const ModelSpec& spec);

struct OneSolitonFields {
  std::vector<double> v;
  /// pi rhoH - d/dx ln sqrt(rho) + (x - a)/((x - a)^2 + b^2) + w(x)/g;
  /// zero where rho is below the floor.
  std::vector<double> residual;
};

/// Velocity profile v = -g b / ((x - a)^2 + b^2) for z = a + ib and the
/// one-soliton constraint residual for the grid's density.
/// Throws ConfigError for real z.
OneSolitonFields one_soliton_fields(const ModelSpec& spec, cplx z, const FieldGrid& grid);

/// Location of the largest excess of the Gaussian kernel density of
/// `positions` over that of `background`, searched on [lo, hi].
double excess_density_peak(std::span<const double> positions, std::span<const double> background, double sigma,
                           double lo, double hi);

}  // namespace calogero
