#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace calogero {

using cplx = std::complex<double>;

/// Pair kernel family: K(x) = 1/x, cot x or coth x.
enum class KernelKind { Rational, Trigonometric, Hyperbolic };

std::string_view to_string(KernelKind kind);
/// Accepts "rational", "trigonometric"/"trig", "hyperbolic"/"hyp".
KernelKind parse_kernel_kind(std::string_view name);

/// Particles carry mass +1, solitons mass -1.
enum class Species { Particle, Soliton };

inline double mass_of(Species s) { return s == Species::Particle ? 1.0 : -1.0; }

/// Prepotential coefficients. The c3 term is the extended form which
/// couples particles to solitons; soliton construction needs c3 == 0.
struct Prepotential {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

struct ModelSpec {
  KernelKind kernel = KernelKind::Rational;
  double g = 1.0;
  Prepotential c{};
  int n_particles = 1;
  int n_solitons = 0;
  /// Split of the prepotential between u+ and u- in the meromorphic fields.
  double lambda = 1.0;
  /// Distances below this are treated as collisions / singular arguments.
  double collision_eps = 1e-10;

  /// Total mass N - M.
  double total_mass() const { return static_cast<double>(n_particles - n_solitons); }

  /// Throws ConfigError when g == 0, N < 1, M < 0 or eps <= 0.
  void validate() const;

  /// Additional checks for soliton construction (c3 must vanish).
  void validate_soliton_mode() const;

  /// Rational kernel with c2 != 0 has a trapping well only when
  /// c1^2 > 4 c0 c2. Returns a human-readable warning otherwise.
  std::optional<std::string> stability_warning() const;
};

// Kernel ------------------------------------------------------------------

/// K(x) for the model's kernel family. Throws SingularityError when x sits within
/// collision_eps of a pole (0, or any multiple of pi for the trigonometric
/// family).
cplx kernel(const ModelSpec& spec, cplx x);

/// dK/dx, same pole checks as kernel().
cplx kernel_prime(const ModelSpec& spec, cplx x);

/// The "sine" s(x) with K = s'/s: x, sin x or sinh x.
cplx kernel_sine(const ModelSpec& spec, cplx x);

/// Pair potential profile P(x) = 1/s(x)^2. The physical pair energy of two
/// like-species bodies is g^2 P(x).
cplx pair_potential(const ModelSpec& spec, cplx x);

/// Force profile -dP/dx = 2 K(x) / s(x)^2, so the like-species pair force
/// is g^2 * pair_force(x).
cplx pair_force(const ModelSpec& spec, cplx x);

// Prepotential --------------------------------------------------------------

/// w(x): c0 + c1 x + c2 x^2 + c3 x^3 (rational),
/// c0 + c1 cos 2x + c2 sin 2x + c3 x (trigonometric),
/// c0 + c1 cosh 2x + c2 sinh 2x + c3 x (hyperbolic).
cplx prepot_w(const ModelSpec& spec, cplx x);
cplx prepot_w_prime(const ModelSpec& spec, cplx x);

/// Antiderivative of w with W(0) = 0.
double prepot_W(const ModelSpec& spec, double x);

/// One-body leftover v(x) of the decomposition
///   (w(xb) - w(xc)) * g K(xb - xc) = u(xb - xc) + v(xb) + v(xc).
/// Rational: g c2 x + (3g/2) c3 x^2; trig: g (c2 cos 2x - c1 sin 2x);
/// hyperbolic: g (c2 cosh 2x + c1 sinh 2x).
cplx leftover_v(const ModelSpec& spec, cplx x);
cplx leftover_v_prime(const ModelSpec& spec, cplx x);

/// One-body potential entering x'' = -V'(x) for the given species:
///
///   V(x) = w(x)^2 / 2 - (m_tot - m_a) v(x)
///
/// The minus sign comes from the dual flow using the kernel with a negative
/// sign (f = -g K); see leftover_v() for v.
cplx onebody_V(const ModelSpec& spec, Species species, cplx x);
cplx onebody_V_prime(const ModelSpec& spec, Species species, cplx x);

}  // namespace calogero
