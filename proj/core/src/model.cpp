#include "calogero/model.hpp"

#include <cmath>
#include <sstream>

#include "calogero/errors.hpp"
#include "kernel_detail.hpp"

namespace calogero {

namespace {

void check_pole(const ModelSpec& spec, cplx x) {
  if (detail::pole_distance(spec.kernel, x) < spec.collision_eps) {
    std::ostringstream os;
    os.precision(17);
    os << "kernel argument " << x << " within " << spec.collision_eps << " of a pole ("
       << to_string(spec.kernel) << ")";
    throw SingularityError(os.str());
  }
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Rational: return "rational";
    case KernelKind::Trigonometric: return "trigonometric";
    case KernelKind::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "rational") return KernelKind::Rational;
  if (name == "trigonometric" || name == "trig") return KernelKind::Trigonometric;
  if (name == "hyperbolic" || name == "hyp") return KernelKind::Hyperbolic;
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
  if (g == 0.0 || !std::isfinite(g)) throw ConfigError("coupling g must be finite and nonzero");
  if (n_particles < 1) throw ConfigError("n_particles must be >= 1");
  if (n_solitons < 0) throw ConfigError("n_solitons must be >= 0");
  if (!(collision_eps > 0.0)) throw ConfigError("collision_eps must be positive");
  for (double v : {c.c0, c.c1, c.c2, c.c3, lambda}) {
    if (!std::isfinite(v)) throw ConfigError("prepotential coefficients and lambda must be finite");
  }
}

void ModelSpec::validate_soliton_mode() const {
  validate();
  if (c.c3 != 0.0) {
    throw ConfigError("soliton construction requires c3 = 0 (u_bc must vanish between particles and solitons)");
  }
}

std::optional<std::string> ModelSpec::stability_warning() const {
  if (kernel != KernelKind::Rational || c.c2 == 0.0) return std::nullopt;
  if (c.c1 * c.c1 > 4.0 * c.c0 * c.c2) return std::nullopt;
  std::ostringstream os;
  os << "prepotential has no trapping well: c1^2 = " << c.c1 * c.c1 << " <= 4 c0 c2 = " << 4.0 * c.c0 * c.c2
     << "; the equilibrium problem is expected to have no solution";
  return os.str();
}

cplx kernel(const ModelSpec& spec, cplx x) {
  check_pole(spec, x);
  switch (spec.kernel) {
    case KernelKind::Rational: return 1.0 / x;
    case KernelKind::Trigonometric: return std::cos(x) / std::sin(x);
    case KernelKind::Hyperbolic: return 1.0 / std::tanh(x);
  }
  return {};
}

cplx kernel_prime(const ModelSpec& spec, cplx x) {
  check_pole(spec, x);
  switch (spec.kernel) {
    case KernelKind::Rational: return -1.0 / (x * x);
    case KernelKind::Trigonometric: {
      const cplx s = std::sin(x);
      return -1.0 / (s * s);
    }
    case KernelKind::Hyperbolic: {
      const cplx s = std::sinh(x);
      return -1.0 / (s * s);
    }
  }
  return {};
}

cplx kernel_sine(const ModelSpec& spec, cplx x) {
  switch (spec.kernel) {
    case KernelKind::Rational: return x;
    case KernelKind::Trigonometric: return std::sin(x);
    case KernelKind::Hyperbolic: return std::sinh(x);
  }
  return {};
}

cplx pair_potential(const ModelSpec& spec, cplx x) {
  check_pole(spec, x);
  const cplx s = kernel_sine(spec, x);
  return 1.0 / (s * s);
}

cplx pair_force(const ModelSpec& spec, cplx x) {
  check_pole(spec, x);
  const cplx s = kernel_sine(spec, x);
  return 2.0 * kernel(spec, x) / (s * s);
}

cplx prepot_w(const ModelSpec& spec, cplx x) {
  const auto& c = spec.c;
  switch (spec.kernel) {
    case KernelKind::Rational:
      return c.c0 + x * (c.c1 + x * (c.c2 + x * c.c3));
    case KernelKind::Trigonometric:
      return c.c0 + c.c1 * std::cos(2.0 * x) + c.c2 * std::sin(2.0 * x) + c.c3 * x;
    case KernelKind::Hyperbolic:
      return c.c0 + c.c1 * std::cosh(2.0 * x) + c.c2 * std::sinh(2.0 * x) + c.c3 * x;
  }
  return {};
}

cplx prepot_w_prime(const ModelSpec& spec, cplx x) {
  const auto& c = spec.c;
  switch (spec.kernel) {
    case KernelKind::Rational:
      return c.c1 + x * (2.0 * c.c2 + 3.0 * c.c3 * x);
    case KernelKind::Trigonometric:
      return -2.0 * c.c1 * std::sin(2.0 * x) + 2.0 * c.c2 * std::cos(2.0 * x) + c.c3;
    case KernelKind::Hyperbolic:
      return 2.0 * c.c1 * std::sinh(2.0 * x) + 2.0 * c.c2 * std::cosh(2.0 * x) + c.c3;
  }
  return {};
}

double prepot_W(const ModelSpec& spec, double x) {
  const auto& c = spec.c;
  switch (spec.kernel) {
    case KernelKind::Rational:
      return x * (c.c0 + x * (c.c1 / 2.0 + x * (c.c2 / 3.0 + x * c.c3 / 4.0)));
    case KernelKind::Trigonometric:
      return c.c0 * x + 0.5 * c.c1 * std::sin(2.0 * x) + 0.5 * c.c2 * (1.0 - std::cos(2.0 * x)) +
             0.5 * c.c3 * x * x;
    case KernelKind::Hyperbolic:
      return c.c0 * x + 0.5 * c.c1 * std::sinh(2.0 * x) + 0.5 * c.c2 * (std::cosh(2.0 * x) - 1.0) +
             0.5 * c.c3 * x * x;
  }
  return 0.0;
}

cplx leftover_v(const ModelSpec& spec, cplx x) {
  const auto& c = spec.c;
  const double g = spec.g;
  switch (spec.kernel) {
    case KernelKind::Rational:
      return g * x * (c.c2 + 1.5 * c.c3 * x);
    case KernelKind::Trigonometric:
      return g * (c.c2 * std::cos(2.0 * x) - c.c1 * std::sin(2.0 * x));
    case KernelKind::Hyperbolic:
      return g * (c.c2 * std::cosh(2.0 * x) + c.c1 * std::sinh(2.0 * x));
  }
  return {};
}

cplx leftover_v_prime(const ModelSpec& spec, cplx x) {
  const auto& c = spec.c;
  const double g = spec.g;
  switch (spec.kernel) {
    case KernelKind::Rational:
      return g * (c.c2 + 3.0 * c.c3 * x);
    case KernelKind::Trigonometric:
      return -2.0 * g * (c.c2 * std::sin(2.0 * x) + c.c1 * std::cos(2.0 * x));
    case KernelKind::Hyperbolic:
      return 2.0 * g * (c.c2 * std::sinh(2.0 * x) + c.c1 * std::cosh(2.0 * x));
  }
  return {};
}

cplx onebody_V(const ModelSpec& spec, Species species, cplx x) {
  const double weight = spec.total_mass() - mass_of(species);
  const cplx w = prepot_w(spec, x);
  return 0.5 * w * w - weight * leftover_v(spec, x);
}

cplx onebody_V_prime(const ModelSpec& spec, Species species, cplx x) {
  const double weight = spec.total_mass() - mass_of(species);
  return prepot_w(spec, x) * prepot_w_prime(spec, x) - weight * leftover_v_prime(spec, x);
}

}  // namespace calogero
