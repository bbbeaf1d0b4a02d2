#include "calogero/functional_verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace calogero {

namespace {

constexpr double kGuard = 0.05;
constexpr double kPi = std::numbers::pi;

double three_body_constant(const ModelSpec& spec) {
  const double g2 = spec.g * spec.g;
  switch (spec.kernel) {
    case KernelKind::Rational: return 0.0;
    case KernelKind::Trigonometric: return -g2;
    case KernelKind::Hyperbolic: return g2;
  }
  return 0.0;
}

double real_kernel(const ModelSpec& spec, double x) { return kernel(spec, x).real(); }

// Distance of x to the nearest pole on the real axis.
double real_pole_distance(const ModelSpec& spec, double x) {
  if (spec.kernel == KernelKind::Trigonometric) return std::abs(x - kPi * std::round(x / kPi));
  return std::abs(x);
}

class Sampler {
 public:
  Sampler(const ModelSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

  // One point from the family's natural domain.
  double point() {
    switch (spec_.kernel) {
      case KernelKind::Rational: {
        std::uniform_real_distribution<double> d(-10.0, 10.0);
        for (;;) {
          const double x = d(rng_);
          if (std::abs(x) >= kGuard) return x;
        }
      }
      case KernelKind::Trigonometric: {
        std::uniform_real_distribution<double> d(kGuard, kPi - kGuard);
        return d(rng_);
      }
      case KernelKind::Hyperbolic: {
        std::uniform_real_distribution<double> mag(kGuard, 10.0);
        std::bernoulli_distribution sign(0.5);
        const double x = mag(rng_);
        return sign(rng_) ? x : -x;
      }
    }
    return 1.0;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  bool clear_of_poles(std::initializer_list<double> xs) const {
    for (double x : xs) {
      if (real_pole_distance(spec_, x) < kGuard) return false;
    }
    return true;
  }

 private:
  const ModelSpec& spec_;
  std::mt19937_64 rng_;
};

void record(ResidualReport& report, double residual, std::vector<double> point) {
  ++report.sample_count;
  if (report.sample_count == 1 || residual > report.max_abs_residual) {
    report.max_abs_residual = residual;
    report.worst_point = std::move(point);
  }
}

}  // namespace

double residual_three_body(const ModelSpec& spec, double x, double y) {
  const double fx = spec.g * real_kernel(spec, x);
  const double fy = spec.g * real_kernel(spec, y);
  const double fxy = spec.g * real_kernel(spec, x + y);
  return std::abs(fx * fxy - fx * fy + fxy * fy - three_body_constant(spec));
}

double residual_kernel_identity(const ModelSpec& spec, double x) {
  const double f = -spec.g * real_kernel(spec, x);
  const double fp = -spec.g * kernel_prime(spec, x).real();
  // Same constant as the three-body identity: cot^2 - 1/sin^2 = -1, coth^2 - 1/sinh^2 = +1.
  const double c = three_body_constant(spec);
  return std::abs(f * f - spec.g * fp - c);
}

double residual_external_decomposition(const ModelSpec& spec, double xb, double xc, double shift,
                                       const DecompositionForms& forms) {
  auto w = [&](double x) { return forms.w ? forms.w(x) : prepot_w(spec, x).real(); };
  auto v = [&](double x) { return forms.v ? forms.v(x) : leftover_v(spec, x).real(); };
  auto leftover = [&](double b, double c) {
    return (w(b) - w(c)) * spec.g * real_kernel(spec, b - c) - v(b) - v(c);
  };
  if (shift == 0.0) return 0.0;
  return std::abs(leftover(xb + shift, xc + shift) - leftover(xb, xc));
}

ResidualReport sample_three_body(const ModelSpec& spec, const SuiteOptions& opts) {
  ResidualReport report{"three_body", 0.0, 0, {}};
  Sampler sampler(spec, opts.seed);
  while (report.sample_count < opts.samples) {
    const double x = sampler.point();
    const double y = sampler.point();
    if (!sampler.clear_of_poles({x, y, x + y})) continue;
    record(report, residual_three_body(spec, x, y), {x, y});
  }
  return report;
}

ResidualReport sample_kernel_identity(const ModelSpec& spec, const SuiteOptions& opts) {
  ResidualReport report{"kernel_identity", 0.0, 0, {}};
  Sampler sampler(spec, opts.seed + 1);
  while (report.sample_count < opts.samples) {
    const double x = sampler.point();
    record(report, residual_kernel_identity(spec, x), {x});
  }
  return report;
}

ResidualReport sample_external_decomposition(const ModelSpec& spec, const SuiteOptions& opts) {
  ResidualReport report{"external_decomposition", 0.0, 0, {}};
  Sampler sampler(spec, opts.seed + 2);
  // Hyperbolic terms grow like e^{2|x|}; keep the shifted points where the
  // residual is still resolvable in double precision.
  const double span = spec.kernel == KernelKind::Hyperbolic ? 2.0
                      : spec.kernel == KernelKind::Trigonometric ? 1.5
                                                                 : 5.0;
  while (report.sample_count < opts.samples) {
    const double xb = sampler.uniform(-span, span);
    const double xc = sampler.uniform(-span, span);
    const double shift = sampler.uniform(-span, span);
    if (!sampler.clear_of_poles({xb - xc})) continue;
    record(report, residual_external_decomposition(spec, xb, xc, shift, opts.forms), {xb, xc, shift});
  }
  return report;
}

std::vector<ResidualReport> verify_all(const ModelSpec& spec, const SuiteOptions& opts) {
  return {sample_three_body(spec, opts), sample_kernel_identity(spec, opts),
          sample_external_decomposition(spec, opts)};
}

}  // namespace calogero
