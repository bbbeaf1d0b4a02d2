#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "calogero/model.hpp"

namespace calogero {

/// Largest residual seen by a sampling suite and where it occurred.
struct ResidualReport {
  std::string name;
  double max_abs_residual = 0.0;
  int sample_count = 0;
  std::vector<double> worst_point;
};

/// |f(x) f(x+y) - f(x) f(y) + f(x+y) f(y) - C| with f = g K and
/// C = 0, -g^2, +g^2 for the rational, trigonometric and hyperbolic kernels.
double residual_three_body(const ModelSpec& spec, double x, double y);

/// |f(x)^2 - g f'(x) - C| with f = -g K and C = 0, -g^2, +g^2 for the
/// rational, trigonometric and hyperbolic kernels.
double residual_kernel_identity(const ModelSpec& spec, double x);

/// Optional replacement for w or v, used to feed deliberately wrong forms to
/// the decomposition check.
using RealFunction = std::function<double(double)>;

struct DecompositionForms {
  RealFunction w;  // defaults to prepot_w
  RealFunction v;  // defaults to leftover_v
};

/// Translation-invariance test of the leftover
///   R(xb, xc) = (w(xb) - w(xc)) g K(xb - xc) - v(xb) - v(xc):
/// returns |R(xb + shift, xc + shift) - R(xb, xc)|, which vanishes exactly
/// when R depends on xb - xc only.
double residual_external_decomposition(const ModelSpec& spec, double xb, double xc, double shift,
                                       const DecompositionForms& forms = {});

struct SuiteOptions {
  int samples = 100;
  std::uint64_t seed = 20240601;
  /// Replacement forms for the decomposition suite (negative controls).
  DecompositionForms forms{};
};

/// Each suite draws `samples` points from the family's natural domain
/// (rational [-10, 10] with |x| >= 0.05; trigonometric (0.05, pi - 0.05);
/// hyperbolic 0.05 <= |x| <= 10) and reports the max residual. Sampling is
/// deterministic in the seed.
ResidualReport sample_three_body(const ModelSpec& spec, const SuiteOptions& opts = {});
ResidualReport sample_kernel_identity(const ModelSpec& spec, const SuiteOptions& opts = {});
ResidualReport sample_external_decomposition(const ModelSpec& spec, const SuiteOptions& opts = {});

/// All three suites for one spec.
std::vector<ResidualReport> verify_all(const ModelSpec& spec, const SuiteOptions& opts = {});

}  // namespace calogero
