#pragma once

#include <cmath>
#include <numbers>

#include "calogero/model.hpp"

namespace calogero::detail {

// Distance from x to the nearest pole of the kernel family.
inline double pole_distance(KernelKind kind, cplx x) {
  constexpr double pi = std::numbers::pi;
  switch (kind) {
    case KernelKind::Rational:
      return std::abs(x);
    case KernelKind::Trigonometric:
      return std::abs(x - pi * std::round(x.real() / pi));
    case KernelKind::Hyperbolic:
      return std::abs(x - cplx(0.0, pi * std::round(x.imag() / pi)));
  }
  return 0.0;
}

inline cplx kernel_unchecked(KernelKind kind, cplx x) {
  switch (kind) {
    case KernelKind::Rational: return 1.0 / x;
    case KernelKind::Trigonometric: return std::cos(x) / std::sin(x);
    case KernelKind::Hyperbolic: return 1.0 / std::tanh(x);
  }
  return {};
}

inline cplx sine_unchecked(KernelKind kind, cplx x) {
  switch (kind) {
    case KernelKind::Rational: return x;
    case KernelKind::Trigonometric: return std::sin(x);
    case KernelKind::Hyperbolic: return std::sinh(x);
  }
  return {};
}

}  // namespace calogero::detail
