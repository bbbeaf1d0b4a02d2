#pragma once

// Generated by tests/oracle/derive.py; do not edit.

namespace oracle {

// Roots of the physicists' Hermite polynomials (mpmath, 40 digits).
inline constexpr double kHermite3[3] = {-1.224744871391589, 0.0, 1.224744871391589};
inline constexpr double kHermite10[10] = {-3.4361591188377374, -2.5327316742327897, -1.7566836492998819, -1.0366108297895136, -0.3429013272237046, 0.3429013272237046, 1.0366108297895136, 1.7566836492998819, 2.5327316742327897, 3.4361591188377374};

// One-soliton preset state, g = 1, c = (0, 1, 0.06, 0), N = 31, z = 0.0239i
// (scipy BFGS + hybr, residual 3.0e-15).
inline constexpr double kOneSolitonZdotRe = -43.14695472904308;
inline constexpr double kOneSolitonZdotIm = -0.00103031185848879;
inline constexpr double kOneSolitonXFirst = -11.520767277138102;
inline constexpr double kOneSolitonXLast = 5.673567061602487;
// Same with g = 0.5.
inline constexpr double kOneSolitonHalfGZdotRe = -22.2513507497895;
inline constexpr double kOneSolitonHalfGZdotIm = -0.0009989424626438048;
// Two solitons at +-0.0239i, g = 1 (residual 4.3e-15).
inline constexpr double kTwoSolitonZdot1Re = -43.48251150786885;
inline constexpr double kTwoSolitonZdot1Im = -0.001287403383581413;
// Particle and prepotential terms only (no soliton-soliton term).
inline constexpr double kTwoSolitonParticleOnlyRe = -64.40301359991905;

// V'(0.0239i) for the soliton species of the one-soliton preset.
inline constexpr double kSolitonVPrimeRe = -1.8601028178;
inline constexpr double kSolitonVPrimeIm = 0.0238999017061832;

inline constexpr double kTwoBodyU08 = 0.16999637075426444;

inline constexpr double kHyperbolicThreeBodyLhs = 4.0;  // equals +g^2 = 4

}  // namespace oracle
