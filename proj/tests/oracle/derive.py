"""Independent reference values for the C++ test suites.

Uses numpy/scipy/mpmath only (no code shared with the library) and writes
tests/oracle_values.hpp. Run from the repository root:

    python3 tests/oracle/derive.py > tests/oracle_values.hpp
"""
import mpmath as mp
import numpy as np
from numpy.polynomial.hermite import hermroots
from scipy.optimize import minimize, root

mp.mp.dps = 40


def hermite_roots(n):
    # numpy companion-matrix roots, polished by mpmath Newton on H_n
    guess = np.sort(hermroots([0] * n + [1]))
    out = []
    for r in guess:
        out.append(mp.findroot(lambda t: mp.hermite(n, t), mp.mpf(r)))
    return sorted(out)


def fig1_state(g, c, n, zs):
    """Constraint solution for the rational preset family, polished by scipy root."""
    c0, c1, c2 = c

    def U(x):
        W = c0 * x + c1 * x**2 / 2 + c2 * x**3 / 3
        d = x[:, None] - x[None, :]
        iu = np.triu_indices(n, 1)
        u = W.sum() - g * np.log(np.abs(d[iu])).sum()
        for z in zs:
            u += 0.5 * g * (np.log(np.abs(x - z)) + np.log(np.abs(x - np.conj(z)))).sum()
        return u

    def grad(x):
        w = c0 + c1 * x + c2 * x**2
        d = x[:, None] - x[None, :]
        np.fill_diagonal(d, np.inf)
        r = w - g * (1 / d).sum(1)
        for z in zs:
            r += 0.5 * g * (1 / (x - z) + 1 / (x - np.conj(z))).real
        return r

    x0 = np.sqrt(g) * np.sort(hermroots([0] * n + [1]))
    r = minimize(U, x0, jac=grad, method="BFGS", options={"gtol": 1e-12, "maxiter": 100000})
    sol = root(grad, np.sort(r.x), method="hybr", options={"xtol": 1e-15})
    x = np.sort(sol.x)
    zdots = []
    for z in zs:
        others = [q for q in zs if q != z]
        w = c0 + c1 * z + c2 * z * z
        zd = 1j * w + 1j * g * sum(1 / (z - q) for q in others) - 1j * g * np.sum(1 / (z - x))
        zdots.append(zd)
    particle_only = [-1j * g * np.sum(1 / (z - x)) + 1j * (c0 + c1 * z + c2 * z * z) for z in zs]
    return x, zdots, particle_only, np.max(np.abs(grad(x)))


def cpp_double(v):
    return repr(float(v))


def emit():
    lines = ["#pragma once", "", "// Generated by tests/oracle/derive.py; do not edit.", "",
             "namespace oracle {", ""]

    h3 = hermite_roots(3)
    h10 = hermite_roots(10)
    lines.append("// Roots of the physicists' Hermite polynomials (mpmath, 40 digits).")
    lines.append("inline constexpr double kHermite3[3] = {" + ", ".join(cpp_double(v) for v in h3) + "};")
    lines.append("inline constexpr double kHermite10[10] = {" + ", ".join(cpp_double(v) for v in h10) + "};")
    lines.append("")

    c = (0.0, 1.0, 0.06)
    x1, zd1, _, res1 = fig1_state(1.0, c, 31, [0.0239j])
    lines.append("// One-soliton preset state, g = 1, c = (0, 1, 0.06, 0), N = 31, z = 0.0239i")
    lines.append(f"// (scipy BFGS + hybr, residual {res1:.1e}).")
    lines.append(f"inline constexpr double kOneSolitonZdotRe = {cpp_double(zd1[0].real)};")
    lines.append(f"inline constexpr double kOneSolitonZdotIm = {cpp_double(zd1[0].imag)};")
    lines.append(f"inline constexpr double kOneSolitonXFirst = {cpp_double(x1[0])};")
    lines.append(f"inline constexpr double kOneSolitonXLast = {cpp_double(x1[-1])};")
    _, zdh, _, _ = fig1_state(0.5, c, 31, [0.0239j])
    lines.append("// Same with g = 0.5.")
    lines.append(f"inline constexpr double kOneSolitonHalfGZdotRe = {cpp_double(zdh[0].real)};")
    lines.append(f"inline constexpr double kOneSolitonHalfGZdotIm = {cpp_double(zdh[0].imag)};")

    _, zd2, po2, res2 = fig1_state(1.0, c, 31, [0.0239j, -0.0239j])
    lines.append(f"// Two solitons at +-0.0239i, g = 1 (residual {res2:.1e}).")
    lines.append(f"inline constexpr double kTwoSolitonZdot1Re = {cpp_double(zd2[0].real)};")
    lines.append(f"inline constexpr double kTwoSolitonZdot1Im = {cpp_double(zd2[0].imag)};")
    lines.append("// Particle and prepotential terms only (no soliton-soliton term).")
    lines.append(f"inline constexpr double kTwoSolitonParticleOnlyRe = {cpp_double(po2[0].real)};")
    lines.append("")

    # z'' = -V'(z) for the one-soliton preset: V = w^2/2 - (m_tot - m_s) g c2 z,
    # m_tot - m_s = (31 - 1) - (-1) = 31.
    z = mp.mpc(0, "0.0239")
    w = z + mp.mpf("0.06") * z**2
    vprime = w * (1 + mp.mpf("0.12") * z) - 31 * mp.mpf("0.06")
    lines.append("// V'(0.0239i) for the soliton species of the one-soliton preset.")
    lines.append(f"inline constexpr double kSolitonVPrimeRe = {cpp_double(vprime.real)};")
    lines.append(f"inline constexpr double kSolitonVPrimeIm = {cpp_double(vprime.imag)};")
    lines.append("")

    # Two-body electrostatic energy a^2 - ln(2a) at a = 0.8 and its minimiser.
    a = mp.mpf("0.8")
    lines.append(f"inline constexpr double kTwoBodyU08 = {cpp_double(a**2 - mp.log(2 * a))};")
    lines.append("")

    # Hyperbolic three-body identity terms at g = 2, x = 0.3, y = 0.7.
    f = lambda t: 2 * mp.coth(t)
    x, y = mp.mpf("0.3"), mp.mpf("0.7")
    lhs = f(x) * f(x + y) - f(x) * f(y) + f(x + y) * f(y)
    lines.append(f"inline constexpr double kHyperbolicThreeBodyLhs = {cpp_double(lhs)};  // equals +g^2 = 4")
    lines.append("")
    lines.append("}  // namespace oracle")
    print("\n".join(lines))


if __name__ == "__main__":
    emit()
