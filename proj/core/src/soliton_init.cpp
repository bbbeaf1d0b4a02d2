#include "calogero/soliton_init.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "calogero/dynamics.hpp"
#include "calogero/errors.hpp"
#include "kernel_detail.hpp"

namespace calogero {

namespace {

constexpr cplx I{0.0, 1.0};

cplx checked_sine(const ModelSpec& spec, cplx d) {
  if (detail::pole_distance(spec.kernel, d) < spec.collision_eps) {
    std::ostringstream os;
    os.precision(17);
    os << "coincident points in electrostatic energy (separation " << d << ")";
    throw CollisionError(os.str());
  }
  return detail::sine_unchecked(spec.kernel, d);
}

cplx checked_kernel(const ModelSpec& spec, cplx d) {
  checked_sine(spec, d);
  return detail::kernel_unchecked(spec.kernel, d);
}

// 1/s(d)^2 = -K'(d) for all three families.
cplx inv_sine_sq(const ModelSpec& spec, cplx d) {
  const cplx s = checked_sine(spec, d);
  return 1.0 / (s * s);
}

Eigen::MatrixXd hessian(const ModelSpec& spec, std::span<const double> x, std::span<const cplx> z) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const double g = spec.g;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    h(j, j) += prepot_w_prime(spec, x[static_cast<std::size_t>(j)]).real();
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double c = g * inv_sine_sq(spec, x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(k)]).real();
      h(j, j) += c;
      h(k, k) += c;
      h(j, k) -= c;
      h(k, j) -= c;
    }
    for (const cplx& za : z) {
      const cplx xj = x[static_cast<std::size_t>(j)];
      h(j, j) -= 0.5 * g * (inv_sine_sq(spec, xj - za) + inv_sine_sq(spec, xj - std::conj(za))).real();
    }
  }
  return h;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

bool strictly_increasing(std::span<const double> x) {
  for (std::size_t j = 1; j < x.size(); ++j) {
    if (!(x[j] > x[j - 1])) return false;
  }
  return true;
}

// Root of w with w' > 0 nearest the origin, scanning [lo, hi].
std::optional<double> find_well(const ModelSpec& spec, double lo, double hi) {
  const int samples = 4000;
  std::optional<double> best;
  auto w = [&](double t) { return prepot_w(spec, t).real(); };
  double prev_x = lo, prev = w(lo);
  for (int i = 1; i <= samples; ++i) {
    const double xi = lo + (hi - lo) * i / samples;
    const double cur = w(xi);
    if (prev < 0.0 && cur >= 0.0) {
      double a = prev_x, b = xi;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        (w(m) < 0.0 ? a : b) = m;
      }
      const double root = 0.5 * (a + b);
      if (!best || std::abs(root) < std::abs(*best)) best = root;
    }
    prev_x = xi;
    prev = cur;
  }
  return best;
}

}  // namespace

double descent_slack(double u) { return std::max(1e-12, 1e-14 * std::abs(u)); }

double electrostatic_U(const ModelSpec& spec, std::span<const double> x, std::span<const cplx> z) {
  const double g = spec.g;
  double u = 0.0;
  for (double xj : x) u += prepot_W(spec, xj);
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = j + 1; k < x.size(); ++k) u -= g * std::log(std::abs(checked_sine(spec, x[j] - x[k])));
  }
  for (double xj : x) {
    for (const cplx& za : z) {
      u += 0.5 * g *
           (std::log(std::abs(checked_sine(spec, xj - za))) + std::log(std::abs(checked_sine(spec, xj - std::conj(za)))));
    }
  }
  return u;
}

std::vector<double> constraint_residual(const ModelSpec& spec, std::span<const double> x,
                                        std::span<const cplx> z) {
  const double g = spec.g;
  const std::size_t n = x.size();
  std::vector<double> acc(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double kk = checked_kernel(spec, x[j] - x[k]).real();
      acc[j] -= kk;
      acc[k] += kk;
    }
  }
  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j) {
    double sol = 0.0;
    for (const cplx& za : z) {
      sol += (checked_kernel(spec, x[j] - za) + checked_kernel(spec, x[j] - std::conj(za))).real();
    }
    r[j] = prepot_w(spec, x[j]).real() + g * acc[j] + 0.5 * g * sol;
  }
  return r;
}

std::vector<double> momenta_from_solitons(const ModelSpec& spec, std::span<const double> x,
                                          std::span<const cplx> z) {
  std::vector<double> p(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    cplx acc{};
    for (const cplx& za : z) acc += checked_kernel(spec, x[j] - za) - checked_kernel(spec, x[j] - std::conj(za));
    p[j] = (0.5 * I * spec.g * acc).real();
  }
  return p;
}

std::vector<cplx> soliton_velocities(const ModelSpec& spec, std::span<const double> x, std::span<const cplx> z) {
  DualState s;
  s.x.assign(x.begin(), x.end());
  s.z.assign(z.begin(), z.end());
  return dual_rhs(spec, s).z;
}

std::vector<double> harmonic_equilibrium_reference(int n, double omega, double g) {
  if (n < 1) throw ConfigError("harmonic reference needs N >= 1");
  if (!(omega > 0.0) || !(g > 0.0)) throw ConfigError("harmonic reference needs omega > 0 and g > 0");
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(nn);
  Eigen::VectorXd off(std::max<Eigen::Index>(nn - 1, 0));
  for (Eigen::Index k = 1; k < nn; ++k) off(k - 1) = std::sqrt(0.5 * static_cast<double>(k));
  std::vector<double> roots(static_cast<std::size_t>(n), 0.0);
  if (n > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    const double scale = std::sqrt(g / omega);
    for (Eigen::Index k = 0; k < nn; ++k) roots[static_cast<std::size_t>(k)] = scale * es.eigenvalues()(k);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> default_initial_positions(const ModelSpec& spec) {
  const int n = spec.n_particles;
  double center = 0.0, omega = 1.0;
  switch (spec.kernel) {
    case KernelKind::Rational: {
      const double c0 = spec.c.c0, c1 = spec.c.c1, c2 = spec.c.c2;
      if (c2 != 0.0) {
        const double disc = c1 * c1 - 4.0 * c0 * c2;
        if (disc > 0.0) {
          center = (-c1 + std::sqrt(disc)) / (2.0 * c2);
          omega = std::sqrt(disc);
        }
      } else if (c1 > 0.0) {
        center = -c0 / c1;
        omega = c1;
      }
      break;
    }
    case KernelKind::Trigonometric:
    case KernelKind::Hyperbolic: {
      const double span = spec.kernel == KernelKind::Trigonometric ? 0.5 * std::numbers::pi : 10.0;
      if (auto well = find_well(spec, -span, span)) {
        center = *well;
        const double curv = prepot_w_prime(spec, center).real();
        if (curv > 0.0) omega = curv;
      }
      break;
    }
  }
  std::vector<double> x = harmonic_equilibrium_reference(n, omega, std::abs(spec.g));
  if (spec.kernel == KernelKind::Trigonometric && n > 1) {
    const double width = x.back() - x.front();
    const double limit = 0.9 * std::numbers::pi;
    if (width > limit) {
      for (double& v : x) v *= limit / width;
    }
  }
  for (double& v : x) v += center;
  return x;
}

InitReport gradient_flow(const ModelSpec& spec, std::span<const cplx> z, const GradientFlowOptions& opts) {
  if (!(opts.gamma > 0.0)) throw ConfigError("gradient flow needs gamma > 0");
  if (!(opts.tol > 0.0)) throw ConfigError("gradient flow needs tol > 0");
  for (const cplx& za : z) {
    if (za.imag() == 0.0) throw ConfigError("soliton positions must have nonzero imaginary part");
  }

  std::vector<double> x = opts.x0 ? *opts.x0 : default_initial_positions(spec);
  if (static_cast<int>(x.size()) != spec.n_particles) throw ConfigError("x0 length differs from n_particles");
  if (!strictly_increasing(x)) throw ConfigError("x0 must be strictly increasing");

  InitReport rep;
  if (auto w = spec.stability_warning()) rep.warnings.push_back(*w);

  const auto n = static_cast<Eigen::Index>(x.size());
  double u = electrostatic_U(spec, x, z);
  rep.u_history.push_back(u);
  std::vector<double> grad = constraint_residual(spec, x, z);
  double res = max_abs(grad);
  double dt = opts.initial_dt;
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  const double runaway = 1e6 * scale;

  std::vector<double> trial(x.size());
  long it = 0;
  while (res >= opts.tol) {
    if (it >= opts.max_iter) {
      std::ostringstream os;
      os << "gradient flow did not converge in " << opts.max_iter << " steps (max |dU/dx| = " << res
         << "); the prepotential may have no confining well (rational case needs c1^2 > 4 c0 c2)";
      throw ConvergenceError(os.str());
    }
    ++it;

    const Eigen::MatrixXd h = hessian(spec, x, z);
    Eigen::MatrixXd a = opts.gamma * h;
    a.diagonal().array() += 1.0 / dt;
    Eigen::VectorXd rhs(n);
    for (Eigen::Index j = 0; j < n; ++j) rhs(j) = -opts.gamma * grad[static_cast<std::size_t>(j)];
    const Eigen::VectorXd dx = a.partialPivLu().solve(rhs);

    bool ok = dx.allFinite();
    if (ok) {
      for (Eigen::Index j = 0; j < n; ++j) trial[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] + dx(j);
      ok = strictly_increasing(trial);
    }
    double u_new = 0.0;
    if (ok) {
      try {
        u_new = electrostatic_U(spec, trial, z);
        ok = std::isfinite(u_new) && u_new <= u + descent_slack(u);
      } catch (const CollisionError&) {
        ok = false;
      }
    }
    if (!ok) {
      dt *= 0.25;
      if (dt < 1e-300) throw ConvergenceError("gradient flow step size underflow");
      continue;
    }

    x.swap(trial);
    u = u_new;
    rep.u_history.push_back(u);
    grad = constraint_residual(spec, x, z);
    res = max_abs(grad);
    dt = std::min(dt * 2.0, 1e12);
    if (std::abs(x.front()) > runaway || std::abs(x.back()) > runaway) {
      throw ConvergenceError(
          "gradient flow ran away: the prepotential has no well deep enough to hold the particles "
          "(rational case needs c1^2 > 4 c0 c2)");
    }
  }

  rep.x = x;
  rep.final_U = u;
  rep.iterations = it;
  rep.constraint_residual = res;
  rep.p = momenta_from_solitons(spec, x, z);
  rep.zdot = soliton_velocities(spec, x, z);
  return rep;
}

}  // namespace calogero
