#include "calogero/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "calogero/errors.hpp"
#include "kernel_detail.hpp"

namespace calogero {

namespace {

constexpr cplx I{0.0, 1.0};

[[noreturn]] void throw_collision(const char* what, std::size_t a, std::size_t b, double dist) {
  std::ostringstream os;
  os << "collision between " << what << ' ' << a << " and " << b << " (distance " << dist << ")";
  throw CollisionError(os.str());
}

// K(d) with a collision check on the periodic/complex pole distance.
cplx pair_kernel(const ModelSpec& spec, cplx d, const char* what, std::size_t a, std::size_t b) {
  const double dist = detail::pole_distance(spec.kernel, d);
  if (dist < spec.collision_eps) throw_collision(what, a, b, dist);
  return detail::kernel_unchecked(spec.kernel, d);
}

cplx pair_force_checked(const ModelSpec& spec, cplx d, const char* what, std::size_t a, std::size_t b) {
  const double dist = detail::pole_distance(spec.kernel, d);
  if (dist < spec.collision_eps) throw_collision(what, a, b, dist);
  const cplx s = detail::sine_unchecked(spec.kernel, d);
  return 2.0 * detail::kernel_unchecked(spec.kernel, d) / (s * s);
}

void require_no_c3(const ModelSpec& spec) {
  if (spec.c.c3 != 0.0) {
    throw ConfigError("second-order dynamics is only defined for c3 = 0 (extra pair terms otherwise)");
  }
}

}  // namespace

DualRates dual_rhs(const ModelSpec& spec, const DualState& s) {
  const std::size_t n = s.x.size();
  const std::size_t m = s.z.size();
  const double g = spec.g;
  DualRates r{std::vector<cplx>(n), std::vector<cplx>(m)};

  // Antisymmetric pair kernels are evaluated once per pair; each index
  // accumulates its terms in increasing partner order.
  std::vector<cplx> acc_x(n), acc_z(m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const cplx kk = pair_kernel(spec, s.x[j] - s.x[k], "particles", j, k);
      acc_x[j] -= kk;
      acc_x[k] += kk;
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const cplx kk = pair_kernel(spec, s.z[a] - s.z[b], "solitons", a, b);
      acc_z[a] += kk;
      acc_z[b] -= kk;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t a = 0; a < m; ++a) {
      const cplx kk = pair_kernel(spec, s.x[j] - s.z[a], "particle/soliton", j, a);
      acc_x[j] += kk;
      acc_z[a] += kk;  // -K(z - x) = K(x - z)
    }
  }
  for (std::size_t j = 0; j < n; ++j) r.x[j] = I * (prepot_w(spec, s.x[j]) + g * acc_x[j]);
  for (std::size_t a = 0; a < m; ++a) r.z[a] = I * (prepot_w(spec, s.z[a]) + g * acc_z[a]);
  return r;
}

DualRates complex_accelerations(const ModelSpec& spec, std::span<const cplx> x, std::span<const cplx> z) {
  require_no_c3(spec);
  const std::size_t n = x.size();
  const std::size_t m = z.size();
  const double g2 = spec.g * spec.g;
  DualRates a{std::vector<cplx>(n), std::vector<cplx>(m)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const cplx f = pair_force_checked(spec, x[j] - x[k], "particles", j, k);
      a.x[j] += f;
      a.x[k] -= f;
    }
  }
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) {
      const cplx f = pair_force_checked(spec, z[p] - z[q], "solitons", p, q);
      a.z[p] += f;
      a.z[q] -= f;
    }
  }
  for (std::size_t j = 0; j < n; ++j) a.x[j] = g2 * a.x[j] - onebody_V_prime(spec, Species::Particle, x[j]);
  for (std::size_t p = 0; p < m; ++p) a.z[p] = g2 * a.z[p] - onebody_V_prime(spec, Species::Soliton, z[p]);
  return a;
}

Accelerations newtonian_rhs(const ModelSpec& spec, const PhaseState& s) {
  std::vector<cplx> xc(s.x.begin(), s.x.end());
  DualRates a = complex_accelerations(spec, xc, s.z);
  Accelerations out;
  out.x.resize(a.x.size());
  std::transform(a.x.begin(), a.x.end(), out.x.begin(), [](cplx v) { return v.real(); });
  out.z = std::move(a.z);
  return out;
}

double reality_residual(const ModelSpec& spec, const DualState& s) {
  const DualRates r = dual_rhs(spec, s);
  double worst = 0.0;
  for (const cplx& v : r.x) worst = std::max(worst, std::abs(v.imag()));
  return worst;
}

EnergyBreakdown total_energy(const ModelSpec& spec, const PhaseState& s) {
  require_no_c3(spec);
  const double g2 = spec.g * spec.g;
  EnergyBreakdown e;
  const std::size_t n = s.x.size();
  for (std::size_t j = 0; j < n; ++j) {
    e.particles += 0.5 * s.p[j] * s.p[j] + onebody_V(spec, Species::Particle, s.x[j]).real();
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) e.particles += g2 * pair_potential(spec, s.x[j] - s.x[k]).real();
  }
  const std::size_t m = s.z.size();
  for (std::size_t a = 0; a < m; ++a) {
    e.solitons += 0.5 * s.zdot[a] * s.zdot[a] + onebody_V(spec, Species::Soliton, s.z[a]);
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) e.solitons += g2 * pair_potential(spec, s.z[a] - s.z[b]);
  }
  e.total = e.particles - e.solitons;
  return e;
}

PhaseState phase_from_dual(const ModelSpec& spec, const DualState& s) {
  const DualRates r = dual_rhs(spec, s);
  PhaseState p;
  p.t = s.t;
  p.x.reserve(s.x.size());
  p.p.reserve(s.x.size());
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    p.x.push_back(s.x[j].real());
    p.p.push_back(r.x[j].real());
  }
  p.z = s.z;
  p.zdot = r.z;
  return p;
}

double min_pair_distance(std::span<const cplx> x, std::span<const cplx> z) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = x.size(), m = z.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) d = std::min(d, std::abs(x[j] - x[k]));
    for (std::size_t a = 0; a < m; ++a) d = std::min(d, std::abs(x[j] - z[a]));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) d = std::min(d, std::abs(z[a] - z[b]));
  }
  return d;
}

std::vector<double> pack(const DualState& s) {
  std::vector<double> y;
  y.reserve(2 * (s.x.size() + s.z.size()));
  for (const cplx& v : s.x) {
    y.push_back(v.real());
    y.push_back(v.imag());
  }
  for (const cplx& v : s.z) {
    y.push_back(v.real());
    y.push_back(v.imag());
  }
  return y;
}

DualState unpack_dual(std::span<const double> y, int n_particles, int n_solitons, double t) {
  DualState s;
  s.t = t;
  s.x.resize(static_cast<std::size_t>(n_particles));
  s.z.resize(static_cast<std::size_t>(n_solitons));
  std::size_t i = 0;
  for (cplx& v : s.x) {
    v = {y[i], y[i + 1]};
    i += 2;
  }
  for (cplx& v : s.z) {
    v = {y[i], y[i + 1]};
    i += 2;
  }
  return s;
}

std::vector<double> pack(const PhaseState& s) {
  std::vector<double> y;
  y.reserve(2 * s.x.size() + 4 * s.z.size());
  y.insert(y.end(), s.x.begin(), s.x.end());
  y.insert(y.end(), s.p.begin(), s.p.end());
  for (const cplx& v : s.z) {
    y.push_back(v.real());
    y.push_back(v.imag());
  }
  for (const cplx& v : s.zdot) {
    y.push_back(v.real());
    y.push_back(v.imag());
  }
  return y;
}

PhaseState unpack_phase(std::span<const double> y, int n_particles, int n_solitons, double t) {
  const auto n = static_cast<std::size_t>(n_particles);
  const auto m = static_cast<std::size_t>(n_solitons);
  PhaseState s;
  s.t = t;
  s.x.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  s.p.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.begin() + static_cast<std::ptrdiff_t>(2 * n));
  s.z.resize(m);
  s.zdot.resize(m);
  std::size_t i = 2 * n;
  for (cplx& v : s.z) {
    v = {y[i], y[i + 1]};
    i += 2;
  }
  for (cplx& v : s.zdot) {
    v = {y[i], y[i + 1]};
    i += 2;
  }
  return s;
}

OdeSystem dual_system(const ModelSpec& spec) {
  const int n = spec.n_particles;
  const int m = spec.n_solitons;
  OdeSystem sys;
  sys.rhs = [spec, n, m](double t, std::span<const double> y, std::span<double> dy) {
    const DualRates r = dual_rhs(spec, unpack_dual(y, n, m, t));
    std::size_t i = 0;
    for (const cplx& v : r.x) {
      dy[i++] = v.real();
      dy[i++] = v.imag();
    }
    for (const cplx& v : r.z) {
      dy[i++] = v.real();
      dy[i++] = v.imag();
    }
  };
  sys.collision_time = [n, m](std::span<const double> y, std::span<const double> dy) {
    const DualState s = unpack_dual(y, n, m, 0.0);
    const DualState v = unpack_dual(dy, n, m, 0.0);
    double speed = 0.0;
    for (const cplx& u : v.x) speed = std::max(speed, std::abs(u));
    for (const cplx& u : v.z) speed = std::max(speed, std::abs(u));
    if (speed == 0.0) return std::numeric_limits<double>::infinity();
    return min_pair_distance(s.x, s.z) / speed;
  };
  sys.monitor = [spec, n, m](double t, std::span<const double> y) {
    const DualState s = unpack_dual(y, n, m, t);
    Diagnostics d;
    d.max_im = 0.0;
    for (const cplx& v : s.x) d.max_im = std::max(d.max_im, std::abs(v.imag()));
    if (spec.c.c3 == 0.0) d.energy = total_energy(spec, phase_from_dual(spec, s)).particles;
    return d;
  };
  return sys;
}

OdeSystem newtonian_system(const ModelSpec& spec) {
  const int n = spec.n_particles;
  const int m = spec.n_solitons;
  OdeSystem sys;
  sys.rhs = [spec, n, m](double t, std::span<const double> y, std::span<double> dy) {
    const PhaseState s = unpack_phase(y, n, m, t);
    const Accelerations a = newtonian_rhs(spec, s);
    const auto nn = static_cast<std::size_t>(n);
    for (std::size_t j = 0; j < nn; ++j) {
      dy[j] = s.p[j];
      dy[nn + j] = a.x[j];
    }
    std::size_t i = 2 * nn;
    for (const cplx& v : s.zdot) {
      dy[i++] = v.real();
      dy[i++] = v.imag();
    }
    for (const cplx& v : a.z) {
      dy[i++] = v.real();
      dy[i++] = v.imag();
    }
  };
  sys.collision_time = [n, m](std::span<const double> y, std::span<const double>) {
    const PhaseState s = unpack_phase(y, n, m, 0.0);
    double speed = 0.0;
    for (double p : s.p) speed = std::max(speed, std::abs(p));
    for (const cplx& u : s.zdot) speed = std::max(speed, std::abs(u));
    if (speed == 0.0) return std::numeric_limits<double>::infinity();
    // Particles and solitons do not interact; only like pairs matter.
    double d = std::numeric_limits<double>::infinity();
    const std::size_t nn = s.x.size(), mm = s.z.size();
    for (std::size_t j = 0; j + 1 < nn; ++j)
      for (std::size_t k = j + 1; k < nn; ++k) d = std::min(d, std::abs(s.x[j] - s.x[k]));
    for (std::size_t a = 0; a + 1 < mm; ++a)
      for (std::size_t b = a + 1; b < mm; ++b) d = std::min(d, std::abs(s.z[a] - s.z[b]));
    return d / speed;
  };
  sys.monitor = [spec, n, m](double t, std::span<const double> y) {
    Diagnostics d;
    d.max_im = 0.0;
    d.energy = total_energy(spec, unpack_phase(y, n, m, t)).particles;
    return d;
  };
  return sys;
}

double consistency_deviation(const ModelSpec& spec, const DualState& s, double h) {
  if (!(h > 0.0)) throw ConfigError("consistency_deviation needs h > 0");
  const int n = static_cast<int>(s.x.size());
  const int m = static_cast<int>(s.z.size());
  ModelSpec local = spec;
  local.n_particles = n;
  local.n_solitons = m;

  OdeSystem forward = dual_system(local);
  forward.monitor = nullptr;
  forward.collision_time = nullptr;
  OdeSystem backward = forward;
  backward.rhs = [f = forward.rhs](double t, std::span<const double> y, std::span<double> dy) {
    f(-t, y, dy);
    for (double& v : dy) v = -v;
  };

  IntegratorOptions opts;
  opts.rtol = 1e-15;
  opts.atol = 1e-15;
  opts.min_step = 1e-20;
  const std::vector<double> y0 = pack(s);
  const DualState plus = unpack_dual(propagate(forward, y0, s.t, s.t + h, opts), n, m, s.t + h);
  const DualState minus = unpack_dual(propagate(backward, y0, -s.t, -s.t + h, opts), n, m, s.t - h);

  PhaseState ps;
  ps.x.reserve(s.x.size());
  for (const cplx& v : s.x) ps.x.push_back(v.real());
  ps.p.assign(s.x.size(), 0.0);
  ps.z = s.z;
  ps.zdot.assign(s.z.size(), cplx{});
  const Accelerations acc = newtonian_rhs(local, ps);

  double worst = 0.0, scale = 1.0;
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    const double fd = (plus.x[j].real() - 2.0 * s.x[j].real() + minus.x[j].real()) / (h * h);
    worst = std::max(worst, std::abs(fd - acc.x[j]));
    scale = std::max(scale, std::abs(acc.x[j]));
  }
  return worst / scale;
}

}  // namespace calogero
