#include "calogero/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void require_rational(const ModelSpec& spec) {
  if (spec.kernel != KernelKind::Rational) throw ConfigError("meromorphic fields are implemented for the rational kernel only");
}

// Fritsch-Carlson slopes for unit knot spacing.
std::vector<double> pchip_slopes(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> d(n);
  std::vector<double> delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) delta[k] = x[k + 1] - x[k];
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = 2.0 / (1.0 / delta[k - 1] + 1.0 / delta[k]);
  auto end_slope = [](double d0, double d1) {
    double s = 0.5 * (3.0 * d0 - d1);
    if (s <= 0.0) s = d0;  // keep the extrapolated density finite
    if (s > 3.0 * d0) s = 3.0 * d0;
    return s;
  };
  d[0] = end_slope(delta[0], delta[1]);
  d[n - 1] = end_slope(delta[n - 2], delta[n - 3]);
  return d;
}

struct Hermite {
  double x0, x1, d0, d1;
  double value(double t) const {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * x0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * x1 + (t3 - t2) * d1;
  }
  double slope(double t) const {
    const double t2 = t * t;
    return (6 * t2 - 6 * t) * x0 + (3 * t2 - 4 * t + 1) * d0 + (-6 * t2 + 6 * t) * x1 + (3 * t2 - 2 * t) * d1;
  }
};

std::vector<double> log_density_derivative(const FieldGrid& grid) {
  const double floor = density_floor(grid);
  const std::size_t n = grid.size();
  std::vector<double> out(n, 0.0);
  const double h = grid.spacing();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (grid.rho[i - 1] > floor && grid.rho[i + 1] > floor) {
      out[i] = (std::log(grid.rho[i + 1]) - std::log(grid.rho[i - 1])) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace

FieldGrid make_grid(std::span<const double> xs, std::size_t points, double margin) {
  if (xs.size() < 2) throw Error("a field grid needs at least two particles");
  if (points < 3) throw ConfigError("grid needs at least 3 points");
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double width = *hi_it - *lo_it;
  const double lo = *lo_it - margin * width;
  const double hi = *hi_it + margin * width;
  FieldGrid g;
  g.x.resize(points);
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g.x[i] = lo + h * static_cast<double>(i);
  g.rho.assign(points, 0.0);
  g.v.assign(points, 0.0);
  g.rhoH.assign(points, 0.0);
  return g;
}

std::vector<double> empirical_density(std::span<const double> xs, std::span<const double> grid, double bandwidth) {
  const std::size_t n = xs.size();
  if (n < 2) throw Error("empirical density needs at least two particles");
  for (std::size_t k = 1; k < n; ++k) {
    if (!(xs[k] > xs[k - 1])) throw Error("empirical density needs strictly increasing positions");
  }
  const std::vector<double> d = pchip_slopes(xs);
  // End tapers: the outer half unit of s at each end becomes a linear ramp
  // from zero to 1/d over a length d, which carries the same mass 1/2.
  const double left = xs[0] - d[0];
  const double right = xs[n - 1] + d[n - 1];

  std::vector<double> rho(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid[i];
    if (y <= left || y >= right) continue;
    if (y <= xs[0]) {
      rho[i] = (y - left) / (d[0] * d[0]);
      continue;
    }
    if (y >= xs[n - 1]) {
      rho[i] = (right - y) / (d[n - 1] * d[n - 1]);
      continue;
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), y);
    const auto k = static_cast<std::size_t>(it - xs.begin()) - 1;
    const Hermite seg{xs[k], xs[k + 1], d[k], d[k + 1]};
    double a = 0.0, b = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
      const double m = 0.5 * (a + b);
      (seg.value(m) < y ? a : b) = m;
    }
    rho[i] = 1.0 / seg.slope(0.5 * (a + b));
  }

  if (bandwidth > 0.0 && grid.size() > 1) {
    const double h = grid[1] - grid[0];
    const auto reach = static_cast<std::ptrdiff_t>(std::ceil(6.0 * bandwidth / h));
    std::vector<double> w(static_cast<std::size_t>(2 * reach + 1));
    for (std::ptrdiff_t k = -reach; k <= reach; ++k) {
      const double u = static_cast<double>(k) * h / bandwidth;
      w[static_cast<std::size_t>(k + reach)] = std::exp(-0.5 * u * u) * h / (bandwidth * std::sqrt(2.0 * kPi));
    }
    const auto g = static_cast<std::ptrdiff_t>(grid.size());
    std::vector<double> smooth(grid.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < g; ++i) {
      double acc = 0.0;
      for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(-reach, -i); k <= std::min(reach, g - 1 - i); ++k) {
        acc += w[static_cast<std::size_t>(k + reach)] * rho[static_cast<std::size_t>(i + k)];
      }
      smooth[static_cast<std::size_t>(i)] = acc;
    }
    rho.swap(smooth);
  }
  return rho;
}

double default_bandwidth(const FieldGrid& grid) { return 2.0 * grid.spacing(); }

FieldGrid density_grid(std::span<const double> xs, std::size_t points, double margin) {
  FieldGrid g = make_grid(xs, points, margin);
  g.rho = empirical_density(xs, g.x, default_bandwidth(g));
  g.rhoH = hilbert_transform(g);
  return g;
}

std::vector<double> hilbert_transform(std::span<const double> x, std::span<const double> rho) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double h = x[1] - x[0];
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || rho[k] == 0.0) continue;
      const double wgt = (k == 0 || k == n - 1) ? 0.5 : 1.0;
      acc += wgt * rho[k] / (x[k] - x[i]);
    }
    out[i] = acc * h / kPi;
  }
  return out;
}

std::vector<double> hilbert_transform(const FieldGrid& grid) { return hilbert_transform(grid.x, grid.rho); }

double interpolate(const FieldGrid& grid, std::span<const double> field, double p) {
  const std::size_t n = grid.size();
  if (n < 2 || p < grid.x.front() || p > grid.x.back()) return 0.0;
  const double s = (p - grid.x.front()) / grid.spacing();
  auto i = static_cast<std::size_t>(s);
  if (i >= n - 1) i = n - 2;
  const double t = s - static_cast<double>(i);
  return (1.0 - t) * field[i] + t * field[i + 1];
}

std::vector<double> derivative(const FieldGrid& grid, std::span<const double> field) {
  const std::size_t n = grid.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double h = grid.spacing();
  out[0] = (field[1] - field[0]) / h;
  out[n - 1] = (field[n - 1] - field[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (field[i + 1] - field[i - 1]) / (2.0 * h);
  return out;
}

cplx u_plus_micro(const ModelSpec& spec, std::span<const cplx> z, cplx x) {
  require_rational(spec);
  cplx acc{};
  for (const cplx& za : z) {
    if (std::abs(x - za) < spec.collision_eps) throw SingularityError("u+ evaluated at a soliton pole");
    acc += 1.0 / (x - za);
  }
  return I * spec.g * acc + I * spec.lambda * prepot_w(spec, x);
}

cplx u_minus_micro(const ModelSpec& spec, std::span<const double> xs, cplx x) {
  require_rational(spec);
  cplx acc{};
  for (double xj : xs) {
    if (std::abs(x - xj) < spec.collision_eps) throw SingularityError("u- evaluated at a particle pole");
    acc += 1.0 / (x - xj);
  }
  return -I * spec.g * acc + I * (1.0 - spec.lambda) * prepot_w(spec, x);
}

double density_floor(const FieldGrid& grid) {
  double m = 0.0;
  for (double r : grid.rho) m = std::max(m, r);
  return 1e-12 * m;
}

std::vector<cplx> u_plus_hydro(const FieldGrid& grid, double g, std::size_t begin, std::size_t end) {
  const std::size_t n = grid.size();
  end = std::min(end, n);
  const double floor = density_floor(grid);
  for (std::size_t i = begin; i < end; ++i) {
    const bool ok = grid.rho[i] > floor && (i == 0 || grid.rho[i - 1] > floor) && (i + 1 == n || grid.rho[i + 1] > floor);
    if (!ok) {
      std::ostringstream os;
      os << "density vanishes near grid point " << i << " (x = " << grid.x[i] << ")";
      throw ZeroDensityError(os.str());
    }
  }
  const std::vector<double> dlog = log_density_derivative(grid);
  std::vector<cplx> out;
  out.reserve(end > begin ? end - begin : 0);
  for (std::size_t i = begin; i < end; ++i) {
    out.emplace_back(grid.v[i], -kPi * g * grid.rhoH[i] + 0.5 * g * dlog[i]);
  }
  return out;
}

double sum_identity_residual(std::span<const double> xs, std::size_t j, const FieldGrid& grid) {
  const std::size_t n = xs.size();
  const std::size_t guard = n / 10;
  if (j >= n || j < guard || n - 1 - j < guard) {
    std::ostringstream os;
    os << "particle " << j << " is too close to the cloud edge for the continuum identity (N = " << n << ")";
    throw BoundaryError(os.str());
  }
  double direct = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != j) direct += 1.0 / (xs[j] - xs[k]);
  }
  const std::vector<double> dlog = log_density_derivative(grid);
  const double cont = 0.5 * interpolate(grid, dlog, xs[j]) - kPi * interpolate(grid, grid.rhoH, xs[j]);
  return std::abs(direct - cont);
}

JumpReport u_minus_jump(const ModelSpec& spec, std::span<const double> xs, const FieldGrid& grid, double eps) {
  require_rational(spec);
  const std::size_t n = xs.size();
  const std::size_t guard = n / 10;
  const double lo = xs[guard];
  const double hi = xs[n - 1 - guard];
  JumpReport rep;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x[i];
    if (x < lo || x > hi) continue;
    const cplx jump = u_minus_micro(spec, xs, cplx(x, eps)) - u_minus_micro(spec, xs, cplx(x, -eps));
    const double target = 2.0 * kPi * spec.g * grid.rho[i];
    const double dev = std::abs(jump + target);
    rep.max_abs = std::max(rep.max_abs, dev);
    if (target != 0.0) rep.max_rel = std::max(rep.max_rel, dev / std::abs(target));
    ++rep.points;
  }
  return rep;
}

double fluid_energy(const FieldGrid& grid, const ModelSpec& spec) {
  const std::size_t n = grid.size();
  if (n < 2) return 0.0;
  const double g2 = spec.g * spec.g;
  const double floor = density_floor(grid);
  const std::vector<double> drho = derivative(grid, grid.rho);
  const std::vector<double> drhoH = derivative(grid, grid.rhoH);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.rho[i];
    if (r == 0.0) continue;
    double e = 0.5 * r * grid.v[i] * grid.v[i] + (kPi * kPi * g2 / 6.0) * r * r * r +
               0.5 * kPi * g2 * r * drhoH[i] + r * onebody_V(spec, Species::Particle, grid.x[i]).real();
    if (r > floor) e += g2 * drho[i] * drho[i] / (8.0 * r);
    acc += ((i == 0 || i == n - 1) ? 0.5 : 1.0) * e;
  }
  return acc * grid.spacing();
}

OneSolitonFields one_soliton_fields(const ModelSpec& spec, cplx z, const FieldGrid& grid) {
  if (z.imag() == 0.0) throw ConfigError("one-soliton fields need Im z != 0");
  const double a = z.real(), b = z.imag();
  const std::size_t n = grid.size();
  OneSolitonFields f;
  f.v.resize(n);
  f.residual.assign(n, 0.0);
  const double floor = density_floor(grid);
  const std::vector<double> dlog = log_density_derivative(grid);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = grid.x[i] - a;
    const double den = dx * dx + b * b;
    f.v[i] = -spec.g * b / den;
    const bool inside = grid.rho[i] > floor && i > 0 && i + 1 < n && grid.rho[i - 1] > floor && grid.rho[i + 1] > floor;
    if (inside) {
      f.residual[i] = kPi * grid.rhoH[i] - 0.5 * dlog[i] + dx / den + prepot_w(spec, grid.x[i]).real() / spec.g;
    }
  }
  return f;
}

double excess_density_peak(std::span<const double> positions, std::span<const double> background, double sigma,
                           double lo, double hi) {
  if (!(sigma > 0.0) || !(hi > lo)) throw ConfigError("excess_density_peak needs sigma > 0 and hi > lo");
  auto excess = [&](double y) {
    double acc = 0.0;
    for (double p : positions) acc += std::exp(-0.5 * (y - p) * (y - p) / (sigma * sigma));
    for (double p : background) acc -= std::exp(-0.5 * (y - p) * (y - p) / (sigma * sigma));
    return acc;
  };
  const double step = sigma / 25.0;
  const auto count = static_cast<long>(std::ceil((hi - lo) / step));
  double best_y = lo, best = excess(lo);
  for (long i = 1; i <= count; ++i) {
    const double y = std::min(hi, lo + step * static_cast<double>(i));
    const double e = excess(y);
    if (e > best) {
      best = e;
      best_y = y;
    }
  }
  // Golden-section refinement inside the winning bracket.
  double a = std::max(lo, best_y - step), b = std::min(hi, best_y + step);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = excess(c), fd = excess(d);
  for (int it = 0; it < 60; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = excess(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = excess(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace calogero
