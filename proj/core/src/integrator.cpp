#include "calogero/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

// Dormand-Prince RK5(4)7M tableau; the seventh stage is f(t + h, y_new).
constexpr int kStages54 = 6;
constexpr double C54[6] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0};
constexpr double A54[6][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0}};
constexpr double B54[6] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84};
// 5th order weights minus 4th order weights.
constexpr double E54[7] = {71.0 / 57600, 0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

// Dormand-Prince 8(5,3) tableau (Hairer, Norsett & Wanner).
constexpr int kStages853 = 12;
constexpr double C853[12] = {0.0, 0.05260015195876773, 0.0789002279381516, 0.1183503419072274, 0.2816496580927726, 0.3333333333333333, 0.25, 0.3076923076923077, 0.6512820512820513, 0.6, 0.8571428571428571, 1.0};
constexpr double A853[12][12] = {
    {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.05260015195876773, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.0197250569845379, 0.0591751709536137, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.02958758547680685, 0.0, 0.08876275643042054, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.2413651341592667, 0.0, -0.8845494793282861, 0.924834003261792, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.037037037037037035, 0.0, 0.0, 0.17082860872947386, 0.12546768756682242, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.037109375, 0.0, 0.0, 0.17025221101954405, 0.06021653898045596, -0.017578125, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.03709200011850479, 0.0, 0.0, 0.17038392571223998, 0.10726203044637328, -0.015319437748624402, 0.008273789163814023, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.6241109587160757, 0.0, 0.0, -3.3608926294469414, -0.868219346841726, 27.59209969944671, 20.154067550477894, -43.48988418106996, 0.0, 0.0, 0.0, 0.0},
    {0.47766253643826434, 0.0, 0.0, -2.4881146199716677, -0.590290826836843, 21.230051448181193, 15.279233632882423, -33.28821096898486, -0.020331201708508627, 0.0, 0.0, 0.0},
    {-0.9371424300859873, 0.0, 0.0, 5.186372428844064, 1.0914373489967295, -8.149787010746927, -18.52006565999696, 22.739487099350505, 2.4936055526796523, -3.0467644718982196, 0.0, 0.0},
    {2.273310147516538, 0.0, 0.0, -10.53449546673725, -2.0008720582248625, -17.9589318631188, 27.94888452941996, -2.8589982771350235, -8.87285693353063, 12.360567175794303, 0.6433927460157636, 0.0}};
constexpr double B853[12] = {0.054293734116568765, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003, -5.801203960010585, 0.3111643669578199, -0.1521609496625161, 0.20136540080403034, 0.04471061572777259};
// Error weights over the 12 stages plus f(t + h, y_new).
constexpr double E3_853[13] = {-0.18980075407240762, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003, -5.801203960010585, -0.4226823213237919, -0.1521609496625161, 0.20136540080403034, 0.02265179219836082, 0.0};
constexpr double E5_853[13] = {0.01312004499419488, 0.0, 0.0, 0.0, 0.0, -1.2251564463762044, -0.4957589496572502, 1.6643771824549864, -0.35032884874997366, 0.3341791187130175, 0.08192320648511571, -0.022355307863886294, 0.0};

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

// Explicit RK pair whose last stage is evaluated at the accepted point, so
// k[stages] doubles as the next step's first stage.
class Stepper {
 public:
  Stepper(const OdeSystem& sys, IntegratorMethod method, std::size_t n, IntegrationStats& stats)
      : sys_(sys), method_(method), stats_(stats), tmp(n), ynew(n) {
    const int stages = method == IntegratorMethod::DormandPrince54 ? kStages54 : kStages853;
    k.assign(static_cast<std::size_t>(stages + 1), std::vector<double>(n));
  }

  int order() const { return method_ == IntegratorMethod::DormandPrince54 ? 5 : 8; }
  std::vector<double>& first() { return k.front(); }
  std::vector<double>& last() { return k.back(); }

  void eval(double t, std::span<const double> y, std::span<double> out) {
    sys_.rhs(t, y, out);
    ++stats_.rhs_evals;
  }

  // Attempts one step of size h from (t, y) with k[0] = f(t, y) already set.
  // Returns the scaled max-norm error; the candidate is left in ynew and k.back().
  double attempt(double t, std::span<const double> y, double h, double rtol, double atol) {
    if (method_ == IntegratorMethod::DormandPrince54) return run(t, y, h, rtol, atol, kStages54, C54, A54, B54);
    return run(t, y, h, rtol, atol, kStages853, C853, A853, B853);
  }

  std::vector<std::vector<double>> k;

 private:
  template <int S>
  double run(double t, std::span<const double> y, double h, double rtol, double atol, int stages,
             const double (&c)[S], const double (&a)[S][S], const double (&b)[S]) {
    const std::size_t n = y.size();
    for (int s = 1; s < stages; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int r = 0; r < s; ++r) acc += a[s][r] * k[static_cast<std::size_t>(r)][i];
        tmp[i] = y[i] + h * acc;
      }
      eval(t + c[s] * h, tmp, k[static_cast<std::size_t>(s)]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int r = 0; r < stages; ++r) acc += b[r] * k[static_cast<std::size_t>(r)][i];
      ynew[i] = y[i] + h * acc;
    }
    eval(t + h, ynew, k.back());

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double e = 0.0;
      if constexpr (S == kStages54) {
        for (int r = 0; r <= S; ++r) e += E54[r] * k[static_cast<std::size_t>(r)][i];
        e *= h;
      } else {
        double e5 = 0.0, e3 = 0.0;
        for (int r = 0; r <= S; ++r) {
          e5 += E5_853[r] * k[static_cast<std::size_t>(r)][i];
          e3 += E3_853[r] * k[static_cast<std::size_t>(r)][i];
        }
        const double den = std::hypot(e5, 0.1 * e3);
        e = den > 0.0 ? h * e5 * std::abs(e5) / den : 0.0;
      }
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return err;
  }

  const OdeSystem& sys_;
  IntegratorMethod method_;
  IntegrationStats& stats_;
  std::vector<double> tmp;

 public:
  std::vector<double> ynew;
};

// Hairer-Norsett-Wanner starting step estimate.
double initial_step(Stepper& st, double t, std::span<const double> y, double span, double rtol, double atol) {
  std::vector<double>& f0 = st.first();
  std::vector<double>& f1 = st.k[1];
  const std::size_t n = y.size();
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::abs(y[i]);
    d0 = std::max(d0, std::abs(y[i]) / sc);
    d1 = std::max(d1, std::abs(f0[i]) / sc);
  }
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  std::vector<double> probe(n);
  for (std::size_t i = 0; i < n; ++i) probe[i] = y[i] + h0 * f0[i];
  st.eval(t + h0, probe, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::abs(y[i]);
    d2 = std::max(d2, std::abs(f1[i] - f0[i]) / sc);
  }
  d2 /= h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / st.order());
  return std::min({100.0 * h0, h1, span});
}

}  // namespace

Trajectory integrate(const OdeSystem& sys, std::vector<double> y0, double t0, double t_end,
                     const IntegratorOptions& opts) {
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) throw ConfigError("rtol and atol must be positive");
  if (!(t_end >= t0)) throw ConfigError("t_end must not precede t0");
  if (opts.output_every < 0.0) throw ConfigError("output_every must be nonnegative");

  Trajectory traj;
  const std::size_t n = y0.size();
  Stepper st(sys, opts.method, n, traj.stats);

  auto log_state = [&](double t, const std::vector<double>& y) {
    traj.times.push_back(t);
    traj.states.push_back(y);
    const Diagnostics d = sys.monitor ? sys.monitor(t, y) : Diagnostics{};
    traj.energy_log.push_back(d.energy);
    traj.max_im_log.push_back(d.max_im);
  };

  std::vector<double> y = std::move(y0);
  double t = t0;
  log_state(t, y);
  if (t_end == t0) return traj;

  // Output times are t0 + k * output_every, computed by multiplication so
  // they do not drift.
  long next_index = 1;
  auto next_output = [&]() {
    if (opts.output_every <= 0.0) return t_end;
    return std::min(t_end, t0 + static_cast<double>(next_index) * opts.output_every);
  };

  st.eval(t, y, st.first());
  double h = opts.initial_step > 0.0 ? opts.initial_step
                                     : initial_step(st, t, y, t_end - t0, opts.rtol, opts.atol);

  const double exponent = -1.0 / st.order();
  for (long step = 0;; ++step) {
    if (step >= opts.max_steps) throw ConvergenceError("integrator exceeded max_steps");

    double cap = std::numeric_limits<double>::infinity();
    if (sys.collision_time) {
      const double tau = sys.collision_time(y, st.first());
      if (std::isfinite(tau) && tau > 0.0) cap = opts.step_cap_eta * tau;
    }
    const double target = next_output();
    double h_try = std::min(h, cap);
    bool lands = false;
    if (t + h_try >= target || target - (t + h_try) < 1e-12 * std::max(1.0, std::abs(target))) {
      h_try = target - t;
      lands = true;
    }
    if (h_try < opts.min_step && !lands) {
      std::ostringstream os;
      os << "step size " << h_try << " below floor " << opts.min_step << " at t = " << t;
      throw StepUnderflowError(os.str());
    }

    const double err = st.attempt(t, y, h_try, opts.rtol, opts.atol);
    if (err <= 1.0) {
      t = lands ? target : t + h_try;
      y.swap(st.ynew);
      std::swap(st.first(), st.last());  // FSAL
      ++traj.stats.accepted;
      traj.stats.largest_step = std::max(traj.stats.largest_step, h_try);
      traj.stats.smallest_step = std::min(traj.stats.smallest_step, h_try);
      if (std::isfinite(cap)) traj.stats.max_cap_ratio = std::max(traj.stats.max_cap_ratio, h_try / cap);

      const double factor =
          err == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(err, exponent), kMinFactor, kMaxFactor);
      // A landing step may be artificially short; do not let it shrink h.
      h = lands ? std::max(h, h_try * factor) : h_try * factor;

      if (lands) {
        log_state(t, y);
        if (t >= t_end) break;
        ++next_index;
      }
    } else {
      ++traj.stats.rejected;
      h = h_try * std::max(kMinFactor, kSafety * std::pow(err, exponent));
      if (h < opts.min_step) {
        std::ostringstream os;
        os << "step size " << h << " below floor " << opts.min_step << " at t = " << t;
        throw StepUnderflowError(os.str());
      }
    }
  }
  return traj;
}

std::vector<double> propagate(const OdeSystem& sys, std::vector<double> y0, double t0, double t_end,
                              const IntegratorOptions& opts) {
  IntegratorOptions o = opts;
  o.output_every = 0.0;
  OdeSystem quiet = sys;
  quiet.monitor = nullptr;
  auto traj = integrate(quiet, std::move(y0), t0, t_end, o);
  return std::move(traj.states.back());
}

}  // namespace calogero
