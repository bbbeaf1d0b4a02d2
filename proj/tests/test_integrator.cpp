#include <cmath>

#include "calogero/dynamics.hpp"
#include "calogero/errors.hpp"
#include "calogero/integrator.hpp"
#include "calogero/soliton_init.hpp"
#include "doctest.h"

using namespace calogero;

namespace {

OdeSystem oscillator() {
  OdeSystem sys;
  sys.rhs = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  sys.monitor = [](double, std::span<const double> y) {
    return Diagnostics{0.5 * (y[0] * y[0] + y[1] * y[1]), 0.0};
  };
  return sys;
}

double oscillator_error(IntegratorMethod method, double tol) {
  IntegratorOptions o;
  o.method = method;
  o.rtol = o.atol = tol;
  const auto y = propagate(oscillator(), {1.0, 0.0}, 0.0, 10.0, o);
  return std::abs(y[0] - std::cos(10.0));
}

}  // namespace

TEST_SUITE("integrator") {
  TEST_CASE("harmonic oscillator") {
    IntegratorOptions o;
    o.output_every = 0.5;
    const Trajectory tr = integrate(oscillator(), {1.0, 0.0}, 0.0, 10.0, o);
    double worst = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      worst = std::max(worst, std::abs(tr.states[k][0] - std::cos(tr.times[k])));
    }
    CHECK(worst < 1e-8);
    CHECK(tr.times.size() == 21);
    CHECK(tr.energy_log.size() == tr.times.size());
    CHECK(tr.max_im_log.size() == tr.times.size());
    CHECK(std::abs(tr.energy_log.back() - 0.5) < 1e-9);
  }

  TEST_CASE("output times are hit exactly") {
    IntegratorOptions o;
    o.output_every = 0.1;
    const Trajectory tr = integrate(oscillator(), {1.0, 0.0}, 0.0, 1.0, o);
    REQUIRE(tr.times.size() == 11);
    for (std::size_t k = 0; k < tr.times.size(); ++k) CHECK(tr.times[k] == 0.1 * static_cast<double>(k));
    CHECK(tr.times.back() == 1.0);
  }

  TEST_CASE("DP5(4) global error scales with the tolerance") {
    const double coarse = oscillator_error(IntegratorMethod::DormandPrince54, 1e-6);
    const double fine = oscillator_error(IntegratorMethod::DormandPrince54, 1e-6 / 32.0);
    const double ratio = coarse / fine;
    CHECK(ratio >= 16.0);
    CHECK(ratio <= 48.0);
  }

  TEST_CASE("DOP853 reaches tight tolerances") {
    CHECK(oscillator_error(IntegratorMethod::DormandPrince853, 1e-12) < 1e-10);
  }

  TEST_CASE("equilibrium stays constant") {
    ModelSpec s;
    s.c = {0.0, 1.0, 0.0, 0.0};
    s.n_particles = 10;
    const auto roots = harmonic_equilibrium_reference(10, 1.0, 1.0);
    DualState d;
    d.x.assign(roots.begin(), roots.end());
    IntegratorOptions o;
    o.output_every = 0.25;
    const Trajectory tr = integrate(dual_system(s), pack(d), 0.0, 1.0, o);
    const auto& y0 = tr.states.front();
    for (const auto& y : tr.states) {
      for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(y[i] - y0[i]) < 1e-10);
    }
  }

  TEST_CASE("collision cap is respected") {
    ModelSpec s;
    s.n_particles = 2;
    s.c = {0.0, 1.0, 0.06, 0.0};
    s.n_solitons = 1;
    DualState d;
    d.x = {-0.8, 0.7};
    d.z = {cplx(0.0, 0.05)};
    IntegratorOptions o;
    o.output_every = 0.05;
    const Trajectory tr = integrate(dual_system(s), pack(d), 0.0, 0.5, o);
    CHECK(tr.stats.max_cap_ratio > 0.0);
    CHECK(tr.stats.max_cap_ratio <= 1.0 + 1e-12);
  }

  TEST_CASE("finite-time blow-up underflows the step") {
    OdeSystem sys;
    sys.rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
    CHECK_THROWS_AS(propagate(sys, {1.0}, 0.0, 2.0, IntegratorOptions{}), StepUnderflowError);
  }

  TEST_CASE("collisions inside the right-hand side propagate") {
    ModelSpec s;
    s.n_particles = 2;
    s.c = {0.0, 0.0, 0.0, 0.0};
    s.g = 1.0;
    PhaseState p;
    p.x = {-1.0, 1.0};
    p.p = {5.0, -5.0};
    // repulsive pair, bounce; the run itself is regular
    CHECK_NOTHROW(propagate(newtonian_system(s), pack(p), 0.0, 0.5, IntegratorOptions{}));
    CHECK_THROWS_AS(dual_rhs(s, DualState{{cplx(0.0), cplx(0.0)}, {}, 0.0}), CollisionError);
  }

  TEST_CASE("argument validation") {
    IntegratorOptions bad;
    bad.rtol = 0.0;
    CHECK_THROWS_AS(integrate(oscillator(), {1.0, 0.0}, 0.0, 1.0, bad), ConfigError);
    CHECK_THROWS_AS(integrate(oscillator(), {1.0, 0.0}, 1.0, 0.0, IntegratorOptions{}), ConfigError);
    const Trajectory t0 = integrate(oscillator(), {1.0, 0.0}, 0.0, 0.0, IntegratorOptions{});
    CHECK(t0.times.size() == 1);
  }

  TEST_CASE("runs are bit-reproducible") {
    IntegratorOptions o;
    o.output_every = 0.5;
    const auto a = integrate(oscillator(), {1.0, 0.0}, 0.0, 5.0, o);
    const auto b = integrate(oscillator(), {1.0, 0.0}, 0.0, 5.0, o);
    CHECK(a.states == b.states);
    CHECK(a.stats.accepted == b.stats.accepted);
  }
}
