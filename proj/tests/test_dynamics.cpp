#include <algorithm>
#include <cmath>
#include <numbers>

#include "calogero/dynamics.hpp"
#include "calogero/errors.hpp"
#include "calogero/soliton_init.hpp"
#include "doctest.h"
#include "oracle_values.hpp"

using namespace calogero;

namespace {

ModelSpec harmonic(int n, double g = 1.0) {
  ModelSpec s;
  s.g = g;
  s.c = {0.0, 1.0, 0.0, 0.0};
  s.n_particles = n;
  return s;
}

ModelSpec fig1(int m) {
  ModelSpec s;
  s.g = 1.0;
  s.c = {0.0, 1.0, 0.06, 0.0};
  s.n_particles = 31;
  s.n_solitons = m;
  return s;
}

DualState fig1_state(const ModelSpec& s, std::vector<cplx> z) {
  const InitReport rep = gradient_flow(s, z);
  DualState d;
  d.x.assign(rep.x.begin(), rep.x.end());
  d.z = std::move(z);
  return d;
}

// Generic (unconstrained) state for each kernel family.
std::pair<ModelSpec, DualState> generic(KernelKind kind) {
  ModelSpec s;
  s.kernel = kind;
  s.g = 0.8;
  s.c = {0.1, 0.5, 0.2, 0.0};
  s.n_particles = 5;
  s.n_solitons = 2;
  DualState d;
  d.x = {-1.1, -0.45, 0.05, 0.6, 1.2};
  d.z = {cplx(0.2, 0.3), cplx(-0.4, -0.25)};
  return {s, d};
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("dual_rhs examples") {
    ModelSpec one = harmonic(1);
    DualState s1;
    s1.x = {0.0};
    CHECK(std::abs(dual_rhs(one, s1).x[0]) == 0.0);

    ModelSpec two = harmonic(2);
    DualState s2;
    s2.x = {-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    const DualRates r = dual_rhs(two, s2);
    CHECK(std::abs(r.x[0]) < 1e-15);
    CHECK(std::abs(r.x[1]) < 1e-15);
  }

  TEST_CASE("one-soliton preset velocity against the independent oracle") {
    const ModelSpec s = fig1(1);
    const DualState d = fig1_state(s, {cplx(0.0, 0.0239)});
    const cplx zd = dual_rhs(s, d).z[0];
    CHECK(zd.real() == doctest::Approx(oracle::kOneSolitonZdotRe).epsilon(1e-9));
    CHECK(zd.imag() == doctest::Approx(oracle::kOneSolitonZdotIm).epsilon(1e-7));
    // reference value, 1e-2 relative
    CHECK(std::abs(zd.real() + 43.0768) < 1e-2 * 43.0768);
    CHECK(std::abs(zd.imag() + 0.00103378) < 1e-2 * 0.00103378);
  }

  TEST_CASE("newtonian_rhs examples") {
    ModelSpec one = harmonic(1);
    PhaseState p;
    p.x = {1.0};
    p.p = {0.0};
    CHECK(newtonian_rhs(one, p).x[0] == doctest::Approx(-1.0));

    ModelSpec two = harmonic(2);
    PhaseState q;
    q.x = {-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    q.p = {0.0, 0.0};
    const Accelerations a = newtonian_rhs(two, q);
    CHECK(std::abs(a.x[0]) < 1e-14);
    CHECK(std::abs(a.x[1]) < 1e-14);
  }

  TEST_CASE("soliton acceleration is -V'(z) for the soliton species") {
    const ModelSpec s = fig1(1);
    PhaseState p;
    p.x = {-1.0, 0.5};
    p.p = {0.0, 0.0};
    p.z = {cplx(0.0, 0.0239)};
    p.zdot = {cplx(0.0)};
    const cplx a = newtonian_rhs(s, p).z[0];
    CHECK(a.real() == doctest::Approx(-oracle::kSolitonVPrimeRe).epsilon(1e-13));
    CHECK(a.imag() == doctest::Approx(-oracle::kSolitonVPrimeIm).epsilon(1e-13));
  }

  TEST_CASE("second-order equations follow from the dual flow (all kernels)") {
    for (KernelKind kind : {KernelKind::Rational, KernelKind::Trigonometric, KernelKind::Hyperbolic}) {
      auto [s, d] = generic(kind);
      // x'' = DF(x) F(x) for the autonomous flow, by a directional difference.
      const DualRates f = dual_rhs(s, d);
      const double eps = 1e-5;
      DualState plus = d, minus = d;
      for (std::size_t j = 0; j < d.x.size(); ++j) {
        plus.x[j] += eps * f.x[j];
        minus.x[j] -= eps * f.x[j];
      }
      for (std::size_t a = 0; a < d.z.size(); ++a) {
        plus.z[a] += eps * f.z[a];
        minus.z[a] -= eps * f.z[a];
      }
      const DualRates fp = dual_rhs(s, plus), fm = dual_rhs(s, minus);
      const DualRates acc = complex_accelerations(s, d.x, d.z);
      for (std::size_t j = 0; j < d.x.size(); ++j) {
        const cplx xdd = (fp.x[j] - fm.x[j]) / (2 * eps);
        CHECK(std::abs(xdd - acc.x[j]) < 1e-6 * (1.0 + std::abs(xdd)));
      }
      for (std::size_t a = 0; a < d.z.size(); ++a) {
        const cplx zdd = (fp.z[a] - fm.z[a]) / (2 * eps);
        CHECK(std::abs(zdd - acc.z[a]) < 1e-6 * (1.0 + std::abs(zdd)));
      }
    }
  }

  TEST_CASE("reality residual") {
    const ModelSpec s = harmonic(10);
    const auto roots = harmonic_equilibrium_reference(10, 1.0, 1.0);
    DualState d;
    d.x.assign(roots.begin(), roots.end());
    CHECK(reality_residual(s, d) < 1e-12);

    DualState off;
    off.x = {-2.0, -0.3, 0.1, 0.4, 0.9, 1.3, 2.2, 2.5, 3.1, 4.0};
    CHECK(reality_residual(s, off) > 0.1);

    const ModelSpec f = fig1(1);
    CHECK(reality_residual(f, fig1_state(f, {cplx(0.0, 0.0239)})) < 1e-9);
  }

  TEST_CASE("total energy examples") {
    ModelSpec one = harmonic(1);
    PhaseState p;
    p.x = {1.0};
    p.p = {0.0};
    CHECK(total_energy(one, p).total.real() == doctest::Approx(0.5));

    ModelSpec two = harmonic(2);
    PhaseState q;
    q.x = {-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    q.p = {0.0, 0.0};
    CHECK(total_energy(two, q).particles == doctest::Approx(1.0).epsilon(1e-14));

    // N(N-1)/2 at the harmonic ground state
    ModelSpec ten = harmonic(10);
    PhaseState r;
    r.x = harmonic_equilibrium_reference(10, 1.0, 1.0);
    r.p.assign(10, 0.0);
    CHECK(total_energy(ten, r).particles == doctest::Approx(45.0).epsilon(1e-12));
  }

  TEST_CASE("harmonic soliton states: E = N(N-1)/2 - N M") {
    for (double b : {0.5, 2.0}) {
      for (int n : {3, 10}) {
        ModelSpec s = harmonic(n);
        s.n_solitons = 1;
        const std::vector<cplx> z{cplx(0.0, b)};
        const InitReport rep = gradient_flow(s, z);
        DualState d;
        d.x.assign(rep.x.begin(), rep.x.end());
        d.z = z;
        const EnergyBreakdown e = total_energy(s, phase_from_dual(s, d));
        CHECK(std::abs(e.total - cplx(0.5 * n * (n - 1) - n, 0.0)) < 1e-8);
      }
    }
  }

  TEST_CASE("solitons enter the total with negative sign") {
    ModelSpec s = harmonic(1);
    s.n_solitons = 1;
    PhaseState p;
    p.x = {0.0};
    p.p = {0.0};
    p.z = {cplx(0.0, 1.0)};
    p.zdot = {cplx(0.0)};
    const EnergyBreakdown e = total_energy(s, p);
    CHECK(std::abs(e.solitons - cplx(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(e.total - cplx(0.5, 0.0)) < 1e-15);
    s.c.c3 = 0.1;
    CHECK_THROWS_AS(total_energy(s, p), ConfigError);
  }

  TEST_CASE("conjugation symmetry of the soliton velocities") {
    const ModelSpec s = fig1(2);
    DualState d;
    d.x = {-1.3, -0.2, 0.4, 1.7};
    d.z = {cplx(0.3, 0.2), cplx(0.3, -0.2)};
    ModelSpec small = s;
    small.n_particles = 4;
    const DualRates r = dual_rhs(small, d);
    CHECK(std::abs(r.z[1] + std::conj(r.z[0])) < 1e-12 * std::abs(r.z[0]));
  }

  TEST_CASE("collisions are detected") {
    ModelSpec s = harmonic(2);
    DualState d;
    d.x = {0.5, 0.5 + 1e-12};
    CHECK_THROWS_AS(dual_rhs(s, d), CollisionError);
    PhaseState p;
    p.x = {0.5, 0.5};
    p.p = {0.0, 0.0};
    CHECK_THROWS_AS(newtonian_rhs(s, p), CollisionError);
    ModelSpec t = s;
    t.kernel = KernelKind::Trigonometric;
    DualState w;
    w.x = {0.0, std::numbers::pi};
    CHECK_THROWS_AS(dual_rhs(t, w), CollisionError);
  }

  TEST_CASE("consistency deviation") {
    SUBCASE("O(h^2) on generic states of every family") {
      for (KernelKind kind : {KernelKind::Rational, KernelKind::Trigonometric, KernelKind::Hyperbolic}) {
        auto [s, d] = generic(kind);
        const double a = consistency_deviation(s, d, 2e-3);
        const double b = consistency_deviation(s, d, 1e-3);
        CHECK(a / b >= 3.5);
        CHECK(a / b <= 4.5);
      }
    }
    SUBCASE("vanishes at equilibrium") {
      const auto roots = harmonic_equilibrium_reference(10, 1.0, 1.0);
      DualState d;
      d.x.assign(roots.begin(), roots.end());
      CHECK(consistency_deviation(harmonic(10), d, 1e-4) < 1e-10);
    }
    SUBCASE("one-soliton preset state") {
      const ModelSpec s = fig1(1);
      const DualState d = fig1_state(s, {cplx(0.0, 0.0239)});
      const double coarse = consistency_deviation(s, d, 1e-4);
      const double fine = consistency_deviation(s, d, 1e-5);
      CHECK(coarse / fine == doctest::Approx(100.0).epsilon(0.05));
      CHECK(fine < 1e-5);
    }
    CHECK_THROWS_AS(consistency_deviation(harmonic(1), DualState{{cplx(1.0)}, {}, 0.0}, 0.0), ConfigError);
  }

  TEST_CASE("pack and unpack round trip") {
    DualState d;
    d.x = {cplx(1, 2), cplx(3, 4)};
    d.z = {cplx(5, 6)};
    const auto y = pack(d);
    CHECK(y == std::vector<double>{1, 2, 3, 4, 5, 6});
    const DualState back = unpack_dual(y, 2, 1, 0.5);
    CHECK(back.x == d.x);
    CHECK(back.z == d.z);
    CHECK(back.t == 0.5);

    PhaseState p;
    p.x = {1, 2};
    p.p = {3, 4};
    p.z = {cplx(5, 6)};
    p.zdot = {cplx(7, 8)};
    const auto q = pack(p);
    CHECK(q == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
    const PhaseState pb = unpack_phase(q, 2, 1, 0.0);
    CHECK(pb.x == p.x);
    CHECK(pb.p == p.p);
    CHECK(pb.z == p.z);
    CHECK(pb.zdot == p.zdot);
  }

  TEST_CASE("right-hand sides are bit-reproducible") {
    auto [s, d] = generic(KernelKind::Hyperbolic);
    const DualRates a = dual_rhs(s, d), b = dual_rhs(s, d);
    CHECK(a.x == b.x);
    CHECK(a.z == b.z);
  }

  TEST_CASE("phase_from_dual uses Re x' as momentum") {
    const ModelSpec s = fig1(1);
    const DualState d = fig1_state(s, {cplx(0.0, 0.0239)});
    const PhaseState p = phase_from_dual(s, d);
    const auto mom = momenta_from_solitons(s, p.x, d.z);
    for (std::size_t j = 0; j < mom.size(); ++j) CHECK(p.p[j] == doctest::Approx(mom[j]).epsilon(1e-12));
  }

  TEST_CASE("min pair distance") {
    const std::vector<cplx> x{0.0, 1.0, 3.0};
    const std::vector<cplx> z{cplx(1.0, 0.5)};
    CHECK(min_pair_distance(x, z) == doctest::Approx(0.5));
    CHECK(std::isinf(min_pair_distance(std::vector<cplx>{1.0}, {})));
  }
}
