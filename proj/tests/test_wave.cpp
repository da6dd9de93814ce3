#include <cmath>
#include <cstdint>
#include <numbers>

#include "doctest.h"
#include "qmlab/error.hpp"
#include "qmlab/wave.hpp"

using namespace qmlab;
using V = Vec2<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// splitmix64; enough for reproducible property sweeps.
struct Rng {
  std::uint64_t state;
  double uniform(double a, double b) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return a + (b - a) * (double(z >> 11) * 0x1.0p-53);
  }
};

// Relativistic velocity addition: two boosts by b compose to 2b / (1 + b^2).
double compose(double a, double b) { return (a + b) / (1 + a * b); }

}  // namespace

TEST_CASE("plane wave rejects invariant violations") {
  CHECK_THROWS_AS(PlaneWaved(0.0, 1.0, V::UnitX()), Error);
  CHECK_THROWS_AS(PlaneWaved(1.0, -1.0, V::UnitX()), Error);
  CHECK_THROWS_AS(PlaneWaved(1.0, 1.0, V(1.0, 1.0)), Error);
  CHECK_THROWS_AS(Superpositiond({}), Error);
  CHECK_NOTHROW(PlaneWaved(1.0, 1.0, V(0.6, 0.8)));
}

TEST_CASE("evaluation") {
  const PlaneWaved w(1.0, 1.0, V::UnitX());
  CHECK(w(V::Zero(), 0.0) == 0.0);
  CHECK(w(V(kPi / 2, 0.0), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // sin(k x - w t): a crest at x = pi/2 moves to x = pi/2 + c t.
  CHECK(w(V(kPi / 2 + 0.3, 0.0), 0.3) == doctest::Approx(1.0).epsilon(1e-15));

  const Superpositiond s({w, PlaneWaved(2.0, 3.0, V::UnitY(), 0.1)});
  const V r(0.4, -1.2);
  CHECK(evaluate(s, r, 0.7) == doctest::Approx(std::sin(0.4 - 0.7) + 2 * std::sin(-3.6 - 2.1 + 0.1)));
}

TEST_CASE("doppler boost") {
  const auto fwd = doppler_boost(PlaneWaved(1.0, 1.0, V::UnitX()), 0.6);
  const auto bwd = doppler_boost(PlaneWaved(1.0, 1.0, V(-V::UnitX())), 0.6);
  CHECK(fwd.omega() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(bwd.omega() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fwd.direction().isApprox(V::UnitX()));
  CHECK(bwd.direction().isApprox(V(-V::UnitX())));

  SUBCASE("identity boost returns the input exactly") {
    const PlaneWaved w(1.7, 2.3, V(0.6, -0.8), 0.4);
    const auto b = doppler_boost(w, 0.0);
    CHECK(b.omega() == w.omega());
    CHECK(b.direction() == w.direction());
    CHECK(b.amplitude() == w.amplitude());
    CHECK(b.phase() == w.phase());
  }

  SUBCASE("two half boosts compose") {
    Rng rng{7};
    for (int i = 0; i < 200; ++i) {
      const double b = rng.uniform(-0.7, 0.7);
      const double phi = rng.uniform(-kPi, kPi);
      const PlaneWaved w(1.0, rng.uniform(0.1, 10.0), V(std::cos(phi), std::sin(phi)));
      const auto twice = doppler_boost(doppler_boost(w, b), b);
      const auto once = doppler_boost(w, compose(b, b));
      CHECK(twice.omega() == doctest::Approx(once.omega()).epsilon(1e-12));
      CHECK((twice.direction() - once.direction()).norm() < 1e-12);
    }
  }

  SUBCASE("aberration keeps the wave null") {
    const auto w = doppler_boost(PlaneWaved(1.0, 1.0, V(0.0, 1.0)), 0.6);
    // Transverse wave: omega' = gamma omega, direction (beta, 1/gamma).
    CHECK(w.omega() == doctest::Approx(1.25));
    CHECK(w.direction().x() == doctest::Approx(0.6));
    CHECK(w.direction().y() == doctest::Approx(0.8));
  }

  CHECK_THROWS_AS(doppler_boost(PlaneWaved(1.0, 1.0, V::UnitX()), 1.0), Error);
  CHECK_THROWS_AS(doppler_boost(PlaneWaved(1.0, 1.0, V::UnitX()), -1.5), Error);
}

TEST_CASE("boosted standing wave") {
  const auto b = boost_standing_wave(1.0, 0.6);
  CHECK(b.omega_plus() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(b.omega_minus() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b.omega_plus() * b.omega_minus() == doctest::Approx(1.0).epsilon(1e-12));

  const auto rest = boost_standing_wave(3.0, 0.0);
  CHECK(rest.omega_plus() == 3.0);
  CHECK(rest.omega_minus() == 3.0);

  const auto left = boost_standing_wave(1.0, -0.6);
  CHECK(left.axis().isApprox(V(-V::UnitX())));
  CHECK(left.omega_plus() == doctest::Approx(2.0));

  Rng rng{11};
  for (int i = 0; i < 500; ++i) {
    const double w0 = rng.uniform(0.01, 100.0);
    const auto p = boost_standing_wave(w0, rng.uniform(-0.99, 0.99));
    CHECK(p.omega_plus() * p.omega_minus() == doctest::Approx(w0 * w0).epsilon(1e-12));
  }
}

TEST_CASE("carrier-envelope factorization") {
  const auto b = boost_standing_wave(1.0, 0.6);
  const auto pair = factor_carrier_envelope(b);
  const auto s = to_superposition(b);

  CHECK(pair.carrier.wavenumber == doctest::Approx(1.25));
  CHECK(pair.envelope.wavenumber == doctest::Approx(0.75));
  CHECK(pair.envelope_wavelength() == doctest::Approx(8.37758).epsilon(1e-5));
  CHECK(pair.carrier.phase_speed() * pair.envelope.phase_speed() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair.carrier.phase_speed() <= 1.0);
  CHECK(pair.envelope.phase_speed() >= 1.0);

  Rng rng{3};
  for (int i = 0; i < 2000; ++i) {
    const V r(rng.uniform(-20, 20), rng.uniform(-5, 5));
    const double t = rng.uniform(-20, 20);
    CHECK(std::abs(evaluate(s, r, t) - pair(r, t)) < 1e-12);
  }

  SUBCASE("negative boost factors along the flipped axis") {
    const auto nb = boost_standing_wave(1.0, -0.3);
    const auto np = factor_carrier_envelope(nb);
    const auto ns = to_superposition(nb);
    for (double x = -10; x <= 10; x += 0.37) {
      CHECK(std::abs(evaluate(ns, x, 1.3) - np(V(x, 0.0), 1.3)) < 1e-12);
    }
  }

  SUBCASE("speed product over random pairs") {
    Rng g{5};
    for (int i = 0; i < 1000; ++i) {
      const double lo = g.uniform(0.01, 5.0);
      const auto p = factor_carrier_envelope(BidirectionalWaved(lo * g.uniform(1.0001, 100.0), lo));
      CHECK(p.carrier.phase_speed() * p.envelope.phase_speed() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("units scale wavenumbers") {
  const UnitSystem<double> u{3.0, 2.0};
  const PlaneWaved w(1.0, 6.0, V::UnitX());
  CHECK(w.wavenumber(u) == doctest::Approx(2.0));
  CHECK(u.h() == doctest::Approx(4 * kPi));
  CHECK_THROWS_AS((UnitSystem<double>{0.0, 1.0}.validate()), Error);
  CHECK_THROWS_AS((UnitSystem<double>{1.0, -1.0}.validate()), Error);
}

TEST_CASE("wave equation residual") {
  SUBCASE("single plane wave on the Courant grid is exact") {
    const Superpositiond s({PlaneWaved(1.0, 2.0, V(0.6, 0.8))});
    CHECK(wave_equation_residual(s, standard_grid(2.0)) < 1e-3);
  }

  SUBCASE("second-order convergence off the Courant grid") {
    // dt = dx / (2c): the discrete operator no longer cancels exactly.
    const double w = 1.0;
    auto f = [&](double x, double y, double t) { return std::sin(w * (0.6 * x + 0.8 * y) - w * t); };
    auto residual = [&](int ppp) {
      auto g = standard_grid(w, Units{}, ppp);
      g.dt *= 0.5;
      return wave_equation_residual(f, g, w, 1.0);
    };
    const double coarse = residual(32);
    const double fine = residual(64);
    CHECK(coarse > 0);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
    CHECK(fine < 1e-3);
  }

  SUBCASE("corrupted dispersion fails") {
    const double w = 1.0;
    auto bad = [&](double x, double, double t) { return std::sin(1.3 * w * x - w * t); };
    CHECK(wave_equation_residual(bad, standard_grid(w), w, 1.0) > 0.1);
  }

  SUBCASE("boosted pairs and random superpositions pass") {
    Rng rng{17};
    for (int i = 0; i < 20; ++i) {
      std::vector<PlaneWaved> waves;
      for (int k = 0; k < 4; ++k) {
        const double phi = rng.uniform(-kPi, kPi);
        waves.emplace_back(rng.uniform(0.1, 2), rng.uniform(0.5, 3), V(std::cos(phi), std::sin(phi)),
                           rng.uniform(0, 2 * kPi));
      }
      const Superpositiond s(waves);
      CHECK(wave_equation_residual(s, standard_grid(s.max_omega())) < 1e-3);
    }
    const auto s = to_superposition(boost_standing_wave(1.0, 0.9));
    CHECK(wave_equation_residual(s, standard_grid(s.max_omega())) < 1e-3);
  }
}

TEST_CASE("long double instantiation") {
  using L = long double;
  const auto b = boost_standing_wave<L>(1.0L, 0.6L);
  CHECK(std::abs(b.omega_plus() - 2.0L) < 1e-17L);
  CHECK(std::abs(b.omega_minus() - 0.5L) < 1e-17L);
  const auto pair = factor_carrier_envelope(b);
  const auto s = to_superposition(b);
  const Vec2<L> r(1.25L, 0.0L);
  CHECK(std::abs(evaluate(s, r, 0.5L) - pair(r, 0.5L)) < 1e-17L);
}
