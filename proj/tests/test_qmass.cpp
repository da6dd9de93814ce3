#include <cmath>
#include <cstdint>
#include <numbers>

#include "doctest.h"
#include "qmlab/error.hpp"
#include "qmlab/qmass.hpp"

using namespace qmlab;
using V = Vec2<double>;

namespace {

constexpr double kPi = std::numbers::pi;

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

// Boosts both components of a pair along x and re-orients the result.
BidirectionalWaved boost_pair(const BidirectionalWaved& b, double beta) {
  const auto fwd = doppler_boost(PlaneWaved(1.0, b.omega_plus(), b.axis()), beta);
  const auto bwd = doppler_boost(PlaneWaved(1.0, b.omega_minus(), V(-b.axis())), beta);
  return BidirectionalWaved::oriented(fwd.omega(), bwd.omega(), V(fwd.direction().x() > 0 ? 1.0 : -1.0, 0.0));
}

}  // namespace

TEST_CASE("boosted standing wave carries the rest-frame mass") {
  const auto b = boost_standing_wave(1.0, 0.6);
  const auto p = four_momentum_of(b);
  CHECK(p.energy == doctest::Approx(1.25));
  CHECK(p.momentum.x() == doctest::Approx(0.75));
  CHECK(invariant_mass(p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(group_velocity(p).x() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(rest_frame_mass(b) == doctest::Approx(1.0).epsilon(1e-12));

  const auto s = mass_state(b);
  CHECK(s.mass == doctest::Approx(1.0));
  CHECK(s.speed == doctest::Approx(0.6));
  REQUIRE(s.direction);
  CHECK(s.direction->isApprox(V::UnitX()));
  CHECK(s.wavelength == doctest::Approx(2 * kPi / 0.75));
}

TEST_CASE("photon pair sums") {
  const auto a = photon_momentum(2.0, V(V::UnitX()));
  const auto b = photon_momentum(0.5, V(-V::UnitX()));
  const auto total = a + b;
  CHECK(invariant_mass(a) == 0.0);
  // E = 2.5, p = 1.5 for the full (unhalved) pair.
  CHECK(total.energy == doctest::Approx(2.5));
  CHECK(invariant_mass(total) == doctest::Approx(2.0));
}

TEST_CASE("standing-wave rest case is exact") {
  for (double w : {0.25, 1.0, 3.0, 117.5}) {
    const auto s = mass_state(BidirectionalWaved(w, w));
    CHECK(s.mass == w);
    CHECK(s.speed == 0.0);
    CHECK_FALSE(s.direction);
    CHECK(std::isinf(s.wavelength));
  }
  const UnitSystem<double> u{2.0, 3.0};
  CHECK(mass_state(BidirectionalWaved(5.0, 5.0), u).mass == 3.0 * 5.0 / 4.0);
}

TEST_CASE("invariant mass under boosts") {
  Rng rng{2024};
  for (int i = 0; i < 1000; ++i) {
    const double lo = rng.uniform(0.01, 10.0);
    const auto b = BidirectionalWaved(lo * rng.uniform(1.0, 100.0), lo);
    const double m0 = invariant_mass(four_momentum_of(b));
    CHECK(m0 == doctest::Approx(std::sqrt(b.omega_plus() * b.omega_minus())).epsilon(1e-12));
    for (int k = 0; k < 5; ++k) {
      const double beta = rng.uniform(-0.9, 0.9);
      const double m1 = invariant_mass(four_momentum_of(boost_pair(b, beta)));
      CHECK(m1 == doctest::Approx(m0).epsilon(1e-12));
      const double m2 = invariant_mass(boost_four_momentum(four_momentum_of(b), beta));
      CHECK(m2 == doctest::Approx(m0).epsilon(1e-12));
    }
  }
}

TEST_CASE("four-momentum boost matches wave boost") {
  const auto p = boost_four_momentum(FourMomentumd{1.25, V(0.75, 0.0)}, -0.6);
  CHECK(p.energy == doctest::Approx(1.0));
  CHECK(std::abs(p.momentum.x()) < 1e-15);

  Rng rng{9};
  for (int i = 0; i < 200; ++i) {
    const auto b = boost_standing_wave(rng.uniform(0.1, 5.0), rng.uniform(-0.8, 0.8));
    const double beta = rng.uniform(-0.8, 0.8);
    const auto via_waves = four_momentum_of(boost_pair(b, beta));
    const auto via_vector = boost_four_momentum(four_momentum_of(b), beta);
    CHECK(via_waves.energy == doctest::Approx(via_vector.energy).epsilon(1e-12));
    CHECK(via_waves.momentum.x() == doctest::Approx(via_vector.momentum.x()).epsilon(1e-10));
  }
}

TEST_CASE("de Broglie wavelength") {
  // gamma = 1.25, m = 1, v = 0.6: h / (gamma m v) = 2 pi / 0.75.
  CHECK(de_broglie_wavelength(1.0, 0.6, 1.25) == doctest::Approx(8.37758).epsilon(1e-5));
  CHECK(std::isinf(de_broglie_wavelength(1.0, 0.0, 1.0)));
  CHECK_THROWS_AS(de_broglie_wavelength(0.0, 0.5, 1.0), Error);

  Rng rng{4};
  for (int i = 0; i < 200; ++i) {
    const double beta = rng.uniform(0.01, 0.99);
    const double w0 = rng.uniform(0.1, 10);
    const auto b = boost_standing_wave(w0, beta);
    const auto s = mass_state(b);
    const double lambda = de_broglie_wavelength(s.mass, s.speed, lorentz_gamma(beta));
    CHECK(lambda == doctest::Approx(factor_carrier_envelope(b).envelope_wavelength()).epsilon(1e-12));
    CHECK(lambda == doctest::Approx(s.wavelength).epsilon(1e-12));
  }
}

TEST_CASE("mass and speed stay physical for random pairs") {
  Rng rng{99};
  for (int i = 0; i < 1000; ++i) {
    const double lo = rng.uniform(1e-3, 1e3);
    const auto b = BidirectionalWaved(lo * rng.uniform(1.0, 100.0), lo);
    const auto s = mass_state(b);
    CHECK(s.mass > 0);
    CHECK(s.speed >= 0);
    CHECK(s.speed < 1);
    // E^2 = p^2 c^2 + m^2 c^4
    CHECK(s.energy * s.energy == doctest::Approx(s.momentum * s.momentum + s.mass * s.mass).epsilon(1e-12));
  }
}

TEST_CASE("spacelike momentum is rejected") {
  CHECK_THROWS_AS(invariant_mass(FourMomentumd{1.0, V(2.0, 0.0)}), Error);
  CHECK_THROWS_AS(group_velocity(FourMomentumd{0.0, V(0.0, 0.0)}), Error);
  CHECK(invariant_mass(FourMomentumd{1.0, V(1.0, 0.0)}) == 0.0);
}

TEST_CASE("long double mass") {
  const auto b = boost_standing_wave<long double>(1.0L, 0.6L);
  CHECK(std::abs(invariant_mass(four_momentum_of(b)) - 1.0L) < 1e-17L);
}
