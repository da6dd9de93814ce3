#pragma once

// Four-momentum algebra for interfering light: the invariant ("quantum rest")
// mass of a wave configuration, its group velocity and its de Broglie length.

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <optional>

#include "qmlab/error.hpp"
#include "qmlab/units.hpp"
#include "qmlab/wave.hpp"

namespace qmlab {

template <typename Scalar = double>
struct FourMomentum {
  Scalar energy{0};
  Vec2<Scalar> momentum{Vec2<Scalar>::Zero()};

  FourMomentum operator+(const FourMomentum& o) const {
    return {energy + o.energy, Vec2<Scalar>(momentum + o.momentum)};
  }
};

/// Single null wave: E = hbar * omega, p = hbar * omega / c along its direction.
template <typename Scalar>
FourMomentum<Scalar> photon_momentum(Scalar omega, const Vec2<Scalar>& direction,
                                     const UnitSystem<Scalar>& units = {}) {
  return {units.hbar * omega, Vec2<Scalar>(direction * (units.hbar * omega / units.c))};
}

/// One photon's worth split between the two directions:
/// E = hbar (w+ + w-) / 2, p = hbar (w+ - w-) / (2c) along the axis.
template <typename Scalar>
FourMomentum<Scalar> four_momentum_of(const BidirectionalWave<Scalar>& b,
                                      const UnitSystem<Scalar>& units = {}) {
  const Scalar e = units.hbar * (b.omega_plus() + b.omega_minus()) / Scalar(2);
  const Scalar p = units.hbar * (b.omega_plus() - b.omega_minus()) / (Scalar(2) * units.c);
  return {e, Vec2<Scalar>(b.axis() * p)};
}

/// m = sqrt(E^2 - |p|^2 c^2) / c^2, evaluated as (E - |p|c)(E + |p|c) to keep
/// precision near the null cone. Slightly spacelike input (rounding) maps to 0.
template <typename Scalar>
Scalar invariant_mass(const FourMomentum<Scalar>& p, const UnitSystem<Scalar>& units = {}) {
  const Scalar pc = p.momentum.norm() * units.c;
  const Scalar m2 = (p.energy - pc) * (p.energy + pc);
  const Scalar tol = std::max(Scalar(1e-12), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
  if (p.energy < Scalar(0) || m2 < -tol * p.energy * p.energy) {
    throw Error(ErrorKind::InvalidMomentum, "four-momentum is spacelike");
  }
  return m2 <= Scalar(0) ? Scalar(0) : std::sqrt(m2) / (units.c * units.c);
}

/// v = p c^2 / E.
template <typename Scalar>
Vec2<Scalar> group_velocity(const FourMomentum<Scalar>& p, const UnitSystem<Scalar>& units = {}) {
  if (!(p.energy > Scalar(0))) {
    throw Error(ErrorKind::InvalidMomentum, "group velocity needs positive energy");
  }
  return p.momentum * (units.c * units.c / p.energy);
}

/// lambda = h / (gamma m v). Returns +infinity for v = 0 (standing wave).
template <typename Scalar>
Scalar de_broglie_wavelength(Scalar mass, Scalar speed, Scalar gamma,
                             const UnitSystem<Scalar>& units = {}) {
  if (!(mass > Scalar(0))) {
    throw Error(ErrorKind::UndefinedMass, "de Broglie wavelength needs positive mass");
  }
  if (speed == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return units.h() / (gamma * mass * std::abs(speed));
}

/// Active Lorentz boost by beta along x (the configuration ends up moving
/// faster along +x for beta > 0).
template <typename Scalar>
FourMomentum<Scalar> boost_four_momentum(const FourMomentum<Scalar>& p, Scalar beta,
                                         const UnitSystem<Scalar>& units = {}) {
  if (!(std::abs(beta) < Scalar(1))) {
    throw Error(ErrorKind::InvalidBoost, "|beta| must be < 1");
  }
  if (beta == Scalar(0)) return p;
  const Scalar gamma = lorentz_gamma(beta);
  const Scalar px = p.momentum.x();
  return {gamma * (p.energy + beta * units.c * px),
          Vec2<Scalar>(gamma * (px + beta * p.energy / units.c), p.momentum.y())};
}

/// Alternative route to the mass of a bidirectional wave: boost its component
/// frequencies into the frame where they coincide and read m = hbar w' / c^2
/// off the standing wave found there.
template <typename Scalar>
Scalar rest_frame_mass(const BidirectionalWave<Scalar>& b, const UnitSystem<Scalar>& units = {}) {
  const Scalar beta = -(b.omega_plus() - b.omega_minus()) / (b.omega_plus() + b.omega_minus());
  const Scalar along = b.axis().x();
  const auto forward = doppler_boost(
      PlaneWave<Scalar>(Scalar(1), b.omega_plus(), Vec2<Scalar>(along, Scalar(0))), beta * along);
  return units.hbar * forward.omega() / (units.c * units.c);
}

template <typename Scalar = double>
struct MassState {
  Scalar mass{0};
  /// Group speed as a fraction of c.
  Scalar speed{0};
  std::optional<Vec2<Scalar>> direction;
  Scalar wavelength{0};
  Scalar energy{0};
  Scalar momentum{0};
};

template <typename Scalar>
MassState<Scalar> mass_state(const BidirectionalWave<Scalar>& b, const UnitSystem<Scalar>& units = {}) {
  const auto p = four_momentum_of(b, units);
  MassState<Scalar> s;
  s.energy = p.energy;
  s.momentum = p.momentum.norm();
  s.mass = invariant_mass(p, units);
  s.speed = group_velocity(p, units).norm() / units.c;
  if (s.momentum > Scalar(0)) {
    s.direction = b.axis();
    s.wavelength = units.h() / s.momentum;
  } else {
    s.wavelength = std::numeric_limits<Scalar>::infinity();
  }
  return s;
}

using FourMomentumd = FourMomentum<double>;
using MassStated = MassState<double>;

}  // namespace qmlab
