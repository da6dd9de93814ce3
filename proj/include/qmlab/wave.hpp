#pragma once

// Scalar plane waves, Lorentz/Doppler boosts and superpositions.
//
// A PlaneWave is always null (lightlike): its wavenumber is omega / c and is
// never stored. Positions are 2D; 1D scenarios use the x-axis with y = 0.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "qmlab/error.hpp"
#include "qmlab/units.hpp"

namespace qmlab {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

namespace detail {

template <typename Scalar>
Scalar unit_tolerance() {
  return std::max(Scalar(1e-12), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
}

template <typename Scalar>
void require_unit(const Vec2<Scalar>& v, const char* what) {
  if (!(std::abs(v.norm() - Scalar(1)) <= unit_tolerance<Scalar>())) {
    throw Error(ErrorKind::InvalidWave, std::string(what) + " must be a unit vector");
  }
}

}  // namespace detail

template <typename Scalar = double>
class PlaneWave {
 public:
  using Vector = Vec2<Scalar>;

  PlaneWave(Scalar amplitude, Scalar omega, const Vector& direction, Scalar phase = Scalar(0))
      : amplitude_(amplitude), omega_(omega), direction_(direction), phase_(phase) {
    if (!(amplitude > Scalar(0)) || !std::isfinite(double(amplitude))) {
      throw Error(ErrorKind::InvalidWave, "amplitude must be finite and positive");
    }
    if (!(omega > Scalar(0)) || !std::isfinite(double(omega))) {
      throw Error(ErrorKind::InvalidWave, "omega must be finite and positive");
    }
    detail::require_unit(direction, "direction");
  }

  Scalar amplitude() const { return amplitude_; }
  Scalar omega() const { return omega_; }
  const Vector& direction() const { return direction_; }
  Scalar phase() const { return phase_; }

  Scalar wavenumber(const UnitSystem<Scalar>& units = {}) const { return omega_ / units.c; }

  Scalar operator()(const Vector& r, Scalar t, const UnitSystem<Scalar>& units = {}) const {
    return amplitude_ * std::sin(wavenumber(units) * direction_.dot(r) - omega_ * t + phase_);
  }

 private:
  Scalar amplitude_;
  Scalar omega_;
  Vector direction_;
  Scalar phase_;
};

template <typename Scalar = double>
class Superposition {
 public:
  using Vector = Vec2<Scalar>;

  explicit Superposition(std::vector<PlaneWave<Scalar>> waves, UnitSystem<Scalar> units = {})
      : waves_(std::move(waves)), units_(units) {
    if (waves_.empty()) {
      throw Error(ErrorKind::InvalidWave, "superposition needs at least one wave");
    }
    units_.validate();
  }

  const std::vector<PlaneWave<Scalar>>& waves() const { return waves_; }
  const UnitSystem<Scalar>& units() const { return units_; }

  Scalar max_omega() const {
    Scalar best = Scalar(0);
    for (const auto& w : waves_) best = std::max(best, w.omega());
    return best;
  }

 private:
  std::vector<PlaneWave<Scalar>> waves_;
  UnitSystem<Scalar> units_;
};

template <typename Scalar>
Scalar evaluate(const Superposition<Scalar>& s, const Vec2<Scalar>& r, Scalar t) {
  Scalar sum = Scalar(0);
  for (const auto& w : s.waves()) sum += w(r, t, s.units());
  return sum;
}

template <typename Scalar>
Scalar evaluate(const Superposition<Scalar>& s, Scalar x, Scalar t) {
  return evaluate(s, Vec2<Scalar>(x, Scalar(0)), t);
}

/// Boosts a wave by +beta along x: omega' = gamma * omega * (1 + beta * d_x),
/// with the propagation direction aberrated. Amplitude is carried unchanged.
template <typename Scalar>
PlaneWave<Scalar> doppler_boost(const PlaneWave<Scalar>& w, Scalar beta) {
  if (!(std::abs(beta) < Scalar(1))) {
    throw Error(ErrorKind::InvalidBoost, "|beta| must be < 1");
  }
  if (beta == Scalar(0)) return w;
  const Scalar gamma = lorentz_gamma(beta);
  const Scalar dx = w.direction().x();
  const Scalar dy = w.direction().y();
  const Scalar doppler = Scalar(1) + beta * dx;
  Vec2<Scalar> dir(gamma * (dx + beta), dy);
  dir /= dir.norm();
  return PlaneWave<Scalar>(w.amplitude(), gamma * w.omega() * doppler, dir, w.phase());
}

/// Two counter-propagating waves on one axis, oriented so omega_plus travels
/// along +axis and omega_plus >= omega_minus > 0.
template <typename Scalar = double>
class BidirectionalWave {
 public:
  using Vector = Vec2<Scalar>;

  BidirectionalWave(Scalar omega_plus, Scalar omega_minus, const Vector& axis = Vector::UnitX())
      : omega_plus_(omega_plus), omega_minus_(omega_minus), axis_(axis) {
    if (!(omega_minus > Scalar(0)) || !std::isfinite(double(omega_plus))) {
      throw Error(ErrorKind::InvalidWave, "bidirectional frequencies must be finite and positive");
    }
    if (!(omega_plus >= omega_minus)) {
      throw Error(ErrorKind::InvalidWave, "omega_plus must be >= omega_minus");
    }
    detail::require_unit(axis, "axis");
  }

  /// Builds the pair from frequencies travelling along +axis and -axis,
  /// flipping the axis when the backward wave is the stronger one.
  static BidirectionalWave oriented(Scalar omega_forward, Scalar omega_backward,
                                    const Vector& axis = Vector::UnitX()) {
    if (omega_forward >= omega_backward) {
      return BidirectionalWave(omega_forward, omega_backward, axis);
    }
    return BidirectionalWave(omega_backward, omega_forward, Vector(-axis));
  }

  Scalar omega_plus() const { return omega_plus_; }
  Scalar omega_minus() const { return omega_minus_; }
  const Vector& axis() const { return axis_; }

 private:
  Scalar omega_plus_;
  Scalar omega_minus_;
  Vector axis_;
};

/// Rest-frame standing wave of frequency omega0 seen from a frame in which it
/// moves at beta along x.
template <typename Scalar>
BidirectionalWave<Scalar> boost_standing_wave(Scalar omega0, Scalar beta) {
  if (!(omega0 > Scalar(0))) {
    throw Error(ErrorKind::InvalidWave, "omega0 must be positive");
  }
  const Vec2<Scalar> ex = Vec2<Scalar>::UnitX();
  const auto forward = doppler_boost(PlaneWave<Scalar>(Scalar(1), omega0, ex), beta);
  const auto backward = doppler_boost(PlaneWave<Scalar>(Scalar(1), omega0, Vec2<Scalar>(-ex)), beta);
  return BidirectionalWave<Scalar>::oriented(forward.omega(), backward.omega(), ex);
}

/// The two plane waves of a bidirectional wave, each of the given amplitude.
/// The backward wave carries phase pi so that the rest case reads
/// 2A sin(kx) cos(wt).
template <typename Scalar>
Superposition<Scalar> to_superposition(const BidirectionalWave<Scalar>& b,
                                       Scalar amplitude = Scalar(1),
                                       const UnitSystem<Scalar>& units = {}) {
  const Vec2<Scalar> a = b.axis();
  return Superposition<Scalar>(
      {PlaneWave<Scalar>(amplitude, b.omega_plus(), a, Scalar(0)),
       PlaneWave<Scalar>(amplitude, b.omega_minus(), Vec2<Scalar>(-a), std::numbers::pi_v<Scalar>)},
      units);
}

template <typename Scalar = double>
struct WaveFactor {
  Scalar wavenumber{0};
  Scalar omega{0};
  Scalar phase{0};

  /// Phase speed omega / k; infinite for a spatially uniform factor.
  Scalar phase_speed() const {
    return wavenumber == Scalar(0) ? std::numeric_limits<Scalar>::infinity() : omega / wavenumber;
  }
};

/// amplitude * sin(carrier) * cos(envelope), with both phases measured along
/// the axis coordinate s = axis . r.
template <typename Scalar = double>
struct CarrierEnvelopePair {
  WaveFactor<Scalar> carrier;
  WaveFactor<Scalar> envelope;
  Scalar amplitude{0};
  Vec2<Scalar> axis{Vec2<Scalar>::UnitX()};

  Scalar carrier_value(Scalar s, Scalar t) const {
    return std::sin(carrier.wavenumber * s - carrier.omega * t + carrier.phase);
  }
  Scalar envelope_value(Scalar s, Scalar t) const {
    return std::cos(envelope.wavenumber * s - envelope.omega * t + envelope.phase);
  }
  Scalar operator()(const Vec2<Scalar>& r, Scalar t) const {
    const Scalar s = axis.dot(r);
    return amplitude * carrier_value(s, t) * envelope_value(s, t);
  }
  Scalar envelope_wavelength() const {
    return envelope.wavenumber == Scalar(0)
               ? std::numeric_limits<Scalar>::infinity()
               : Scalar(2) * std::numbers::pi_v<Scalar> / envelope.wavenumber;
  }
};

/// Product form of to_superposition(b, amplitude): the carrier moves at the
/// group speed v <= c, the envelope at c^2 / v >= c.
template <typename Scalar>
CarrierEnvelopePair<Scalar> factor_carrier_envelope(const BidirectionalWave<Scalar>& b,
                                                    Scalar amplitude = Scalar(1),
                                                    const UnitSystem<Scalar>& units = {}) {
  const Scalar sum = (b.omega_plus() + b.omega_minus()) / Scalar(2);
  const Scalar diff = (b.omega_plus() - b.omega_minus()) / Scalar(2);
  CarrierEnvelopePair<Scalar> pair;
  pair.carrier = {sum / units.c, diff, Scalar(0)};
  pair.envelope = {diff / units.c, sum, Scalar(0)};
  pair.amplitude = Scalar(2) * amplitude;
  pair.axis = b.axis();
  return pair;
}

template <typename Scalar = double>
struct SpaceTimeGrid {
  Scalar x0{0};
  Scalar dx{0};
  int nx{0};
  Scalar t0{0};
  Scalar dt{0};
  int nt{0};
  Scalar y0{0};
};

/// Grid resolving the shortest component period with `points_per_period`
/// samples in both space and time, spanning `periods` of it.
template <typename Scalar>
SpaceTimeGrid<Scalar> standard_grid(Scalar omega_max, const UnitSystem<Scalar>& units = {},
                                    int points_per_period = 64, int periods = 4) {
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  SpaceTimeGrid<Scalar> g;
  g.dx = two_pi * units.c / omega_max / Scalar(points_per_period);
  g.dt = two_pi / omega_max / Scalar(points_per_period);
  g.nx = points_per_period * periods + 1;
  g.nt = points_per_period * periods + 1;
  return g;
}

/// Normalized vacuum wave-equation residual of an arbitrary field f(x, y, t):
/// max |f_tt - c^2 (f_xx + f_yy)| / (max |f| * omega_max^2) over the interior
/// of the grid, using second-order central differences (dy = dx).
template <typename Scalar, typename Field>
Scalar wave_equation_residual(Field&& f, const SpaceTimeGrid<Scalar>& grid, Scalar omega_max,
                              Scalar c = Scalar(1)) {
  if (grid.nx < 3 || grid.nt < 3 || !(grid.dx > 0) || !(grid.dt > 0)) {
    throw Error(ErrorKind::InsufficientSpan, "residual grid needs at least 3x3 points");
  }
  Scalar worst = Scalar(0);
  Scalar peak = Scalar(0);
  const Scalar hx2 = grid.dx * grid.dx;
  const Scalar ht2 = grid.dt * grid.dt;
  const Scalar y = grid.y0;
  for (int j = 0; j < grid.nt; ++j) {
    const Scalar t = grid.t0 + grid.dt * Scalar(j);
    for (int i = 0; i < grid.nx; ++i) {
      const Scalar x = grid.x0 + grid.dx * Scalar(i);
      const Scalar centre = f(x, y, t);
      peak = std::max(peak, std::abs(centre));
      if (i == 0 || j == 0 || i == grid.nx - 1 || j == grid.nt - 1) continue;
      const Scalar ftt = (f(x, y, t + grid.dt) - Scalar(2) * centre + f(x, y, t - grid.dt)) / ht2;
      const Scalar fxx = (f(x + grid.dx, y, t) - Scalar(2) * centre + f(x - grid.dx, y, t)) / hx2;
      const Scalar fyy = (f(x, y + grid.dx, t) - Scalar(2) * centre + f(x, y - grid.dx, t)) / hx2;
      worst = std::max(worst, std::abs(ftt - c * c * (fxx + fyy)));
    }
  }
  if (peak == Scalar(0)) return Scalar(0);
  return worst / (peak * omega_max * omega_max);
}

template <typename Scalar>
Scalar wave_equation_residual(const Superposition<Scalar>& s, const SpaceTimeGrid<Scalar>& grid) {
  auto field = [&s](Scalar x, Scalar y, Scalar t) { return evaluate(s, Vec2<Scalar>(x, y), t); };
  return wave_equation_residual(field, grid, s.max_omega(), s.units().c);
}

using PlaneWaved = PlaneWave<double>;
using Superpositiond = Superposition<double>;
using BidirectionalWaved = BidirectionalWave<double>;
using CarrierEnvelopePaird = CarrierEnvelopePair<double>;

}  // namespace qmlab
