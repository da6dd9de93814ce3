#include "qmlab/boxwell.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "qmlab/error.hpp"

namespace qmlab::boxwell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFieldScale = 4.0;
// Global state weights below this fraction of kFieldScale are not used to
// normalize local amplitudes.
constexpr double kMinWeight = 0.25;
constexpr double kBisectionTol = 1e-12;
constexpr double kMaxBeta = 1.0 - 1e-9;

int samples_across(double wavenumber, double length, int per_wavelength, int minimum) {
  const double wavelengths = wavenumber * length / (2.0 * kPi);
  return std::max(minimum, static_cast<int>(std::ceil(wavelengths * per_wavelength)) + 1);
}

}  // namespace

void BoxConfig::validate() const {
  units.validate();
  if (!(W > 0) || !std::isfinite(W)) throw Error(ErrorKind::InvalidConfig, "well width W must be positive");
  if (!(L > 0) || !(L <= W / 10.0)) throw Error(ErrorKind::InvalidConfig, "cavity length needs 0 < L <= W/10");
  if (!(beta > 0) || !(beta < 1)) throw Error(ErrorKind::InvalidConfig, "cavity speed needs 0 < v < c");
  if (!(omega0 > 0) || !(omega0 * W / units.c >= kMinCarrierPhase)) {
    throw Error(ErrorKind::InvalidConfig, "omega0 W / c must be >= 20 so the carrier is resolved");
  }
}

BoxKinematics box_kinematics(const BoxConfig& cfg) {
  const auto pair = boost_standing_wave(cfg.omega0, cfg.beta);
  BoxKinematics k;
  k.gamma = lorentz_gamma(cfg.beta);
  k.omega_plus = pair.omega_plus();
  k.omega_minus = pair.omega_minus();
  k.omega_mean = 0.5 * (k.omega_plus + k.omega_minus);
  k.omega_beat = 0.5 * (k.omega_plus - k.omega_minus);
  k.k_mean = k.omega_mean / cfg.units.c;
  k.k_beat = k.omega_beat / cfg.units.c;
  return k;
}

Superpositiond build_field(const BoxConfig& cfg) {
  cfg.validate();
  const auto k = box_kinematics(cfg);
  const Vec2<double> ex = Vec2<double>::UnitX();
  const Vec2<double> wx = -ex;
  return Superpositiond({PlaneWaved(1.0, k.omega_plus, ex, 0.0),
                         PlaneWaved(1.0, k.omega_minus, wx, kPi),
                         PlaneWaved(1.0, k.omega_plus, wx, kPi),
                         PlaneWaved(1.0, k.omega_minus, ex, 0.0)},
                        cfg.units);
}

StateBasis state_basis(const BoxKinematics& kin, double x) {
  return {std::sin(kin.k_mean * x) * std::cos(kin.k_beat * x),
          std::cos(kin.k_mean * x) * std::sin(kin.k_beat * x)};
}

double field_closed_form(const BoxConfig& cfg, double x, double t) {
  const auto k = box_kinematics(cfg);
  const auto b = state_basis(k, x);
  return kFieldScale * (b.cosine * std::cos(k.omega_mean * t) * std::cos(k.omega_beat * t) -
                        b.sine * std::sin(k.omega_mean * t) * std::sin(k.omega_beat * t));
}

void sample_probe(const BoxConfig& cfg, double probe, double duration, double dt,
                  Eigen::VectorXd& times, Eigen::VectorXd& values) {
  const auto field = build_field(cfg);
  const auto n = static_cast<Eigen::Index>(std::floor(duration / dt + 1e-9)) + 1;
  times.resize(n);
  values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    times[i] = dt * static_cast<double>(i);
    values[i] = evaluate(field, probe, times[i]);
  }
}

BeatAnalysis analyze_beats(const BoxConfig& cfg, double probe, double duration, double dt) {
  cfg.validate();
  const auto k = box_kinematics(cfg);
  if (!(probe > 0) || !(probe < cfg.W)) throw Error(ErrorKind::InvalidConfig, "probe must lie inside the well");
  if (!(duration * (1 + 1e-9) >= 8.0 * 2.0 * kPi / k.omega_beat)) {
    throw Error(ErrorKind::InsufficientSpan, "duration must cover at least 8 beat periods");
  }
  if (!(dt > 0) || dt > 2.0 * kPi / k.omega_mean / 16.0 * (1 + 1e-9)) {
    throw Error(ErrorKind::InvalidConfig, "dt must give >= 16 samples per fast period");
  }
  Eigen::VectorXd times;
  Eigen::VectorXd values;
  sample_probe(cfg, probe, duration, dt, times, values);

  BeatAnalysis out;
  out.peaks = measure_temporal_frequencies(times, values, 2);
  if (out.peaks[1].magnitude < 1e-2 * out.peaks[0].magnitude) {
    throw Error(ErrorKind::DegenerateProbe, "probe sits on a node of one spectral line; offset it");
  }
  const double hi = std::max(out.peaks[0].omega, out.peaks[1].omega);
  const double lo = std::min(out.peaks[0].omega, out.peaks[1].omega);
  out.fast = 0.5 * (hi + lo);
  out.slow = 0.5 * (hi - lo);
  out.predicted_fast = k.gamma * cfg.omega0;
  out.predicted_slow = k.gamma * cfg.omega0 * cfg.beta;
  out.fast_error = std::abs(out.fast - out.predicted_fast) / out.predicted_fast;
  out.slow_error = std::abs(out.slow - out.predicted_slow) / out.predicted_slow;
  return out;
}

InternalStates project_internal_states(const BoxConfig& cfg, double t) {
  cfg.validate();
  if (!(t >= 0)) throw Error(ErrorKind::InvalidConfig, "projection time must be >= 0");
  const auto k = box_kinematics(cfg);
  if (k.k_beat * cfg.W < 0.1) {
    throw Error(ErrorKind::Conditioning, "state basis is near-degenerate (dk W < 0.1)");
  }
  const auto field = build_field(cfg);
  const int n = samples_across(k.k_mean, cfg.W, 32, 1024);
  Eigen::MatrixXd basis(n, 2);
  Eigen::VectorXd snapshot(n);
  for (int i = 0; i < n; ++i) {
    const double x = cfg.W * i / (n - 1);
    const auto b = state_basis(k, x);
    basis(i, 0) = b.cosine;
    basis(i, 1) = b.sine;
    snapshot[i] = evaluate(field, x, t);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::Vector2d coef = qr.solve(snapshot);
  InternalStates s;
  s.cosine = coef[0];
  s.sine = coef[1];
  s.field_norm = snapshot.norm();
  s.residual_norm = (basis * coef - snapshot).norm();
  return s;
}

std::size_t InternalStateTrace::valid_count() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), true));
}

InternalStateTrace trace_states_vs_position(const BoxConfig& cfg, int positions) {
  cfg.validate();
  if (positions < 16) throw Error(ErrorKind::InvalidConfig, "trace needs at least 16 positions");
  const auto k = box_kinematics(cfg);
  const auto field = build_field(cfg);
  const double speed = cfg.beta * cfg.units.c;
  const double half = 0.5 * cfg.L;

  InternalStateTrace trace;
  trace.resolution_warning = cfg.L * k.k_beat < 0.05;
  trace.positions.resize(positions);
  trace.cosine.assign(positions, 0.0);
  trace.sine.assign(positions, 0.0);
  trace.valid.assign(positions, false);

  const int m = samples_across(k.k_mean, cfg.L, 48, 128);
  constexpr int kOrder = 4;  // envelope polynomial terms 1, xi, xi^2, xi^3
  Eigen::MatrixXd model(m, 2 * kOrder);
  Eigen::VectorXd window(m);

  for (int p = 0; p < positions; ++p) {
    const double xc = half + (cfg.W - cfg.L) * p / (positions - 1);
    const double t = xc / speed;
    trace.positions[p] = xc;

    for (int i = 0; i < m; ++i) {
      const double xi = -1.0 + 2.0 * i / (m - 1);
      const double x = xc + half * xi;
      const double s = std::sin(k.k_mean * x);
      const double c = std::cos(k.k_mean * x);
      double power = 1.0;
      for (int j = 0; j < kOrder; ++j) {
        model(i, j) = s * power;
        model(i, kOrder + j) = c * power;
        power *= xi;
      }
      window[i] = evaluate(field, x, t);
    }
    const Eigen::VectorXd coef = model.colPivHouseholderQr().solve(window);

    const auto weights = project_internal_states(cfg, t);
    const double floor = kMinWeight * kFieldScale;
    if (std::abs(weights.cosine) < floor || std::abs(weights.sine) < floor) continue;
    trace.cosine[p] = coef[0] / weights.cosine;
    trace.sine[p] = coef[kOrder] / weights.sine;
    trace.valid[p] = true;
  }

  // envelope wavenumber: slope of the unwrapped helix phase
  std::vector<double> xs;
  std::vector<double> phases;
  for (int p = 0; p < positions; ++p) {
    if (!trace.valid[p]) continue;
    double phase = std::atan2(trace.sine[p], trace.cosine[p]);
    if (!phases.empty()) {
      while (phase - phases.back() > kPi) phase -= 2.0 * kPi;
      while (phase - phases.back() < -kPi) phase += 2.0 * kPi;
    }
    xs.push_back(trace.positions[p]);
    phases.push_back(phase);
  }
  if (xs.size() < 2) {
    throw Error(ErrorKind::Conditioning, "too few positions with usable state weights");
  }
  const Eigen::Map<const Eigen::VectorXd> X(xs.data(), static_cast<Eigen::Index>(xs.size()));
  const Eigen::Map<const Eigen::VectorXd> Y(phases.data(), static_cast<Eigen::Index>(phases.size()));
  const double mx = X.mean();
  const double my = Y.mean();
  const double sxy = ((X.array() - mx) * (Y.array() - my)).sum();
  const double sxx = (X.array() - mx).square().sum();
  trace.envelope_wavenumber = sxy / sxx;
  return trace;
}

double helix_modulus_spread(const InternalStateTrace& trace, int half_window) {
  std::vector<double> modulus;
  for (std::size_t i = 0; i < trace.positions.size(); ++i) {
    if (trace.valid[i]) modulus.push_back(trace.cosine[i] * trace.cosine[i] + trace.sine[i] * trace.sine[i]);
  }
  const int n = static_cast<int>(modulus.size());
  if (n < 2 * half_window + 1) throw Error(ErrorKind::InsufficientSpan, "too few valid trace samples");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = half_window; i < n - half_window; ++i) {
    double sum = 0.0;
    for (int j = i - half_window; j <= i + half_window; ++j) sum += modulus[j];
    const double avg = sum / (2 * half_window + 1);
    lo = std::min(lo, avg);
    hi = std::max(hi, avg);
  }
  return hi / lo - 1.0;
}

double superposed_envelope(double k_beat, double x) {
  const std::complex<double> plus(std::cos(k_beat * x), std::sin(k_beat * x));
  const std::complex<double> minus(std::cos(k_beat * x), -std::sin(k_beat * x));
  return 0.5 * (plus - minus).imag();
}

std::vector<QuantizationReport> quantize(const BoxConfig& cfg, int n_max) {
  cfg.validate();
  if (n_max < 1) throw Error(ErrorKind::InvalidConfig, "n_max must be >= 1");
  const Units& u = cfg.units;
  const double mass = u.hbar * cfg.omega0 / (u.c * u.c);
  auto beat_wavenumber = [&](double beta) {
    return lorentz_gamma(beta) * beta * cfg.omega0 / u.c;
  };

  if (beat_wavenumber(kMaxBeta) < n_max * kPi / cfg.W) {
    throw Error(ErrorKind::ModeOutOfRange, "no cavity speed below c reaches mode " + std::to_string(n_max));
  }
  std::vector<QuantizationReport> out;
  for (int n = 1; n <= n_max; ++n) {
    const double target = n * kPi / cfg.W;
    double lo = 0.0;
    double hi = kMaxBeta;
    while (hi - lo > kBisectionTol) {
      const double mid = 0.5 * (lo + hi);
      (beat_wavenumber(mid) < target ? lo : hi) = mid;
    }
    QuantizationReport r;
    r.n = n;
    r.beta = 0.5 * (lo + hi);
    r.gamma = lorentz_gamma(r.beta);
    r.k_beat = beat_wavenumber(r.beta);
    r.momentum = u.hbar * r.k_beat;
    r.schrodinger_momentum = n * kPi * u.hbar / cfg.W;
    r.momentum_discrepancy = std::abs(r.momentum - r.schrodinger_momentum) / r.schrodinger_momentum;
    const double gb = r.gamma * r.beta;
    r.kinetic_energy = mass * u.c * u.c * gb * gb / (r.gamma + 1.0);
    r.schrodinger_energy = n * n * kPi * kPi * u.hbar * u.hbar / (2.0 * mass * cfg.W * cfg.W);
    r.energy_discrepancy = std::abs(r.kinetic_energy - r.schrodinger_energy) / r.schrodinger_energy;
    const double x = std::pow(r.momentum / (mass * u.c), 2);
    r.relativistic_bound = x;
    r.leading_correction = 0.25 * x;
    r.wall_left = superposed_envelope(r.k_beat, 0.0);
    r.wall_right = superposed_envelope(r.k_beat, cfg.W);
    out.push_back(r);
  }
  return out;
}

}  // namespace qmlab::boxwell
