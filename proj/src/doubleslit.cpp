#include "qmlab/doubleslit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qmlab/error.hpp"

namespace qmlab::doubleslit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStagnationSpeed = 1e-6;

double cross(const Vector& a, const Vector& b) { return a.x() * b.y() - a.y() * b.x(); }

double angle_between(const Vector& u1, const Vector& u2) {
  return std::atan2(std::abs(cross(u1, u2)), u1.dot(u2));
}

struct SlitGeometry {
  Vector u1;
  Vector u2;
  double r1;
  double r2;
};

SlitGeometry geometry(const Vector& p, const SlitConfig& cfg) {
  const Vector d1 = p - cfg.slit1();
  const Vector d2 = p - cfg.slit2();
  const double r1 = d1.norm();
  const double r2 = d2.norm();
  const double singular = 1e-12 * cfg.d;
  if (r1 <= singular || r2 <= singular) {
    throw Error(ErrorKind::SingularPoint, "point coincides with a slit");
  }
  return {d1 / r1, d2 / r2, r1, r2};
}

Region region_from_distances(double r1, double r2, const RegionThresholds& th) {
  // a_i = 1 / r_i, so min(a)/max(a) = min(r)/max(r)
  const double ratio = std::min(r1, r2) / std::max(r1, r2);
  if (ratio >= th.balanced) return Region::Balanced;
  if (ratio <= th.near_slit) return r1 < r2 ? Region::NearSlit1 : Region::NearSlit2;
  return Region::Transition;
}

bool inside_exclusion(const Vector& p, const SlitConfig& cfg) {
  const double rex = cfg.exclusion();
  return (p - cfg.slit1()).norm() < rex || (p - cfg.slit2()).norm() < rex;
}

}  // namespace

double SlitConfig::wavelength() const { return 2.0 * kPi * units.c / omega; }

Bounds SlitConfig::domain() const {
  if (bounds) return *bounds;
  return {d / 1000.0, 200.0 * d, -200.0 * d, 200.0 * d};
}

double SlitConfig::exclusion() const { return exclusion_radius ? *exclusion_radius : 0.5 * wavelength(); }

void SlitConfig::validate() const {
  units.validate();
  if (!(d > 0) || !std::isfinite(d)) throw Error(ErrorKind::InvalidConfig, "slit separation d must be positive");
  if (!(omega > 0) || !std::isfinite(omega)) throw Error(ErrorKind::InvalidConfig, "omega must be positive");
  const Bounds b = domain();
  if (!(b.x_min > 0)) throw Error(ErrorKind::InvalidConfig, "domain x_min must be > 0");
  if (!(b.x_max > b.x_min) || !(b.y_max > b.y_min)) {
    throw Error(ErrorKind::InvalidConfig, "domain bounds are empty");
  }
  const double extent = std::min(b.x_max - b.x_min, b.y_max - b.y_min);
  if (!(wavelength() < 0.1 * extent)) {
    throw Error(ErrorKind::InvalidConfig, "wavelength must be small against the domain extent");
  }
  if (!(exclusion() > 0)) throw Error(ErrorKind::InvalidConfig, "exclusion radius must be positive");
  if (!(thresholds.near_slit > 0) || !(thresholds.near_slit < thresholds.balanced) ||
      !(thresholds.balanced <= 1)) {
    throw Error(ErrorKind::InvalidConfig, "region thresholds need 0 < near_slit < balanced <= 1");
  }
}

SlitConfig SlitConfig::from_wavelength(double d, double wavelength, Units units) {
  if (!(wavelength > 0) || !std::isfinite(wavelength)) {
    throw Error(ErrorKind::InvalidConfig, "wavelength must be positive");
  }
  SlitConfig cfg;
  cfg.d = d;
  cfg.units = units;
  cfg.omega = 2.0 * kPi * units.c / wavelength;
  cfg.validate();
  return cfg;
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::NearSlit1: return "NEAR_SLIT_1";
    case Region::NearSlit2: return "NEAR_SLIT_2";
    case Region::Balanced: return "BALANCED";
    case Region::Transition: return "TRANSITION";
  }
  return "TRANSITION";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Boundary: return "boundary";
    case Termination::MaxSteps: return "max-steps";
    case Termination::Stagnation: return "stagnation";
  }
  return "max-steps";
}

double intersection_angle(const Vector& p, const SlitConfig& cfg) {
  const auto g = geometry(p, cfg);
  return angle_between(g.u1, g.u2);
}

double local_mass(double theta, double omega, const Units& units) {
  return units.hbar * omega / (units.c * units.c) * std::sin(0.5 * theta);
}

double local_speed(double theta, const Units& units) {
  if (theta >= kPi) return 0.0;
  return units.c * std::cos(0.5 * theta);
}

LocalVelocity local_velocity(const Vector& u1, const Vector& u2, const Units& units) {
  const double theta = angle_between(u1, u2);
  LocalVelocity v;
  v.speed = local_speed(theta, units);
  const Vector sum = u1 + u2;
  if (theta < kPi && sum.norm() > 0) v.direction = sum.normalized();
  return v;
}

double local_wavelength(double theta, double omega, const Units& units) {
  const double s = std::sin(theta);
  if (theta <= 0 || theta >= kPi || s <= 0) return kInf;
  return 4.0 * kPi * units.c / (omega * s);
}

Region classify_region(const Vector& p, const SlitConfig& cfg) {
  const auto g = geometry(p, cfg);
  return region_from_distances(g.r1, g.r2, cfg.thresholds);
}

LocalInterferenceState weighted_local_state(const Vector& p, const SlitConfig& cfg) {
  const auto g = geometry(p, cfg);
  const Units& u = cfg.units;
  LocalInterferenceState s;
  s.a1 = 1.0 / g.r1;
  s.a2 = 1.0 / g.r2;
  s.theta = angle_between(g.u1, g.u2);
  s.region = region_from_distances(g.r1, g.r2, cfg.thresholds);

  const double w1 = s.a1 * s.a1;
  const double w2 = s.a2 * s.a2;
  const double total = w1 + w2;
  // 1 - |w1 u1 + w2 u2|^2 / (w1 + w2)^2 = 4 w1 w2 sin^2(theta/2) / (w1 + w2)^2
  s.mass = u.hbar * cfg.omega / (u.c * u.c) * (2.0 * s.a1 * s.a2 / total) * std::sin(0.5 * s.theta);
  s.velocity = (w1 * g.u1 + w2 * g.u2) * (u.c / total);
  s.speed = s.velocity.norm();
  if (s.speed > 0) {
    const Vector dir = s.velocity / s.speed;
    s.wave_direction = Vector(-dir.y(), dir.x());
  }
  s.lambda_sub = (s.mass > 0 && s.speed > 0) ? u.h() / (s.mass * s.speed) : kInf;
  return s;
}

Trajectory integrate_trajectory(const Vector& start, const SlitConfig& cfg, double step, int max_steps) {
  cfg.validate();
  const Bounds domain = cfg.domain();
  if (!(step > 0) || step > cfg.d / 100.0 * (1.0 + 1e-12)) {
    throw Error(ErrorKind::InvalidConfig, "trajectory step must be in (0, d/100]");
  }
  if (max_steps < 1) throw Error(ErrorKind::InvalidConfig, "max_steps must be >= 1");
  geometry(start, cfg);
  if (inside_exclusion(start, cfg)) {
    throw Error(ErrorKind::SingularPoint, "trajectory start lies inside a slit exclusion radius");
  }
  if (!domain.contains(start)) throw Error(ErrorKind::InvalidConfig, "trajectory start lies outside the domain");

  const double stagnation = kStagnationSpeed * cfg.units.c;
  struct Sample {
    Vector dir;
    double speed;
    bool ok;
  };
  auto sample = [&](const Vector& r) -> Sample {
    if (inside_exclusion(r, cfg)) return {Vector::Zero(), 0.0, false};
    const auto s = weighted_local_state(r, cfg);
    if (s.speed < stagnation) return {Vector::Zero(), s.speed, false};
    return {s.velocity / s.speed, s.speed, true};
  };

  Trajectory traj;
  traj.points.push_back(start);
  traj.times.push_back(0.0);
  Vector r = start;
  Sample here = sample(r);
  if (!here.ok) {
    traj.reason = Termination::Stagnation;
    return traj;
  }
  for (int n = 0; n < max_steps; ++n) {
    const Sample k2 = sample(r + 0.5 * step * here.dir);
    const Sample k3 = k2.ok ? sample(r + 0.5 * step * k2.dir) : k2;
    const Sample k4 = k3.ok ? sample(r + step * k3.dir) : k3;
    if (!k2.ok || !k3.ok || !k4.ok) {
      const bool excluded = inside_exclusion(r + step * here.dir, cfg);
      traj.reason = excluded ? Termination::Boundary : Termination::Stagnation;
      return traj;
    }
    const Vector next = r + (step / 6.0) * (here.dir + 2.0 * k2.dir + 2.0 * k3.dir + k4.dir);
    if (!domain.contains(next) || inside_exclusion(next, cfg)) {
      traj.reason = Termination::Boundary;
      return traj;
    }
    const Sample there = sample(next);
    if (!there.ok) {
      traj.reason = Termination::Stagnation;
      return traj;
    }
    const double length = (next - r).norm();
    traj.times.push_back(traj.times.back() + 0.5 * length * (1.0 / here.speed + 1.0 / there.speed));
    traj.points.push_back(next);
    r = next;
    here = there;
  }
  traj.reason = Termination::MaxSteps;
  return traj;
}

Trajectory integrate_trajectory(const Vector& start, const SlitConfig& cfg, int max_steps) {
  return integrate_trajectory(start, cfg, cfg.d / 100.0, max_steps);
}

std::vector<double> radial_deviation(const Trajectory& trajectory, const Vector& centre) {
  std::vector<double> out;
  const auto& pts = trajectory.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vector chord = pts[i + 1] - pts[i];
    const Vector ray = 0.5 * (pts[i] + pts[i + 1]) - centre;
    const double cross = chord.x() * ray.y() - chord.y() * ray.x();
    out.push_back(std::atan2(std::abs(cross), chord.dot(ray)));
  }
  return out;
}

double fringe_spacing_predicted(const SlitConfig& cfg, double distance) {
  if (!(distance > 0)) throw Error(ErrorKind::InvalidConfig, "screen distance must be positive");
  const Units& u = cfg.units;
  const double half_angle_sin = cfg.d / (2.0 * distance);
  const double mass = u.hbar * cfg.omega / (u.c * u.c) * half_angle_sin;
  const double speed = u.c;
  const double lambda_sub = u.h() / (mass * speed);
  return 0.5 * lambda_sub;
}

double intensity(const Vector& p, const SlitConfig& cfg) {
  const auto g = geometry(p, cfg);
  const double a1 = 1.0 / g.r1;
  const double a2 = 1.0 / g.r2;
  // r1^2 - r2^2 = -2 y d, so the path difference avoids cancellation
  const double path = -2.0 * p.y() * cfg.d / (g.r1 + g.r2);
  const double k = cfg.omega / cfg.units.c;
  return a1 * a1 + a2 * a2 + 2.0 * a1 * a2 * std::cos(k * path);
}

FringeReport fringe_spacing_measured(const SlitConfig& cfg, const Screen& screen, int samples_per_fringe) {
  cfg.validate();
  if (samples_per_fringe < 16) {
    throw Error(ErrorKind::InvalidConfig, "fringe sampling needs >= 16 points per fringe");
  }
  FringeReport report;
  report.screen = screen;
  report.predicted = fringe_spacing_predicted(cfg, screen.distance);
  const double half_width = screen.half_width ? *screen.half_width : 3.5 * report.predicted;
  if (!(half_width > 0)) throw Error(ErrorKind::InvalidConfig, "screen half width must be positive");
  if (screen.shape == ScreenShape::Arc && half_width >= 0.5 * kPi * screen.distance) {
    throw Error(ErrorKind::InvalidConfig, "arc screen must stay within the x > 0 half plane");
  }

  const double h = report.predicted / samples_per_fringe;
  const int half = static_cast<int>(std::ceil(half_width / h));
  const int n = 2 * half + 1;
  auto& prof = report.profile;
  prof.coordinate.resize(n);
  prof.intensity.resize(n);
  for (int i = 0; i < n; ++i) {
    const double s = (i - half) * h;
    const Vector p = screen.shape == ScreenShape::Arc
                         ? Vector(screen.distance * std::cos(s / screen.distance),
                                  screen.distance * std::sin(s / screen.distance))
                         : Vector(screen.distance, s);
    prof.coordinate[i] = s;
    prof.intensity[i] = intensity(p, cfg);
  }

  for (int i = 1; i + 1 < n; ++i) {
    const double a = prof.intensity[i - 1];
    const double b = prof.intensity[i];
    const double c = prof.intensity[i + 1];
    if (!(b > a && b >= c)) continue;
    const double denom = a - 2.0 * b + c;
    const double shift = denom == 0 ? 0.0 : 0.5 * (a - c) / denom;
    report.maxima.push_back(prof.coordinate[i] + shift * h);
  }
  if (report.maxima.size() < 3) {
    throw Error(ErrorKind::InsufficientSpan,
                "found " + std::to_string(report.maxima.size()) + " intensity maxima, need 3");
  }
  std::vector<double> central = report.maxima;
  std::sort(central.begin(), central.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  central.resize(std::min<std::size_t>(central.size(), 5));
  std::sort(central.begin(), central.end());
  report.measured = (central.back() - central.front()) / static_cast<double>(central.size() - 1);
  report.relative_error = std::abs(report.measured - report.predicted) / report.predicted;
  return report;
}

Field2 mass_map(const SlitConfig& cfg, const Grid2& grid) {
  if (grid.nx < 1 || grid.ny < 1) throw Error(ErrorKind::InvalidConfig, "mass map grid is empty");
  Field2 field{grid, Eigen::MatrixXd(grid.ny, grid.nx)};
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Vector p(grid.x(i), grid.y(j));
      field.values(j, i) = inside_exclusion(p, cfg) ? std::numeric_limits<double>::quiet_NaN()
                                                    : weighted_local_state(p, cfg).mass;
    }
  }
  return field;
}

}  // namespace qmlab::doubleslit
