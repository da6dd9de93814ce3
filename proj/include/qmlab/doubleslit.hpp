#pragma once

// Two-slit interference in the plane: local quantum-mass kinematics, region
// classification, photon trajectories and fringe spacing.
//
// Slit 1 sits at (0, +d/2), slit 2 at (0, -d/2). Each slit contributes a
// cylindrical wave of amplitude 1/r.

#include <Eigen/Core>

#include <optional>
#include <string_view>
#include <vector>

#include "qmlab/units.hpp"
#include "qmlab/wave.hpp"

namespace qmlab::doubleslit {

using Vector = Vec2<double>;

struct Bounds {
  double x_min{0};
  double x_max{0};
  double y_min{0};
  double y_max{0};

  bool contains(const Vector& p) const {
    return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
  }
};

struct RegionThresholds {
  /// min(a1, a2) / max(a1, a2) at or above this is BALANCED.
  double balanced{0.9};
  /// ... at or below this is NEAR_SLIT of the stronger slit.
  double near_slit{0.1};
};

struct SlitConfig {
  double d{1};
  double omega{1};
  Units units{};
  /// Trajectory domain; defaults to [d/1000, 200 d] x [-200 d, 200 d].
  std::optional<Bounds> bounds;
  /// Radius around each slit treated as singular; defaults to lambda / 2.
  std::optional<double> exclusion_radius;
  RegionThresholds thresholds{};

  double wavelength() const;
  Vector slit1() const { return {0.0, 0.5 * d}; }
  Vector slit2() const { return {0.0, -0.5 * d}; }
  Bounds domain() const;
  double exclusion() const;

  /// Throws invalid-config on any violated invariant.
  void validate() const;

  /// Validated config with omega = 2 pi c / wavelength.
  static SlitConfig from_wavelength(double d, double wavelength, Units units = {});
};

enum class Region { NearSlit1, NearSlit2, Balanced, Transition };

std::string_view to_string(Region r);

struct LocalInterferenceState {
  double theta{0};
  double mass{0};
  Vector velocity{Vector::Zero()};
  double speed{0};
  /// Direction of the local wavevector (perpendicular to the velocity).
  std::optional<Vector> wave_direction;
  double lambda_sub{0};
  Region region{Region::Transition};
  double a1{0};
  double a2{0};
};

/// Angle in [0, pi] between the unit vectors from each slit to p.
double intersection_angle(const Vector& p, const SlitConfig& cfg);

/// m = (hbar omega / c^2) sin(theta / 2).
double local_mass(double theta, double omega, const Units& units = {});

struct LocalVelocity {
  double speed{0};
  /// Bisector of u1 and u2; absent when they are anti-parallel.
  std::optional<Vector> direction;
};

/// |v| = c cos(theta / 2) along normalize(u1 + u2).
LocalVelocity local_velocity(const Vector& u1, const Vector& u2, const Units& units = {});
double local_speed(double theta, const Units& units = {});

/// lambda_sub = h / (m v) = 4 pi c / (omega sin theta); +infinity at 0 and pi.
double local_wavelength(double theta, double omega, const Units& units = {});

Region classify_region(const Vector& p, const SlitConfig& cfg);

/// Amplitude-weighted four-momentum construction with w_i = 1 / r_i^2. Reduces
/// to the equal-amplitude formulas when r1 = r2 and to a free wave from the
/// dominant slit when the other weight vanishes.
LocalInterferenceState weighted_local_state(const Vector& p, const SlitConfig& cfg);

enum class Termination { Boundary, MaxSteps, Stagnation };

std::string_view to_string(Termination t);

struct Trajectory {
  std::vector<Vector> points;
  std::vector<double> times;
  Termination reason{Termination::MaxSteps};
};

/// Fixed-step RK4 integration of dr/ds = v(r) / |v(r)| (arc length s).
/// Elapsed time uses the trapezoid rule on 1 / |v|.
Trajectory integrate_trajectory(const Vector& start, const SlitConfig& cfg, double step,
                                int max_steps);

/// Default step d / 100.
Trajectory integrate_trajectory(const Vector& start, const SlitConfig& cfg, int max_steps);

/// Angle between each chord points[i] -> points[i+1] and the ray from
/// `centre` through the chord midpoint.
std::vector<double> radial_deviation(const Trajectory& trajectory, const Vector& centre);

/// Half the local wavelength at (D, 0) with sin(theta/2) = d / (2D) and
/// cos(theta/2) = 1, which is D lambda / d.
double fringe_spacing_predicted(const SlitConfig& cfg, double distance);

/// Below this D / d the far-field spacing formula should be treated with care.
constexpr double kFarFieldRatio = 20.0;

enum class ScreenShape { Arc, Line };

struct Screen {
  ScreenShape shape{ScreenShape::Arc};
  double distance{0};
  /// Half extent of the sampled screen coordinate; defaults to 3.5 predicted
  /// fringe spacings.
  std::optional<double> half_width;
};

struct ScreenProfile {
  /// Arc length from the axis (arc screen) or y (line screen).
  std::vector<double> coordinate;
  std::vector<double> intensity;
};

struct FringeReport {
  double predicted{0};
  double measured{0};
  double relative_error{0};
  Screen screen{};
  std::vector<double> maxima;
  ScreenProfile profile;
};

/// Time-averaged intensity a1^2 + a2^2 + 2 a1 a2 cos(k (r1 - r2)).
double intensity(const Vector& p, const SlitConfig& cfg);

/// Direct intensity oracle: locates maxima on the screen by quadratic
/// interpolation and returns the mean gap of the central five.
FringeReport fringe_spacing_measured(const SlitConfig& cfg, const Screen& screen,
                                     int samples_per_fringe = 64);

struct Grid2 {
  double x0{0};
  double x1{0};
  int nx{0};
  double y0{0};
  double y1{0};
  int ny{0};

  double x(int i) const { return nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1); }
  double y(int j) const { return ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1); }
};

/// Scalar field on a Grid2; values(j, i) holds the point (x(i), y(j)).
struct Field2 {
  Grid2 grid;
  Eigen::MatrixXd values;
};

/// weighted_local_state mass on every grid point; NaN inside the exclusion
/// radius of either slit.
Field2 mass_map(const SlitConfig& cfg, const Grid2& grid);

}  // namespace qmlab::doubleslit
