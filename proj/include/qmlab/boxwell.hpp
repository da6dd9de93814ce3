#pragma once

// A small cavity moving inside an infinite square well, modelled by two
// opposed bidirectional waves. The field beats between two broad "internal
// states"; tracing them along the cavity path yields a de Broglie helix, and
// requiring the +v and -v helices to cancel at the walls quantizes the speed.

#include <Eigen/Core>

#include <vector>

#include "qmlab/measure.hpp"
#include "qmlab/units.hpp"
#include "qmlab/wave.hpp"

namespace qmlab::boxwell {

struct BoxConfig {
  /// Well width.
  double W{1};
  /// Cavity length; at most W / 10.
  double L{0.1};
  /// Rest-frame photon angular frequency.
  double omega0{100};
  /// Cavity speed as a fraction of c.
  double beta{0.05};
  Units units{};

  /// Smallest omega0 W / c accepted as "carrier resolved inside the well".
  static constexpr double kMinCarrierPhase = 20.0;

  void validate() const;
};

/// Frequencies and wavenumbers shared by every box computation.
struct BoxKinematics {
  double gamma{1};
  double omega_plus{0};
  double omega_minus{0};
  /// (w+ + w-) / 2 = gamma omega0.
  double omega_mean{0};
  /// (w+ - w-) / 2 = gamma omega0 beta.
  double omega_beat{0};
  double k_mean{0};
  double k_beat{0};
};

BoxKinematics box_kinematics(const BoxConfig& cfg);

/// Four plane waves: the +v pair and its mirror image, phased so that
/// F(0, t) = 0 for all t.
Superpositiond build_field(const BoxConfig& cfg);

/// 4 [sin(kx) cos(dk x) cos(wt) cos(dw t) - cos(kx) sin(dk x) sin(wt) sin(dw t)]
double field_closed_form(const BoxConfig& cfg, double x, double t);

struct StateBasis {
  /// sin(k x) cos(dk x): the broad Cosine state.
  double cosine;
  /// cos(k x) sin(dk x): the broad Sine state.
  double sine;
};

StateBasis state_basis(const BoxKinematics& kin, double x);

struct BeatAnalysis {
  double fast{0};
  double slow{0};
  double predicted_fast{0};
  double predicted_slow{0};
  double fast_error{0};
  double slow_error{0};
  /// The two spectral lines the beat is read from.
  std::vector<SpectralPeak> peaks;
};

/// Reads the two spectral lines of F(probe, t) and reports their half sum
/// (fast, gamma omega0) and half difference (slow, gamma omega0 beta).
/// Throws degenerate-probe when the probe sits on a node of either line.
BeatAnalysis analyze_beats(const BoxConfig& cfg, double probe, double duration, double dt);

/// Probe series used by analyze_beats.
void sample_probe(const BoxConfig& cfg, double probe, double duration, double dt,
                  Eigen::VectorXd& times, Eigen::VectorXd& values);

struct InternalStates {
  double cosine{0};
  double sine{0};
  double residual_norm{0};
  double field_norm{0};
};

/// Least-squares projection of the snapshot F(., t) on [0, W] onto the
/// Cosine and Sine state shapes. Throws conditioning when dk W < 0.1.
InternalStates project_internal_states(const BoxConfig& cfg, double t);

struct InternalStateTrace {
  std::vector<double> positions;
  std::vector<double> cosine;
  std::vector<double> sine;
  /// False where a global state weight was too small to normalize by.
  std::vector<bool> valid;
  double envelope_wavenumber{0};
  bool resolution_warning{false};

  std::size_t valid_count() const;
};

/// Cavity centre sweeps [L/2, W - L/2] and sits at x_c when t = x_c / v. The
/// snapshot inside the cavity window is fitted to a local carrier model with a
/// cubic envelope; its carrier amplitudes, normalized by the global state
/// weights at that instant, trace (cos(dk x_c), sin(dk x_c)).
InternalStateTrace trace_states_vs_position(const BoxConfig& cfg, int positions = 2001);

/// Moving average of cosine^2 + sine^2 over `half_window` valid neighbours on
/// each side; returns max / min - 1.
double helix_modulus_spread(const InternalStateTrace& trace, int half_window = 25);

struct QuantizationReport {
  int n{0};
  double beta{0};
  double gamma{1};
  double k_beat{0};
  double momentum{0};
  double schrodinger_momentum{0};
  double momentum_discrepancy{0};
  double kinetic_energy{0};
  double schrodinger_energy{0};
  double energy_discrepancy{0};
  /// (p / mc)^2, the accepted bound on energy_discrepancy.
  double relativistic_bound{0};
  /// Leading-order relative correction (p / mc)^2 / 4.
  double leading_correction{0};
  /// Superposed +v / -v envelope at x = 0 and x = W, per unit helix amplitude.
  double wall_left{0};
  double wall_right{0};
};

/// Root-solves gamma beta omega0 / c = n pi / W by bisection for n = 1..n_max.
/// Only W, omega0 and units of `cfg` are used.
std::vector<QuantizationReport> quantize(const BoxConfig& cfg, int n_max);

/// Superposed +v / -v envelope, (cos + i sin) - (cos - i sin), imaginary part
/// divided by 2.
double superposed_envelope(double k_beat, double x);

}  // namespace qmlab::boxwell
