#pragma once

// Numerical measurement of wavelengths and frequencies from sampled signals.
// These are the oracles used to check closed-form predictions, so they only
// ever see sample values.

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace qmlab {

struct WavelengthEstimate {
  /// 2 x mean gap between successive zero crossings.
  double wavelength{0};
  /// Spectral-peak cross-check; NaN when the samples are not uniformly spaced.
  double spectral_wavelength{0};
  std::size_t crossings{0};
};

struct SpectralPeak {
  double omega{0};
  double magnitude{0};
};

/// Positions of the sign changes of `values`, located by linear interpolation.
std::vector<double> zero_crossings(const Eigen::Ref<const Eigen::VectorXd>& positions,
                                   const Eigen::Ref<const Eigen::VectorXd>& values);

/// Throws insufficient-span when fewer than 3 zero crossings are present.
WavelengthEstimate measure_spatial_wavelength(const Eigen::Ref<const Eigen::VectorXd>& positions,
                                              const Eigen::Ref<const Eigen::VectorXd>& values);

/// Strongest `count` peaks of the magnitude spectrum of a uniformly sampled
/// series, refined by quadratic interpolation of the log magnitude and sorted
/// by descending magnitude. Angular frequencies are in rad per unit of `step`.
std::vector<SpectralPeak> spectral_peaks(const Eigen::Ref<const Eigen::VectorXd>& values,
                                         double step, std::size_t count);

/// spectral_peaks on a (time, value) series. Every reported tone must complete
/// at least 8 cycles within the series, otherwise insufficient-span.
std::vector<SpectralPeak> measure_temporal_frequencies(
    const Eigen::Ref<const Eigen::VectorXd>& times, const Eigen::Ref<const Eigen::VectorXd>& values,
    std::size_t count);

/// True when the sample positions are equally spaced to 1e-9 relative.
bool uniformly_spaced(const Eigen::Ref<const Eigen::VectorXd>& positions);

}  // namespace qmlab
