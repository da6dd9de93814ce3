#include "qmlab/measure.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "qmlab/error.hpp"

namespace qmlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinSamples = 32;
constexpr double kMinCycles = 8.0;

void require_same_size(const Eigen::Ref<const Eigen::VectorXd>& a,
                       const Eigen::Ref<const Eigen::VectorXd>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidConfig, "positions and values differ in length");
  }
}

// 4-term Blackman-Harris; sidelobes sit below -92 dB so weak tones are not
// masked by leakage from strong ones.
double blackman_harris(std::size_t i, std::size_t n) {
  const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1);
  return 0.35875 - 0.48829 * std::cos(x) + 0.14128 * std::cos(2 * x) - 0.01168 * std::cos(3 * x);
}

std::size_t padded_length(std::size_t n) {
  std::size_t m = 1;
  while (m < 8 * n) m <<= 1;
  return m;
}

}  // namespace

std::vector<double> zero_crossings(const Eigen::Ref<const Eigen::VectorXd>& positions,
                                   const Eigen::Ref<const Eigen::VectorXd>& values) {
  require_same_size(positions, values);
  std::vector<double> out;
  Eigen::Index prev = -1;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v == 0.0 || !std::isfinite(v)) continue;
    if (prev >= 0 && std::signbit(v) != std::signbit(values[prev])) {
      const double x0 = positions[prev];
      const double x1 = positions[i];
      const double v0 = values[prev];
      out.push_back(x0 + (x1 - x0) * v0 / (v0 - v));
    }
    prev = i;
  }
  return out;
}

bool uniformly_spaced(const Eigen::Ref<const Eigen::VectorXd>& positions) {
  if (positions.size() < 2) return false;
  const double step = (positions[positions.size() - 1] - positions[0]) /
                      static_cast<double>(positions.size() - 1);
  if (!(std::abs(step) > 0)) return false;
  for (Eigen::Index i = 1; i < positions.size(); ++i) {
    if (std::abs((positions[i] - positions[i - 1]) - step) > 1e-9 * std::abs(step)) return false;
  }
  return true;
}

WavelengthEstimate measure_spatial_wavelength(const Eigen::Ref<const Eigen::VectorXd>& positions,
                                              const Eigen::Ref<const Eigen::VectorXd>& values) {
  const auto crossings = zero_crossings(positions, values);
  if (crossings.size() < 3) {
    throw Error(ErrorKind::InsufficientSpan,
                "need at least 3 zero crossings, found " + std::to_string(crossings.size()));
  }
  WavelengthEstimate est;
  est.crossings = crossings.size();
  const double mean_gap =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  est.wavelength = 2.0 * std::abs(mean_gap);
  est.spectral_wavelength = std::numeric_limits<double>::quiet_NaN();
  if (uniformly_spaced(positions) && positions.size() >= static_cast<Eigen::Index>(kMinSamples)) {
    const double step = std::abs(positions[1] - positions[0]);
    const auto peaks = spectral_peaks(values, step, 1);
    if (!peaks.empty() && peaks.front().omega > 0) est.spectral_wavelength = kTwoPi / peaks.front().omega;
  }
  return est;
}

std::vector<SpectralPeak> spectral_peaks(const Eigen::Ref<const Eigen::VectorXd>& values,
                                         double step, std::size_t count) {
  const auto n = static_cast<std::size_t>(values.size());
  if (n < kMinSamples) {
    throw Error(ErrorKind::InsufficientSpan, "series too short for spectral analysis");
  }
  if (!(step > 0)) {
    throw Error(ErrorKind::InvalidConfig, "sample step must be positive");
  }
  const double mean = values.mean();
  const std::size_t m = padded_length(n);
  std::vector<double> buffer(m, 0.0);
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = blackman_harris(i, n);
    buffer[i] = (values[static_cast<Eigen::Index>(i)] - mean) * w;
    scale += w;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, buffer);

  const std::size_t half = m / 2;
  std::vector<double> mag(half + 1);
  for (std::size_t i = 0; i <= half; ++i) mag[i] = 2.0 * std::abs(spectrum[i]) / scale;
  const double strongest = *std::max_element(mag.begin(), mag.end());
  const double signal_scale = values.cwiseAbs().maxCoeff();
  if (!(strongest > 1e-12 * signal_scale) || !(strongest > 0)) {
    throw Error(ErrorKind::InsufficientSpan, "series has no oscillatory content");
  }

  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i < half; ++i) {
    if (mag[i] > mag[i - 1] && mag[i] >= mag[i + 1] && mag[i] > 1e-12 * strongest) maxima.push_back(i);
  }
  std::sort(maxima.begin(), maxima.end(),
            [&mag](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  if (maxima.size() < count) {
    throw Error(ErrorKind::InsufficientSpan, "fewer spectral peaks than requested");
  }
  maxima.resize(count);

  const double bin = kTwoPi / (static_cast<double>(m) * step);
  std::vector<SpectralPeak> peaks;
  peaks.reserve(count);
  for (std::size_t i : maxima) {
    const double a = std::log(mag[i - 1]);
    const double b = std::log(mag[i]);
    const double c = std::log(mag[i + 1]);
    const double denom = a - 2 * b + c;
    const double shift = denom == 0 ? 0.0 : 0.5 * (a - c) / denom;
    peaks.push_back({(static_cast<double>(i) + shift) * bin, std::exp(b - 0.25 * (a - c) * shift)});
  }
  return peaks;
}

std::vector<SpectralPeak> measure_temporal_frequencies(
    const Eigen::Ref<const Eigen::VectorXd>& times, const Eigen::Ref<const Eigen::VectorXd>& values,
    std::size_t count) {
  require_same_size(times, values);
  if (times.size() < static_cast<Eigen::Index>(kMinSamples) || !uniformly_spaced(times)) {
    throw Error(ErrorKind::InsufficientSpan, "need at least 32 uniformly spaced samples");
  }
  const double step = (times[times.size() - 1] - times[0]) / static_cast<double>(times.size() - 1);
  auto peaks = spectral_peaks(values, step, count);
  const double span = step * static_cast<double>(times.size());
  for (const auto& p : peaks) {
    if (p.omega * span / kTwoPi < kMinCycles) {
      throw Error(ErrorKind::InsufficientSpan, "series too short to resolve the slowest tone");
    }
  }
  return peaks;
}

}  // namespace qmlab
