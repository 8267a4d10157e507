#include "echocon/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace echocon {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

void fft_radix2(std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  if (!is_pow2(n)) throw std::domain_error("fft_radix2: length must be a power of two");

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wstep(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = x[i + k];
        const std::complex<double> t = w * x[i + k + len / 2];
        x[i + k] = u + t;
        x[i + k + len / 2] = u - t;
        w *= wstep;
      }
    }
  }
}

Spectrum magnitude_spectrum(std::span<const double> window, double sample_rate_hz) {
  const std::size_t n = window.size();
  if (!is_pow2(n) || n < 2)
    throw std::domain_error("magnitude_spectrum: window length must be a power of two");
  if (!(sample_rate_hz > 0.0))
    throw std::domain_error("magnitude_spectrum: sample rate must be positive");

  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = {window[i], 0.0};
  fft_radix2(buf);

  Spectrum sp;
  sp.bin_width_hz = sample_rate_hz / static_cast<double>(n);
  sp.magnitudes.resize(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) sp.magnitudes[k] = std::abs(buf[k]);
  return sp;
}

PeakList detect_peaks(const Spectrum& sp, int min_base_width, double rel_threshold) {
  PeakList out;
  const auto& m = sp.magnitudes;
  if (m.size() < 3) return out;

  const double top = *std::max_element(m.begin(), m.end());
  if (top <= 0.0) return out;
  const double floor_mag = rel_threshold * top;

  for (std::size_t i = 1; i + 1 < m.size(); ++i) {
    if (!(m[i] > m[i - 1])) continue;

    // Extend over a flat apex (half-bin-offset lines give two equal bins);
    // the peak is reported at the left edge of the plateau.
    std::size_t apex_end = i;
    while (apex_end + 1 < m.size() && m[apex_end + 1] == m[i]) ++apex_end;
    if (apex_end + 1 >= m.size() || m[apex_end + 1] > m[i]) continue;
    if (m[i] < floor_mag) continue;

    std::size_t left = i;
    while (left > 0 && m[left - 1] < m[left]) --left;
    std::size_t right = apex_end;
    while (right + 1 < m.size() && m[right + 1] < m[right]) ++right;

    const auto width = static_cast<int>(right - left + 1);
    if (width >= min_base_width) {
      Peak pk;
      pk.frequency_hz = static_cast<double>(i) * sp.bin_width_hz;
      pk.normalized = pk.frequency_hz;
      pk.magnitude = m[i];
      out.peaks.push_back(pk);
    }
    i = apex_end;  // skip the rest of the plateau
  }
  return out;
}

PeakList normalize_peaks(PeakList pl, double f0_hz) {
  if (!(f0_hz > 0.0)) throw std::domain_error("normalize_peaks: f0 must be positive");
  for (Peak& pk : pl.peaks) pk.normalized = pk.frequency_hz / f0_hz;
  return pl;
}

std::vector<double> decimate(std::span<const double> x, double fs_in_hz,
                             double fs_out_hz, double cutoff_hz) {
  if (!(fs_in_hz > 0.0 && fs_out_hz > 0.0 && fs_out_hz <= fs_in_hz))
    throw std::domain_error("decimate: bad sample rates");
  const double ratio = fs_in_hz / fs_out_hz;
  const auto factor = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(factor)) > 1e-9)
    throw std::domain_error("decimate: fs_in must be an integer multiple of fs_out");
  if (!(cutoff_hz > 0.0 && cutoff_hz < fs_out_hz / 2.0))
    throw std::domain_error("decimate: cutoff must lie below the output Nyquist");

  if (factor == 1) return {x.begin(), x.end()};

  // Symmetric windowed-sinc guard filter (4-term Blackman-Harris), applied
  // centered so the decimated stream is zero-phase. Samples outside the
  // input are taken as zero.
  constexpr std::size_t kTaps = 1025;  // odd
  constexpr std::size_t kHalf = kTaps / 2;
  static_assert(kTaps % 2 == 1);

  std::vector<double> h(kTaps);
  const double fc = cutoff_hz / fs_in_hz;  // cycles per input sample
  double sum = 0.0;
  for (std::size_t k = 0; k < kTaps; ++k) {
    const double t = static_cast<double>(k) - static_cast<double>(kHalf);
    const double sinc = t == 0.0 ? 2.0 * fc
                                 : std::sin(2.0 * std::numbers::pi * fc * t) /
                                       (std::numbers::pi * t);
    const double u = static_cast<double>(k) / static_cast<double>(kTaps - 1);
    const double w = 0.35875 - 0.48829 * std::cos(2.0 * std::numbers::pi * u) +
                     0.14128 * std::cos(4.0 * std::numbers::pi * u) -
                     0.01168 * std::cos(6.0 * std::numbers::pi * u);
    h[k] = sinc * w;
    sum += h[k];
  }
  for (double& v : h) v /= sum;  // exact unit DC gain

  const std::size_t n_out = x.size() / factor;
  std::vector<double> y(n_out);
  const auto n_in = static_cast<long long>(x.size());
  for (std::size_t j = 0; j < n_out; ++j) {
    const long long center = static_cast<long long>(j * factor);
    double acc = 0.0;
    for (std::size_t k = 0; k < kTaps; ++k) {
      const long long idx = center + static_cast<long long>(kHalf) - static_cast<long long>(k);
      if (idx >= 0 && idx < n_in) acc += h[k] * x[static_cast<std::size_t>(idx)];
    }
    y[j] = acc;
  }
  return y;
}

}  // namespace echocon
