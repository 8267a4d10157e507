#pragma once

#include <complex>
#include <span>
#include <vector>

namespace echocon {

/// One-sided magnitude spectrum, bins 0..N/2, unnormalized DFT convention
/// (an on-bin unit sine has magnitude N/2).
struct Spectrum {
  double bin_width_hz = 0.0;
  std::vector<double> magnitudes;
};

struct Peak {
  double frequency_hz = 0.0;
  double normalized = 0.0;  // frequency / F0 of the interval's lower tone
  double magnitude = 0.0;
};

struct PeakList {
  int generation = 0;
  std::vector<Peak> peaks;  // strictly increasing frequencies
};

/// In-place iterative radix-2 FFT. Length must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& x);

/// Rectangle-window magnitude spectrum of a real window. The window length
/// must be a power of two (16384 at the defaults: 2 s at 8192 Hz).
Spectrum magnitude_spectrum(std::span<const double> window,
                            double sample_rate_hz = 8192.0);

/// Local maxima whose rise-fall support spans at least min_base_width bins
/// and whose magnitude reaches rel_threshold of the spectrum maximum.
PeakList detect_peaks(const Spectrum& sp, int min_base_width = 4,
                      double rel_threshold = 1.0e-3);

/// Sets normalized = frequency / f0 on every peak. f0 must be positive.
PeakList normalize_peaks(PeakList pl, double f0_hz);

/// Zero-phase FIR low-pass (windowed sinc, cutoff_hz) followed by integer
/// decimation. fs_in must be an integer multiple of fs_out.
std::vector<double> decimate(std::span<const double> x, double fs_in_hz,
                             double fs_out_hz, double cutoff_hz = 3000.0);

}  // namespace echocon
