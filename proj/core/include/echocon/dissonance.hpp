#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace echocon {

/// Plomp-Levelt/Sethares roughness model constants. The exponent rates are
/// stored positive; the model evaluates c1*exp(-b1*s*df) + c2*exp(-b2*s*df).
struct DissonanceParams {
  double b1 = 3.51;
  double b2 = 5.75;
  double c1 = 5.00;
  double c2 = -5.00;
  double s1 = 0.0207;   // 1/Hz
  double s2 = 18.96;    // Hz
  double x_star = 0.24; // critical-band position of maximal roughness

  void validate() const;  // throws std::domain_error on bad values
};

struct Partial {
  double frequency_hz = 0.0;
  double loudness = 0.0;
};

/// Sine components of a complex tone, sorted by ascending frequency.
struct PartialSet {
  std::vector<Partial> partials;
};

struct AmplitudeLaw {
  enum class Kind { uniform, geometric };
  Kind kind = Kind::uniform;
  double rho = 1.0;  // geometric decay per harmonic index

  static AmplitudeLaw uniform() { return {}; }
  static AmplitudeLaw geometric(double rho) { return {Kind::geometric, rho}; }
};

/// First n_partials harmonics k*f_base with amplitudes from the law.
PartialSet harmonic_tone(double f_base_hz, int n_partials, AmplitudeLaw law);

/// Roughness of two sines. Symmetric in argument order, zero at df = 0,
/// decays to zero for large df.
double pair_dissonance(double f1_hz, double f2_hz, double l1, double l2,
                       const DissonanceParams& p = {});

/// Sum of pair_dissonance over all unordered pairs.
double total_dissonance(const PartialSet& tones, const DissonanceParams& p = {});

struct CurvePoint {
  double ratio = 0.0;
  double dissonance = 0.0;
};

/// Total dissonance of two harmonic tones (f_base and ratio*f_base) for each
/// ratio in the grid. Grid must be strictly increasing and cover [1, 2].
std::vector<CurvePoint> dissonance_curve(double f_base_hz, int n_partials,
                                         AmplitudeLaw law,
                                         std::span<const double> ratios,
                                         const DissonanceParams& p = {});

std::vector<double> ratio_grid(double lo, double hi, double step);

/// Indices of strict interior local minima of the curve.
std::vector<std::size_t> local_minima(std::span<const CurvePoint> curve);

}  // namespace echocon
