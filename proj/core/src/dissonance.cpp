#include "echocon/dissonance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace echocon {

void DissonanceParams::validate() const {
  if (!(b1 > 0.0 && b2 > b1)) throw std::domain_error("dissonance params require 0 < b1 < b2");
  if (!(s1 > 0.0)) throw std::domain_error("dissonance params require s1 > 0");
  if (!(s2 > 0.0)) throw std::domain_error("dissonance params require s2 > 0");
  if (!(x_star > 0.0)) throw std::domain_error("dissonance params require x_star > 0");
}

PartialSet harmonic_tone(double f_base_hz, int n_partials, AmplitudeLaw law) {
  if (f_base_hz <= 0.0) throw std::domain_error("harmonic_tone: base frequency must be positive");
  if (n_partials < 1) throw std::domain_error("harmonic_tone: need at least one partial");
  PartialSet set;
  set.partials.reserve(static_cast<std::size_t>(n_partials));
  double amp = 1.0;
  for (int k = 1; k <= n_partials; ++k) {
    set.partials.push_back({f_base_hz * k, amp});
    if (law.kind == AmplitudeLaw::Kind::geometric) amp *= law.rho;
  }
  return set;
}

double pair_dissonance(double f1_hz, double f2_hz, double l1, double l2,
                       const DissonanceParams& p) {
  if (f1_hz <= 0.0 || f2_hz <= 0.0)
    throw std::domain_error("pair_dissonance: frequencies must be positive");
  if (l1 < 0.0 || l2 < 0.0)
    throw std::domain_error("pair_dissonance: loudness must be non-negative");

  const double l12 = std::min(l1, l2);
  if (l12 == 0.0) return 0.0;
  const double df = std::abs(f2_hz - f1_hz);
  const double fmin = std::min(f1_hz, f2_hz);
  const double s = p.x_star / (p.s1 * fmin + p.s2);
  return l12 * (p.c1 * std::exp(-p.b1 * s * df) + p.c2 * std::exp(-p.b2 * s * df));
}

double total_dissonance(const PartialSet& tones, const DissonanceParams& p) {
  if (tones.partials.empty()) throw std::domain_error("total_dissonance: empty partial set");
  double sum = 0.0;
  const auto& ps = tones.partials;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      sum += pair_dissonance(ps[i].frequency_hz, ps[j].frequency_hz,
                             ps[i].loudness, ps[j].loudness, p);
    }
  }
  return sum;
}

std::vector<CurvePoint> dissonance_curve(double f_base_hz, int n_partials,
                                         AmplitudeLaw law,
                                         std::span<const double> ratios,
                                         const DissonanceParams& p) {
  if (n_partials < 1) throw std::domain_error("dissonance_curve: n_partials must be >= 1");
  if (f_base_hz <= 0.0) throw std::domain_error("dissonance_curve: base frequency must be positive");
  if (ratios.size() < 2) throw std::domain_error("dissonance_curve: grid too small");
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (!(ratios[i] > ratios[i - 1]))
      throw std::domain_error("dissonance_curve: grid must be strictly increasing");
  }
  if (!(ratios.front() <= 1.0 && ratios.back() >= 2.0))
    throw std::domain_error("dissonance_curve: grid must cover [1, 2]");

  const PartialSet lower = harmonic_tone(f_base_hz, n_partials, law);

  std::vector<CurvePoint> curve;
  curve.reserve(ratios.size());
  for (double ratio : ratios) {
    PartialSet both = lower;
    const PartialSet upper = harmonic_tone(ratio * f_base_hz, n_partials, law);
    both.partials.insert(both.partials.end(), upper.partials.begin(), upper.partials.end());
    std::sort(both.partials.begin(), both.partials.end(),
              [](const Partial& a, const Partial& b) { return a.frequency_hz < b.frequency_hz; });
    curve.push_back({ratio, total_dissonance(both, p)});
  }
  return curve;
}

std::vector<double> ratio_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) throw std::domain_error("ratio_grid: bad bounds or step");
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

std::vector<std::size_t> local_minima(std::span<const CurvePoint> curve) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    if (curve[i].dissonance < curve[i - 1].dissonance &&
        curve[i].dissonance < curve[i + 1].dissonance) {
      idx.push_back(i);
    }
  }
  return idx;
}

}  // namespace echocon
