#pragma once

#include <span>
#include <string>
#include <vector>

namespace echocon {

/// Exact frequency ratio, kept as an integer pair so interval arithmetic
/// stays rational until the final conversion to Hz.
struct Rational {
  long num = 1;
  long den = 1;
};

long gcd(long a, long b);
Rational reduced(Rational r);
bool operator==(const Rational& a, const Rational& b);

struct Note {
  std::string name;     // Scientific Pitch Notation, e.g. "A2"
  double frequency_hz = 0.0;
};

enum class IntervalQuality {
  unison,
  minor2,
  major2,
  minor3,
  major3,
  perfect4,
  tritone,
  perfect5,
  minor6,
  major6,
  minor7,
  major7,
  octave,
};

inline constexpr int kIntervalCount = 13;

const char* quality_name(IntervalQuality q);
IntervalQuality quality_from_name(const std::string& name);  // throws std::invalid_argument
Rational quality_ratio(IntervalQuality q);

/// Two just-intonation tones; f_upper is constructed from the exact ratio,
/// never measured back from floats.
struct IntervalSpec {
  IntervalQuality quality = IntervalQuality::unison;
  Rational ratio;
  double f_lower_hz = 0.0;
  double f_upper_hz = 0.0;
};

IntervalSpec make_interval(IntervalQuality q, double f_lower_hz);

/// Just-intonation C-major scale over octaves 1..5, anchored so that the A
/// degree (ratio 5/3 over C) lands on a4_hz / 4 in octave 2.
std::vector<Note> build_scale(double a4_hz = 440.0);

/// All 13 interval qualities at each base frequency.
std::vector<IntervalSpec> interval_set(std::span<const double> base_freqs);

}  // namespace echocon
