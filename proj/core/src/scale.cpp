#include "echocon/scale.hpp"

#include <array>
#include <cstdlib>
#include <stdexcept>

namespace echocon {

long gcd(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational reduced(Rational r) {
  if (r.den == 0) throw std::domain_error("rational with zero denominator");
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  long g = gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

bool operator==(const Rational& a, const Rational& b) {
  Rational ra = reduced(a);
  Rational rb = reduced(b);
  return ra.num == rb.num && ra.den == rb.den;
}

namespace {

struct QualityInfo {
  IntervalQuality quality;
  const char* name;
  Rational ratio;
};

// Diatonic-derived just ratios; the tritone is 64/45 (B-F within the gamut).
constexpr std::array<QualityInfo, kIntervalCount> kQualities{{
    {IntervalQuality::unison, "unison", {1, 1}},
    {IntervalQuality::minor2, "minor2", {16, 15}},
    {IntervalQuality::major2, "major2", {9, 8}},
    {IntervalQuality::minor3, "minor3", {6, 5}},
    {IntervalQuality::major3, "major3", {5, 4}},
    {IntervalQuality::perfect4, "perfect4", {4, 3}},
    {IntervalQuality::tritone, "tritone", {64, 45}},
    {IntervalQuality::perfect5, "perfect5", {3, 2}},
    {IntervalQuality::minor6, "minor6", {8, 5}},
    {IntervalQuality::major6, "major6", {5, 3}},
    {IntervalQuality::minor7, "minor7", {16, 9}},
    {IntervalQuality::major7, "major7", {15, 8}},
    {IntervalQuality::octave, "octave", {2, 1}},
}};

const QualityInfo& info(IntervalQuality q) {
  return kQualities[static_cast<int>(q)];
}

}  // namespace

const char* quality_name(IntervalQuality q) { return info(q).name; }

IntervalQuality quality_from_name(const std::string& name) {
  for (const auto& qi : kQualities) {
    if (name == qi.name) return qi.quality;
  }
  throw std::invalid_argument("unknown interval quality: " + name);
}

Rational quality_ratio(IntervalQuality q) { return info(q).ratio; }

IntervalSpec make_interval(IntervalQuality q, double f_lower_hz) {
  if (f_lower_hz <= 0.0) throw std::domain_error("interval base frequency must be positive");
  const Rational r = quality_ratio(q);
  IntervalSpec spec;
  spec.quality = q;
  spec.ratio = r;
  spec.f_lower_hz = f_lower_hz;
  spec.f_upper_hz = f_lower_hz * static_cast<double>(r.num) / static_cast<double>(r.den);
  return spec;
}

std::vector<Note> build_scale(double a4_hz) {
  if (a4_hz <= 0.0) throw std::domain_error("a4 must be positive");

  // C-major degrees in just intonation over the tonic C.
  constexpr std::array<const char*, 7> degree_names{"C", "D", "E", "F", "G", "A", "B"};
  constexpr std::array<Rational, 7> degree_ratios{{
      {1, 1}, {9, 8}, {5, 4}, {4, 3}, {3, 2}, {5, 3}, {15, 8}}};

  // Anchor: A2 = a4/4, C2 = A2 * 3/5.
  const double c2 = a4_hz / 4.0 * 3.0 / 5.0;
  const double c1 = c2 / 2.0;

  std::vector<Note> notes;
  notes.reserve(7 * 5);
  for (int octave = 1; octave <= 5; ++octave) {
    const double base = c1 * static_cast<double>(1 << (octave - 1));
    for (std::size_t d = 0; d < degree_names.size(); ++d) {
      Note n;
      n.name = std::string(degree_names[d]) + std::to_string(octave);
      n.frequency_hz = base * static_cast<double>(degree_ratios[d].num) /
                       static_cast<double>(degree_ratios[d].den);
      notes.push_back(std::move(n));
    }
  }
  return notes;
}

std::vector<IntervalSpec> interval_set(std::span<const double> base_freqs) {
  std::vector<IntervalSpec> out;
  out.reserve(base_freqs.size() * kQualities.size());
  for (double base : base_freqs) {
    if (base <= 0.0) throw std::domain_error("base frequency must be positive");
    for (const auto& qi : kQualities) out.push_back(make_interval(qi.quality, base));
  }
  return out;
}

}  // namespace echocon
