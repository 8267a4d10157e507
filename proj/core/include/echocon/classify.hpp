#pragma once

#include <array>
#include <span>
#include <vector>

#include "echocon/scale.hpp"
#include "echocon/spectrum.hpp"

namespace echocon {

struct PeakCountRow {
  IntervalQuality quality = IntervalQuality::unison;
  double base_hz = 0.0;
  int generation = 0;
  int peak_count = 0;
};

struct CurveRow {
  IntervalQuality quality = IntervalQuality::unison;
  Rational ratio;
  double mean_reciprocal = 0.0;                    // over bases and generations 1..9
  std::vector<std::pair<double, double>> per_base; // (base_hz, mean reciprocal)
};

/// Mean reciprocal peak count over generations 1..9 per (interval, base),
/// rows sorted by ratio. Throws std::domain_error when generations are
/// missing or a peak count is zero.
std::vector<CurveRow> consonance_curve(std::span<const PeakCountRow> rows);

struct PhasePoint {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// Triples of consecutive differences of the normalized peak frequencies,
/// concatenated across generations. Windows with fewer than 4 peaks
/// contribute nothing.
std::vector<PhasePoint> phase_points(std::span<const PeakList> generations);

using Anchor = std::array<double, 3>;

/// Canonical cluster anchors: unison/octave -> {(1,1,1)}; perfect fifth ->
/// {(1/2,1/2,1/2)}; perfect fourth -> the four 1/3-2/3 combinations; other
/// qualities have no canonical set (empty).
std::span<const Anchor> anchors_for(IntervalQuality q);

struct ClusterReport {
  Anchor centroid{};
  double dispersion = 0.0;               // mean distance to centroid
  std::vector<double> anchor_distances;  // per point, to the nearest anchor
  double fraction_within_eps = 0.0;
};

/// Cluster statistics against the quality's canonical anchor set (or, for
/// qualities without one, against the union of all canonical anchors).
ClusterReport cluster_report(std::span<const PhasePoint> points,
                             IntervalQuality quality, double eps = 0.1);

enum class IntervalClass { absolute, perfect, dissonant };

const char* interval_class_name(IntervalClass c);

/// absolute if >= 90% of points lie within eps of (1,1,1); perfect if
/// >= 75% lie within eps of the fifth/fourth anchors; else dissonant.
IntervalClass classify_interval(std::span<const PhasePoint> points,
                                double eps = 0.1);

}  // namespace echocon
