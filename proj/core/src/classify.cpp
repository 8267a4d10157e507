#include "echocon/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace echocon {

std::vector<CurveRow> consonance_curve(std::span<const PeakCountRow> rows) {
  // (quality, base) -> generation -> count
  std::map<std::pair<int, double>, std::map<int, int>> by_run;
  for (const auto& row : rows)
    by_run[{static_cast<int>(row.quality), row.base_hz}][row.generation] = row.peak_count;

  std::map<int, CurveRow> by_quality;
  for (const auto& [key, gens] : by_run) {
    double sum = 0.0;
    for (int g = 1; g <= 9; ++g) {
      auto it = gens.find(g);
      if (it == gens.end())
        throw std::domain_error("consonance_curve: missing generation in peak-count table");
      if (it->second <= 0)
        throw std::domain_error("consonance_curve: zero peak count in generations 1..9");
      sum += 1.0 / static_cast<double>(it->second);
    }
    const double mean = sum / 9.0;

    const auto quality = static_cast<IntervalQuality>(key.first);
    CurveRow& row = by_quality[key.first];
    row.quality = quality;
    row.ratio = quality_ratio(quality);
    row.per_base.emplace_back(key.second, mean);
  }

  std::vector<CurveRow> curve;
  curve.reserve(by_quality.size());
  for (auto& [q, row] : by_quality) {
    std::sort(row.per_base.begin(), row.per_base.end());
    double total = 0.0;
    for (const auto& [base, value] : row.per_base) total += value;
    row.mean_reciprocal = total / static_cast<double>(row.per_base.size());
    curve.push_back(std::move(row));
  }
  std::sort(curve.begin(), curve.end(), [](const CurveRow& a, const CurveRow& b) {
    return static_cast<double>(a.ratio.num) * static_cast<double>(b.ratio.den) <
           static_cast<double>(b.ratio.num) * static_cast<double>(a.ratio.den);
  });
  return curve;
}

std::vector<PhasePoint> phase_points(std::span<const PeakList> generations) {
  std::vector<PhasePoint> points;
  for (const auto& pl : generations) {
    const auto& pk = pl.peaks;
    if (pk.size() < 4) continue;
    for (std::size_t n = 0; n + 3 < pk.size(); ++n) {
      PhasePoint p;
      p.d1 = pk[n + 1].normalized - pk[n].normalized;
      p.d2 = pk[n + 2].normalized - pk[n + 1].normalized;
      p.d3 = pk[n + 3].normalized - pk[n + 2].normalized;
      points.push_back(p);
    }
  }
  return points;
}

namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr double kTwoThirds = 2.0 / 3.0;

constexpr std::array<Anchor, 1> kAbsoluteAnchors{{{1.0, 1.0, 1.0}}};
constexpr std::array<Anchor, 1> kFifthAnchors{{{0.5, 0.5, 0.5}}};
constexpr std::array<Anchor, 4> kFourthAnchors{{
    {kThird, kThird, kThird},
    {kThird, kThird, kTwoThirds},
    {kThird, kTwoThirds, kThird},
    {kThird, kTwoThirds, kTwoThirds},
}};
constexpr std::array<Anchor, 6> kAllAnchors{{
    {1.0, 1.0, 1.0},
    {0.5, 0.5, 0.5},
    {kThird, kThird, kThird},
    {kThird, kThird, kTwoThirds},
    {kThird, kTwoThirds, kThird},
    {kThird, kTwoThirds, kTwoThirds},
}};

double dist(const PhasePoint& p, const Anchor& a) {
  const double dx = p.d1 - a[0];
  const double dy = p.d2 - a[1];
  const double dz = p.d3 - a[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double nearest_anchor_distance(const PhasePoint& p, std::span<const Anchor> anchors) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : anchors) best = std::min(best, dist(p, a));
  return best;
}

double fraction_within(std::span<const PhasePoint> points,
                       std::span<const Anchor> anchors, double eps) {
  if (points.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& p : points)
    if (nearest_anchor_distance(p, anchors) <= eps) ++hits;
  return static_cast<double>(hits) / static_cast<double>(points.size());
}

}  // namespace

std::span<const Anchor> anchors_for(IntervalQuality q) {
  switch (q) {
    case IntervalQuality::unison:
    case IntervalQuality::octave:
      return kAbsoluteAnchors;
    case IntervalQuality::perfect5:
      return kFifthAnchors;
    case IntervalQuality::perfect4:
      return kFourthAnchors;
    default:
      return {};
  }
}

ClusterReport cluster_report(std::span<const PhasePoint> points,
                             IntervalQuality quality, double eps) {
  if (points.empty()) throw std::domain_error("cluster_report: empty point set");

  ClusterReport rep;
  for (const auto& p : points) {
    rep.centroid[0] += p.d1;
    rep.centroid[1] += p.d2;
    rep.centroid[2] += p.d3;
  }
  const auto n = static_cast<double>(points.size());
  for (double& c : rep.centroid) c /= n;

  double spread = 0.0;
  for (const auto& p : points)
    spread += dist(p, rep.centroid);
  rep.dispersion = spread / n;

  std::span<const Anchor> anchors = anchors_for(quality);
  if (anchors.empty()) anchors = kAllAnchors;
  rep.anchor_distances.reserve(points.size());
  std::size_t hits = 0;
  for (const auto& p : points) {
    const double d = nearest_anchor_distance(p, anchors);
    rep.anchor_distances.push_back(d);
    if (d <= eps) ++hits;
  }
  rep.fraction_within_eps = static_cast<double>(hits) / n;
  return rep;
}

const char* interval_class_name(IntervalClass c) {
  switch (c) {
    case IntervalClass::absolute: return "absolute";
    case IntervalClass::perfect: return "perfect";
    case IntervalClass::dissonant: return "dissonant";
  }
  return "?";
}

IntervalClass classify_interval(std::span<const PhasePoint> points, double eps) {
  if (points.empty()) throw std::domain_error("classify_interval: empty point set");
  if (fraction_within(points, kAbsoluteAnchors, eps) >= 0.90)
    return IntervalClass::absolute;

  std::array<Anchor, 5> perfect_anchors{};
  perfect_anchors[0] = kFifthAnchors[0];
  std::copy(kFourthAnchors.begin(), kFourthAnchors.end(), perfect_anchors.begin() + 1);
  if (fraction_within(points, perfect_anchors, eps) >= 0.75)
    return IntervalClass::perfect;
  return IntervalClass::dissonant;
}

}  // namespace echocon
