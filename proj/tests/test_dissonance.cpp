#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "echocon/dissonance.hpp"

using namespace echocon;

TEST_CASE("coincident or silent sines carry no roughness") {
  CHECK(pair_dissonance(110.0, 110.0, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(pair_dissonance(110.0, 220.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("grid-scan oracle: roughness maximum for a 110 Hz lower tone") {
  // Independent oracle: scan df in (0, 200] Hz at 0.01 Hz resolution.
  double best_df = 0.0;
  double best_d = -1.0;
  for (int k = 1; k <= 20000; ++k) {
    const double df = 0.01 * k;
    const double d = pair_dissonance(110.0, 110.0 + df, 1.0, 1.0);
    if (d > best_d) {
      best_d = d;
      best_df = df;
    }
  }
  CHECK(best_df == doctest::Approx(19.50).epsilon(0.0026));  // +-0.05 Hz
  CHECK(best_d == doctest::Approx(0.899).epsilon(0.0023));   // +-0.002

  // Calculus cross-check: s*df* = ln(b2/b1)/(b2-b1).
  const DissonanceParams p;
  const double s = p.x_star / (p.s1 * 110.0 + p.s2);
  const double analytic_df = std::log(p.b2 / p.b1) / ((p.b2 - p.b1) * s);
  CHECK(best_df == doctest::Approx(analytic_df).epsilon(1e-3));

  CHECK(pair_dissonance(110.0, 129.50, 1.0, 1.0) == doctest::Approx(0.899).epsilon(0.0023));
}

TEST_CASE("pair dissonance is symmetric in argument order") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> freq(20.0, 2000.0);
  std::uniform_real_distribution<double> amp(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double f1 = freq(rng), f2 = freq(rng);
    const double l1 = amp(rng), l2 = amp(rng);
    CHECK(pair_dissonance(f1, f2, l1, l2) ==
          doctest::Approx(pair_dissonance(f2, f1, l2, l1)).epsilon(1e-12));
  }
}

TEST_CASE("roughness tail decays fast") {
  // With the standard constants the exact ratio at 10*dstar is
  // ~5*exp(-3.51*ln(b2/b1)/(b2-b1)*10)/0.899 = 2.4e-3, and the 1e-3 level is
  // crossed just past 11*dstar; assert both facts.
  const double dstar = 19.50;
  const double near = pair_dissonance(110.0, 110.0 + dstar, 1.0, 1.0);
  const double far10 = pair_dissonance(110.0, 110.0 + 10.0 * dstar, 1.0, 1.0);
  const double far12 = pair_dissonance(110.0, 110.0 + 12.0 * dstar, 1.0, 1.0);
  CHECK(far10 < 3e-3 * near);
  CHECK(far12 < 1e-3 * near);
  CHECK(far12 < far10);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(pair_dissonance(0.0, 100.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(pair_dissonance(100.0, -5.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(pair_dissonance(100.0, 105.0, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(total_dissonance(PartialSet{}), std::domain_error);
  CHECK_THROWS_AS(harmonic_tone(110.0, 0, AmplitudeLaw::uniform()), std::domain_error);
}

TEST_CASE("total dissonance of simple sets") {
  CHECK(total_dissonance({{{110.0, 1.0}}}) == 0.0);
  CHECK(total_dissonance({{{110.0, 1.0}, {110.0, 1.0}}}) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(total_dissonance({{{110.0, 1.0}, {129.50, 1.0}}}) ==
        doctest::Approx(0.899).epsilon(0.0023));
}

TEST_CASE("total dissonance is permutation invariant") {
  PartialSet a{{{110.0, 1.0}, {129.5, 0.7}, {220.0, 0.5}, {330.0, 0.9}}};
  PartialSet b{{{330.0, 0.9}, {110.0, 1.0}, {220.0, 0.5}, {129.5, 0.7}}};
  CHECK(total_dissonance(a) == doctest::Approx(total_dissonance(b)).epsilon(1e-12));
}

namespace {

bool has_minimum_at(const std::vector<CurvePoint>& curve, double target, double tol) {
  for (std::size_t i : local_minima(curve)) {
    if (std::abs(curve[i].ratio - target) <= tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("curve minima isolate octave, fifth and fourth as harmonics accrue") {
  const auto grid = ratio_grid(1.0, 2.01, 0.005);

  const auto n2 = dissonance_curve(110.0, 2, AmplitudeLaw::uniform(), grid);
  CHECK(has_minimum_at(n2, 2.0, 0.005 + 1e-12));

  const auto n3 = dissonance_curve(110.0, 3, AmplitudeLaw::uniform(), grid);
  CHECK(has_minimum_at(n3, 2.0, 0.005 + 1e-12));
  CHECK(has_minimum_at(n3, 1.5, 0.005 + 1e-12));

  const auto n4 = dissonance_curve(110.0, 4, AmplitudeLaw::uniform(), grid);
  CHECK(has_minimum_at(n4, 2.0, 0.005 + 1e-12));
  CHECK(has_minimum_at(n4, 1.5, 0.005 + 1e-12));
  CHECK(has_minimum_at(n4, 4.0 / 3.0, 0.005 + 1e-12));
}

TEST_CASE("a single sine pair has no interior minimum: only unison is detected") {
  const auto grid = ratio_grid(1.0, 2.01, 0.005);
  const auto curve = dissonance_curve(110.0, 1, AmplitudeLaw::uniform(), grid);
  for (std::size_t i : local_minima(curve)) {
    CHECK(!(curve[i].ratio > 1.0 && curve[i].ratio < 2.0));
  }
}

TEST_CASE("geometric amplitude law shifts heights but keeps the octave dip") {
  const auto grid = ratio_grid(1.0, 2.01, 0.005);
  const auto geo = dissonance_curve(110.0, 4, AmplitudeLaw::geometric(0.8), grid);
  CHECK(has_minimum_at(geo, 2.0, 0.005 + 1e-12));
  const auto uni = dissonance_curve(110.0, 4, AmplitudeLaw::uniform(), grid);
  // Softer upper partials mean less total roughness everywhere off-unison.
  CHECK(geo[100].dissonance < uni[100].dissonance);
}

TEST_CASE("curve grid validation") {
  const double bad_order[] = {1.0, 1.5, 1.4, 2.0};
  CHECK_THROWS_AS(dissonance_curve(110.0, 2, AmplitudeLaw::uniform(), bad_order),
                  std::domain_error);
  const double not_covering[] = {1.2, 1.5, 1.9};
  CHECK_THROWS_AS(dissonance_curve(110.0, 2, AmplitudeLaw::uniform(), not_covering),
                  std::domain_error);
  const auto grid = ratio_grid(1.0, 2.01, 0.005);
  CHECK_THROWS_AS(dissonance_curve(110.0, 0, AmplitudeLaw::uniform(), grid),
                  std::domain_error);
}
