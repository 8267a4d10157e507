#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "echocon/memristor.hpp"

using namespace echocon;

TEST_CASE("smooth step midpoint and saturation") {
  CHECK(smooth_step(0.0, 1e-4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(smooth_step(0.5, 1e-4) == 1.0);   // exact in the saturated branch
  CHECK(smooth_step(-0.5, 1e-4) == 0.0);
  CHECK(smooth_step(1e-5, 1e-4) > 0.5);
  CHECK(smooth_step(-1e-5, 1e-4) < 0.5);
}

TEST_CASE("smooth step partition identity at 1000 random points") {
  std::mt19937 rng(987);
  std::uniform_real_distribution<double> volt(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = volt(rng);
    const double sum = smooth_step(y, 1e-4) + smooth_step(-y, 1e-4);
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("state rate hand evaluations") {
  const MemristorParams p;
  CHECK(state_rate(0.0, p) == 0.0);
  CHECK(state_rate(1.0, p) == doctest::Approx(-10.0).epsilon(1e-7));
  // Threshold branch: -alpha * 0.5 / 0.7.
  const double expected = -p.alpha * 0.5 / (p.gamma + 0.5);
  CHECK(state_rate(2.0, p) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(state_rate(2.0, p) == doctest::Approx(-28571.43).epsilon(4e-6));
  CHECK(state_rate(-2.0, p) == doctest::Approx(28571.43).epsilon(4e-6));
}

TEST_CASE("state rate is odd with symmetric thresholds") {
  const MemristorParams p;
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> volt(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = volt(rng);
    const double fwd = state_rate(v, p);
    const double bwd = state_rate(-v, p);
    const double scale = std::max({std::abs(fwd), std::abs(bwd), 1e-30});
    CHECK(std::abs(fwd + bwd) / scale < 1e-9);
  }
}

TEST_CASE("two-source split of the rate recombines to the single rate") {
  // The equivalent circuit drives one capacitor from two opposed sources
  // gated by st_f(-v) and st_f(v); their sum must equal the plain rate.
  const MemristorParams p;
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> volt(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = volt(rng);
    const double rate = state_rate(v, p);
    const double split = rate * smooth_step(-v, p.yo) + rate * smooth_step(v, p.yo);
    const double scale = std::max(std::abs(rate), 1e-30);
    CHECK(std::abs(split - rate) / scale < 1e-12);
  }
}

TEST_CASE("resistance evaluations at the state bounds") {
  const MemristorParams p;
  CHECK(resistance(390.0, p) == doctest::Approx(5.441e4).epsilon(1e-3));
  CHECK(resistance(100.0, p) == doctest::Approx(1817.2).epsilon(1e-3));
  CHECK(resistance(390.0, p) > resistance(100.0, p));
  CHECK_THROWS_AS(resistance(82.0, p), std::domain_error);  // L = 0
  CHECK_THROWS_AS(resistance(50.0, p), std::domain_error);  // L < 0
}

TEST_CASE("advance state integrates, clamps and respects orientation") {
  const MemristorParams p;
  const double dt = 1e-4;

  MemristorState st{390.0, Orientation::forward};
  const auto pushed = advance_state(st, 2.0, dt, p);
  CHECK(pushed.r < 390.0);

  const auto clamped = advance_state(st, -2.0, dt, p);
  CHECK(clamped.r == 390.0);

  const auto idle = advance_state(st, 0.0, dt, p);
  CHECK(idle.r == 390.0);

  MemristorState rev{390.0, Orientation::reversed};
  const auto rev_pushed = advance_state(rev, -2.0, dt, p);
  CHECK(rev_pushed.r == doctest::Approx(pushed.r).epsilon(1e-12));

  CHECK_THROWS_AS(advance_state(st, 1.0, 0.0, p), std::domain_error);
}

TEST_CASE("half steps compose to the full step") {
  const MemristorParams p;
  const double dt = 1e-4;
  MemristorState st{250.0, Orientation::forward};
  const auto full = advance_state(st, 1.7, dt, p);
  const auto halves = advance_state(advance_state(st, 1.7, dt / 2, p), 1.7, dt / 2, p);
  CHECK(halves.r == doctest::Approx(full.r).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  MemristorParams p;
  p.rmin = 400.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = MemristorParams{};
  p.yo = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = MemristorParams{};
  p.rinit = 99.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  CHECK_NOTHROW(MemristorParams{}.validate());
}
