#pragma once

#include <vector>

#include "echocon/circuit.hpp"
#include "echocon/scale.hpp"

namespace echocon {

/// Single-node echo state machine: the bridge-synapse node inside a delayed
/// feedback loop. The loop signal (input pulse plus the delayed, scaled
/// bridge differential) is what circulates and what the generation windows
/// record, so window 0 is the input pulse itself.
struct SnesmConfig {
  double delay_s = 2.0;
  double feedback_gain = 0.5;
  int generations = 10;  // input + 9 echoes
  double pulse_duration_s = 2.0;
  double damping = 2.0;           // 1/s
  double tone_amplitude_v = 10.0; // per tone; a two-tone pulse peaks at <= 20 V
  double pulse_onset_s = 0.0;     // silence before the pulse starts
  CircuitConfig circuit;
  double dt_s = 1.0 / 65536.0;
  double analysis_rate_hz = 8192.0;

  void validate() const;  // throws std::domain_error
};

struct GenerationTrace {
  IntervalSpec interval;
  double analysis_rate_hz = 0.0;
  std::vector<std::vector<double>> windows;  // generations x samples
};

/// Damped two-tone pulse: sum over tones of A*sin(2*pi*f*t)*exp(-damping*t)
/// for t < pulse_duration, zero afterwards.
double synth_pulse(const IntervalSpec& interval, const SnesmConfig& cfg, double t);

/// Runs the loop for generations*delay seconds, decimates the loop signal to
/// the analysis rate and slices it into generation windows. Deterministic.
GenerationTrace run_snesm(const IntervalSpec& interval, const SnesmConfig& cfg);

/// Comb spacing (as a fraction of the lower tone) that repeated sum and
/// difference mixing of a p/q interval generates: 1/q.
double mixing_grid(Rational ratio);

}  // namespace echocon
