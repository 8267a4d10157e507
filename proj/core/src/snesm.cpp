#include "echocon/snesm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace echocon {

void SnesmConfig::validate() const {
  circuit.validate();
  if (!(delay_s > 0.0)) throw std::domain_error("snesm: delay must be positive");
  if (delay_s != pulse_duration_s)
    throw std::domain_error("snesm: delay must equal pulse_duration so windows tile the run");
  if (generations < 1) throw std::domain_error("snesm: need at least one generation");
  if (!(damping >= 0.0)) throw std::domain_error("snesm: damping must be non-negative");
  if (!(tone_amplitude_v >= 0.0)) throw std::domain_error("snesm: tone amplitude must be >= 0");
  if (!(feedback_gain >= 0.0)) throw std::domain_error("snesm: feedback gain must be >= 0");
  if (!(pulse_onset_s >= 0.0 && pulse_onset_s < delay_s))
    throw std::domain_error("snesm: pulse onset must lie inside the first window");
  if (!(dt_s > 0.0)) throw std::domain_error("snesm: dt must be positive");
  if (!(analysis_rate_hz > 0.0)) throw std::domain_error("snesm: analysis rate must be positive");

  const double steps_per_delay = delay_s / dt_s;
  if (std::abs(steps_per_delay - std::round(steps_per_delay)) > 1e-9)
    throw std::domain_error("snesm: delay must be an integer number of dt steps");
  const double decim = 1.0 / (dt_s * analysis_rate_hz);
  if (std::abs(decim - std::round(decim)) > 1e-9)
    throw std::domain_error("snesm: 1/dt must be an integer multiple of the analysis rate");
  const double window = delay_s * analysis_rate_hz;
  if (std::abs(window - std::round(window)) > 1e-9)
    throw std::domain_error("snesm: delay must hold an integer number of analysis samples");
}

double synth_pulse(const IntervalSpec& interval, const SnesmConfig& cfg, double t) {
  if (t < 0.0) throw std::domain_error("synth_pulse: t must be >= 0");
  const double tp = t - cfg.pulse_onset_s;
  if (tp < 0.0 || tp >= cfg.pulse_duration_s) return 0.0;
  const double envelope = cfg.tone_amplitude_v * std::exp(-cfg.damping * tp);
  const double w1 = 2.0 * std::numbers::pi * interval.f_lower_hz;
  const double w2 = 2.0 * std::numbers::pi * interval.f_upper_hz;
  return envelope * (std::sin(w1 * tp) + std::sin(w2 * tp));
}

GenerationTrace run_snesm(const IntervalSpec& interval, const SnesmConfig& cfg) {
  cfg.validate();

  const auto& circ = cfg.circuit;
  const auto& mp = circ.memristor;
  const double dt = cfg.dt_s;
  const auto delay_steps = static_cast<std::size_t>(std::llround(cfg.delay_s / dt));
  const auto total_steps = delay_steps * static_cast<std::size_t>(cfg.generations);

  // The loop circulates the bridge differential: the node input is the pulse
  // plus the delayed differential scaled by feedback_gain. The differential
  // (not the amplified read-out) is fed back, so |loop signal| is bounded by
  // feedback_gain * sup|node input| and echoes always fade for gains < 1.
  std::vector<double> loop_signal(total_steps);   // node input, recorded trace
  std::vector<double> differential(total_steps);  // bridge output, feeds the delay line

  constexpr CircuitKind kind = CircuitKind::wien_bridge;  // raw differential
  constexpr int nd = 4;
  std::array<double, nd> r{};
  std::array<Orientation, nd> orient{};
  for (int d = 0; d < nd; ++d) {
    r[static_cast<std::size_t>(d)] = mp.rinit;
    orient[static_cast<std::size_t>(d)] = device_orientation(kind, d);
  }

  // Delayed differential at integer / half step offsets; zero before one delay.
  auto fb_at = [&](std::size_t n) -> double {
    return n >= delay_steps ? cfg.feedback_gain * differential[n - delay_steps] : 0.0;
  };
  auto fb_at_half = [&](std::size_t n) -> double {
    // linear interpolation between samples n and n+1 of the delayed stream
    const double a = fb_at(n);
    const double b = fb_at(n + 1);
    return 0.5 * (a + b);
  };

  auto rates = [&](const std::array<double, nd>& states, double v,
                   std::array<double, nd>& k) {
    const NetworkSolution sol =
        solve_network(kind, circ, std::span<const double>(states.data(), nd), v);
    for (int d = 0; d < nd; ++d) {
      const auto di = static_cast<std::size_t>(d);
      const double ve = orient[di] == Orientation::reversed ? -sol.device_v[di] : sol.device_v[di];
      k[di] = state_rate(ve, mp);
    }
  };

  std::array<double, nd> k1{}, k2{}, k3{}, k4{}, tmp{};
  for (std::size_t n = 0; n < total_steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    const double v0 = synth_pulse(interval, cfg, t) + fb_at(n);
    const double vh = synth_pulse(interval, cfg, t + 0.5 * dt) + fb_at_half(n);
    const double v1 = synth_pulse(interval, cfg, t + dt) + fb_at(n + 1);

    const NetworkSolution sol =
        solve_network(kind, circ, std::span<const double>(r.data(), nd), v0);
    loop_signal[n] = v0;
    differential[n] = sol.v_out;

    rates(r, v0, k1);
    for (int d = 0; d < nd; ++d) tmp[static_cast<std::size_t>(d)] = r[static_cast<std::size_t>(d)] + 0.5 * dt * k1[static_cast<std::size_t>(d)];
    rates(tmp, vh, k2);
    for (int d = 0; d < nd; ++d) tmp[static_cast<std::size_t>(d)] = r[static_cast<std::size_t>(d)] + 0.5 * dt * k2[static_cast<std::size_t>(d)];
    rates(tmp, vh, k3);
    for (int d = 0; d < nd; ++d) tmp[static_cast<std::size_t>(d)] = r[static_cast<std::size_t>(d)] + dt * k3[static_cast<std::size_t>(d)];
    rates(tmp, v1, k4);
    for (int d = 0; d < nd; ++d) {
      const auto di = static_cast<std::size_t>(d);
      r[di] += dt / 6.0 * (k1[di] + 2.0 * k2[di] + 2.0 * k3[di] + k4[di]);
      if (r[di] < mp.rmin) r[di] = mp.rmin;
      if (r[di] > mp.rmax) r[di] = mp.rmax;
    }
  }

  const std::vector<double> analysed =
      decimate(loop_signal, 1.0 / dt, cfg.analysis_rate_hz);

  const auto window_len =
      static_cast<std::size_t>(std::llround(cfg.delay_s * cfg.analysis_rate_hz));

  GenerationTrace trace;
  trace.interval = interval;
  trace.analysis_rate_hz = cfg.analysis_rate_hz;
  trace.windows.resize(static_cast<std::size_t>(cfg.generations));
  for (int g = 0; g < cfg.generations; ++g) {
    const auto gi = static_cast<std::size_t>(g);
    const auto begin = gi * window_len;
    trace.windows[gi].assign(analysed.begin() + static_cast<long>(begin),
                             analysed.begin() + static_cast<long>(begin + window_len));
  }
  return trace;
}

double mixing_grid(Rational ratio) {
  const Rational r = reduced(ratio);
  if (!(r.num >= r.den && r.den >= 1))
    throw std::domain_error("mixing_grid: ratio must be p/q with p >= q >= 1");
  return 1.0 / static_cast<double>(r.den);
}

}  // namespace echocon
