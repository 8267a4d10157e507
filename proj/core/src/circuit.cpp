#include "echocon/circuit.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace echocon {

const char* circuit_name(CircuitKind k) {
  switch (k) {
    case CircuitKind::series_mr: return "series";
    case CircuitKind::wien_bridge: return "wien";
    case CircuitKind::bridge_synapse: return "synapse";
  }
  return "?";
}

CircuitKind circuit_from_name(const std::string& name) {
  if (name == "series") return CircuitKind::series_mr;
  if (name == "wien") return CircuitKind::wien_bridge;
  if (name == "synapse") return CircuitKind::bridge_synapse;
  throw std::invalid_argument("unknown circuit kind: " + name);
}

void CircuitConfig::validate() const {
  if (!(series_resistance > 0.0))
    throw std::domain_error("circuit: series_resistance must be positive");
  if (!(amp_gain > 0.0)) throw std::domain_error("circuit: amp_gain must be positive");
  memristor.validate();
}

int device_count(CircuitKind k) { return k == CircuitKind::series_mr ? 1 : 4; }

Orientation device_orientation(CircuitKind k, int device) {
  if (k == CircuitKind::series_mr) return Orientation::forward;
  // Opposed polarities within each branch, branches opposed to each other:
  // M1 forward over M2 reversed (left), M3 reversed over M4 forward (right).
  switch (device) {
    case 0: return Orientation::forward;
    case 1: return Orientation::reversed;
    case 2: return Orientation::reversed;
    default: return Orientation::forward;
  }
}

NetworkSolution solve_network(CircuitKind kind, const CircuitConfig& cfg,
                              std::span<const double> states, double v_in) {
  NetworkSolution sol;
  const auto& mp = cfg.memristor;

  if (kind == CircuitKind::series_mr) {
    const double rm = resistance(states[0], mp);
    const double i = v_in / (rm + cfg.series_resistance);
    sol.device_v[0] = i * rm;
    sol.v_out = sol.device_v[0];
    sol.v_top = v_in;
    sol.i_source = i;
    return sol;
  }

  const double r1 = resistance(states[0], mp);
  const double r2 = resistance(states[1], mp);
  const double r3 = resistance(states[2], mp);
  const double r4 = resistance(states[3], mp);
  const double left = r1 + r2;
  const double right = r3 + r4;
  const double bridge = left * right / (left + right);
  const double v_top = v_in * bridge / (cfg.series_resistance + bridge);
  const double mid_l = v_top * r2 / left;
  const double mid_r = v_top * r4 / right;

  sol.device_v[0] = v_top - mid_l;
  sol.device_v[1] = mid_l;
  sol.device_v[2] = v_top - mid_r;
  sol.device_v[3] = mid_r;
  sol.v_top = v_top;
  sol.i_source = v_in / (cfg.series_resistance + bridge);
  const double differential = mid_l - mid_r;
  sol.v_out = kind == CircuitKind::bridge_synapse ? cfg.amp_gain * differential
                                                  : differential;
  return sol;
}

TransientResult run_transient(CircuitKind kind, const CircuitConfig& cfg,
                              const std::function<double(double)>& drive,
                              double duration_s, double dt_s) {
  if (!(duration_s > 0.0)) throw std::domain_error("run_transient: duration must be positive");
  if (!(dt_s > 0.0)) throw std::domain_error("run_transient: dt must be positive");
  cfg.validate();

  const int nd = device_count(kind);
  const auto& mp = cfg.memristor;
  const auto steps = static_cast<std::size_t>(std::llround(duration_s / dt_s));

  TransientResult res;
  res.sample_rate_hz = 1.0 / dt_s;
  res.v_source.resize(steps);
  res.v_out.resize(steps);
  res.i_source.resize(steps);
  res.states.assign(static_cast<std::size_t>(nd), std::vector<double>(steps));

  std::array<double, 4> r{};
  std::array<Orientation, 4> orient{};
  for (int d = 0; d < nd; ++d) {
    r[static_cast<std::size_t>(d)] = mp.rinit;
    orient[static_cast<std::size_t>(d)] = device_orientation(kind, d);
  }

  auto rates = [&](const std::array<double, 4>& states, double v,
                   std::array<double, 4>& k) {
    const NetworkSolution sol =
        solve_network(kind, cfg, std::span<const double>(states.data(), static_cast<std::size_t>(nd)), v);
    for (int d = 0; d < nd; ++d) {
      const auto di = static_cast<std::size_t>(d);
      const double ve = orient[di] == Orientation::reversed ? -sol.device_v[di] : sol.device_v[di];
      k[di] = state_rate(ve, mp);
    }
  };

  std::array<double, 4> k1{}, k2{}, k3{}, k4{}, tmp{};
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt_s;
    const double v0 = drive(t);
    const double vh = drive(t + 0.5 * dt_s);
    const double v1 = drive(t + dt_s);

    const NetworkSolution sol =
        solve_network(kind, cfg, std::span<const double>(r.data(), static_cast<std::size_t>(nd)), v0);
    res.v_source[n] = v0;
    res.v_out[n] = sol.v_out;
    res.i_source[n] = sol.i_source;
    for (int d = 0; d < nd; ++d) res.states[static_cast<std::size_t>(d)][n] = r[static_cast<std::size_t>(d)];

    rates(r, v0, k1);
    for (int d = 0; d < nd; ++d) tmp[static_cast<std::size_t>(d)] = r[static_cast<std::size_t>(d)] + 0.5 * dt_s * k1[static_cast<std::size_t>(d)];
    rates(tmp, vh, k2);
    for (int d = 0; d < nd; ++d) tmp[static_cast<std::size_t>(d)] = r[static_cast<std::size_t>(d)] + 0.5 * dt_s * k2[static_cast<std::size_t>(d)];
    rates(tmp, vh, k3);
    for (int d = 0; d < nd; ++d) tmp[static_cast<std::size_t>(d)] = r[static_cast<std::size_t>(d)] + dt_s * k3[static_cast<std::size_t>(d)];
    rates(tmp, v1, k4);

    for (int d = 0; d < nd; ++d) {
      const auto di = static_cast<std::size_t>(d);
      r[di] += dt_s / 6.0 * (k1[di] + 2.0 * k2[di] + 2.0 * k3[di] + k4[di]);
      if (r[di] < mp.rmin) r[di] = mp.rmin;
      if (r[di] > mp.rmax) r[di] = mp.rmax;
      assert(r[di] >= mp.rmin && r[di] <= mp.rmax);
    }
  }
  return res;
}

namespace {

struct Crossing {
  std::size_t index;  // segment [index, index+1] contains the crossing
  double frac;        // interpolation fraction within the segment
  bool upward;
};

std::vector<Crossing> zero_crossings(const std::vector<double>& v) {
  std::vector<Crossing> out;
  for (std::size_t n = 0; n + 1 < v.size(); ++n) {
    const double a = v[n];
    const double b = v[n + 1];
    const bool up = a <= 0.0 && b > 0.0;    // includes a crossing at sample n itself
    const bool down = a >= 0.0 && b < 0.0;
    if (!up && !down) continue;
    Crossing c;
    c.index = n;
    c.frac = a == 0.0 ? 0.0 : a / (a - b);
    c.upward = up;
    out.push_back(c);
  }
  return out;
}

}  // namespace

HysteresisReport hysteresis_report(const TransientResult& res) {
  const auto& v = res.v_source;
  const auto& i = res.i_source;
  if (v.size() != i.size() || v.size() < 3)
    throw std::domain_error("hysteresis_report: malformed transient result");

  const auto crossings = zero_crossings(v);
  std::vector<Crossing> ups;
  for (const auto& c : crossings)
    if (c.upward) ups.push_back(c);
  // Cycle k spans upward crossing k .. k+1; the first full cycle is dropped.
  if (ups.size() < 3) throw std::domain_error("hysteresis_report: need at least 2 full drive cycles");

  double max_abs_i = 0.0;
  for (double x : i) max_abs_i = std::max(max_abs_i, std::abs(x));

  double pinch = 0.0;
  for (const auto& c : crossings) {
    const double ic = i[c.index] + c.frac * (i[c.index + 1] - i[c.index]);
    pinch = std::max(pinch, std::abs(ic));
  }

  // Signed area sum of integral I dV split by the sign of V at the segment
  // midpoint, accumulated over the retained whole cycles. The path is closed
  // by integrating from the interpolated start crossing to the interpolated
  // end crossing, so a loop-free trajectory cancels to roundoff.
  const Crossing& cb = ups[1];
  const Crossing& ce = ups.back();
  const auto cycles = static_cast<double>(ups.size() - 2);
  double area_pos = 0.0;
  double area_neg = 0.0;
  auto add_segment = [&](double v0, double i0, double v1, double i1) {
    const double da = 0.5 * (i0 + i1) * (v1 - v0);
    if (v0 + v1 >= 0.0)
      area_pos += da;
    else
      area_neg += da;
  };
  const double ib = i[cb.index] + cb.frac * (i[cb.index + 1] - i[cb.index]);
  add_segment(0.0, ib, v[cb.index + 1], i[cb.index + 1]);
  for (std::size_t n = cb.index + 1; n < ce.index; ++n)
    add_segment(v[n], i[n], v[n + 1], i[n + 1]);
  const double ie = i[ce.index] + ce.frac * (i[ce.index + 1] - i[ce.index]);
  add_segment(v[ce.index], i[ce.index], 0.0, ie);

  HysteresisReport rep;
  rep.lobe_area_pos = std::abs(area_pos) / cycles;
  rep.lobe_area_neg = std::abs(area_neg) / cycles;
  rep.pinch_current = pinch;
  return rep;
}

double thd(const Spectrum& sp, double fundamental_hz) {
  if (sp.magnitudes.empty() || !(sp.bin_width_hz > 0.0))
    throw std::domain_error("thd: empty spectrum");
  const auto nbins = sp.magnitudes.size();
  const auto bin_of = [&](double f) {
    return static_cast<std::size_t>(std::llround(f / sp.bin_width_hz));
  };
  const std::size_t fbin = bin_of(fundamental_hz);
  if (fbin == 0 || fbin >= nbins)
    throw std::domain_error("thd: fundamental outside spectrum range");
  const double fund = sp.magnitudes[fbin];
  if (!(fund > 0.0)) throw std::domain_error("thd: zero fundamental magnitude");

  double sum_sq = 0.0;
  for (int k = 2;; ++k) {
    const std::size_t b = bin_of(static_cast<double>(k) * fundamental_hz);
    if (b >= nbins) break;
    sum_sq += sp.magnitudes[b] * sp.magnitudes[b];
  }
  return std::sqrt(sum_sq) / fund;
}

}  // namespace echocon
