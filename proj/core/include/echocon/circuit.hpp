#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "echocon/memristor.hpp"
#include "echocon/spectrum.hpp"

namespace echocon {

enum class CircuitKind { series_mr, wien_bridge, bridge_synapse };

const char* circuit_name(CircuitKind k);
CircuitKind circuit_from_name(const std::string& name);  // throws std::invalid_argument

/// Fixed topologies:
///   series_mr      source -> M1 (forward) -> series_resistance -> ground;
///                  v_out is the memristor voltage.
///   wien_bridge    source -> series_resistance -> top node; left branch
///                  M1 (forward) over M2 (reversed), right branch M3
///                  (reversed) over M4 (forward), both to ground;
///                  v_out = V(left midpoint) - V(right midpoint).
///   bridge_synapse wien_bridge plus an ideal differential amplifier:
///                  v_out = amp_gain * (V_midL - V_midR), infinite input
///                  impedance, no saturation.
struct CircuitConfig {
  double series_resistance = 2000.0;  // ohm
  double amp_gain = 10.0;             // bridge_synapse only
  MemristorParams memristor;

  void validate() const;
};

int device_count(CircuitKind k);
Orientation device_orientation(CircuitKind k, int device);

/// Instantaneous solve of the resistive network with each memristor frozen
/// at R(r_i). Voltages are raw topology voltages (top-to-bottom positive);
/// orientation is applied by the caller when integrating states.
struct NetworkSolution {
  std::array<double, 4> device_v{};  // first device_count(kind) entries valid
  double v_out = 0.0;
  double v_top = 0.0;  // node after the series resistor (bridges), or v_in
  double i_source = 0.0;
};

NetworkSolution solve_network(CircuitKind kind, const CircuitConfig& cfg,
                              std::span<const double> states, double v_in);

struct TransientResult {
  double sample_rate_hz = 0.0;
  std::vector<double> v_source;
  std::vector<double> v_out;
  std::vector<double> i_source;
  std::vector<std::vector<double>> states;  // one series per device
};

/// Classic 4th-order staged integration; at every stage the network is
/// re-solved with the stage states and the stage-time drive value.
TransientResult run_transient(CircuitKind kind, const CircuitConfig& cfg,
                              const std::function<double(double)>& drive,
                              double duration_s, double dt_s);

struct HysteresisReport {
  double lobe_area_pos = 0.0;  // V*A per cycle, magnitude
  double lobe_area_neg = 0.0;
  double pinch_current = 0.0;  // max |I| at interpolated V = 0 crossings
};

/// Lobe areas of the (v_source, i_source) loop, averaged per drive cycle
/// after discarding the first cycle. Cycles are delimited by upward zero
/// crossings of v_source. Throws std::domain_error with < 2 full cycles.
HysteresisReport hysteresis_report(const TransientResult& res);

/// sqrt(sum_{k>=2} |Y(k f)|^2) / |Y(f)| over nearest bins up to Nyquist.
double thd(const Spectrum& sp, double fundamental_hz);

}  // namespace echocon
