#pragma once

namespace echocon {

/// Threshold-type memristor with a bounded internal state r and
/// instantaneous resistance R(r) = fo*exp(2*L(r))/L(r), L(r) = lo*(1 - m/r).
struct MemristorParams {
  double rmin = 100.0;
  double rmax = 390.0;
  double rinit = 390.0;
  double alpha = 40000.0;  // fast threshold drive, state-units/s
  double beta = 10.0;      // sub-threshold drift, state-units/s per volt
  double gamma = 0.2;      // V, softening of the threshold branches
  double vt_r = 1.5;       // V
  double vt_l = -1.5;      // V
  double yo = 1.0e-4;      // V, sigmoid steepness
  double m = 82.0;         // state offset
  double fo = 310.0;       // ohm
  double lo = 4.0;         // dimensionless length scale

  void validate() const;  // throws std::domain_error
};

enum class Orientation { forward, reversed };

struct MemristorState {
  double r = 390.0;
  Orientation orientation = Orientation::forward;
};

/// Logistic step 1/(exp(-y/yo)+1), saturation-safe: returns exactly 0 or 1
/// once |y/yo| exceeds the double exponent range.
double smooth_step(double y, double yo);

/// dr/dt as a function of the terminal voltage the device equations see.
double state_rate(double v, const MemristorParams& p);

/// Instantaneous resistance in ohms. Throws std::domain_error if L(r) <= 0.
double resistance(double r, const MemristorParams& p);

/// One explicit 4th-order step of dr/dt = state_rate(+-v) with v held over
/// the step, followed by projection of r onto [rmin, rmax].
MemristorState advance_state(MemristorState st, double v, double dt,
                             const MemristorParams& p);

}  // namespace echocon
