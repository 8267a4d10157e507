#include "echocon/memristor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace echocon {

void MemristorParams::validate() const {
  if (!(rmin < rmax)) throw std::domain_error("memristor: rmin must be < rmax");
  if (!(rmin <= rinit && rinit <= rmax))
    throw std::domain_error("memristor: rinit must lie in [rmin, rmax]");
  if (!(vt_l < 0.0 && 0.0 < vt_r)) throw std::domain_error("memristor: need vt_l < 0 < vt_r");
  if (!(yo > 0.0)) throw std::domain_error("memristor: yo must be positive");
  if (!(gamma > 0.0)) throw std::domain_error("memristor: gamma must be positive");
  if (!(fo > 0.0)) throw std::domain_error("memristor: fo must be positive");
  if (!(lo > 0.0)) throw std::domain_error("memristor: lo must be positive");
  if (lo * (1.0 - m / rmin) <= 0.0)
    throw std::domain_error("memristor: L(rmin) must be positive");
}

double smooth_step(double y, double yo) {
  const double x = y / yo;
  // exp overflows past ~709; the sigmoid is exactly saturated there anyway.
  if (x > 700.0) return 1.0;
  if (x < -700.0) return 0.0;
  return 1.0 / (std::exp(-x) + 1.0);
}

double state_rate(double v, const MemristorParams& p) {
  const double below = v - p.vt_l;  // negative once v < vt_l
  const double above = v - p.vt_r;
  return -p.alpha * (below / (p.gamma + std::abs(below))) * smooth_step(-below, p.yo) -
         p.beta * v * smooth_step(below, p.yo) * smooth_step(-above, p.yo) -
         p.alpha * (above / (p.gamma + std::abs(above))) * smooth_step(above, p.yo);
}

double resistance(double r, const MemristorParams& p) {
  const double length = p.lo - p.lo * p.m / r;
  if (!(length > 0.0)) throw std::domain_error("resistance: L(r) must be positive");
  return p.fo * std::exp(2.0 * length) / length;
}

MemristorState advance_state(MemristorState st, double v, double dt,
                             const MemristorParams& p) {
  if (!(dt > 0.0)) throw std::domain_error("advance_state: dt must be positive");
  const double ve = st.orientation == Orientation::reversed ? -v : v;

  // dr/dt does not depend on r, so the four stages coincide; keep the RK4
  // shape anyway to mirror the staged network integration.
  const double k1 = state_rate(ve, p);
  const double k2 = k1, k3 = k1, k4 = k1;
  st.r += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  st.r = std::clamp(st.r, p.rmin, p.rmax);
  return st;
}

}  // namespace echocon
