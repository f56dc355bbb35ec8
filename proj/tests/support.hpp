#pragma once

// Shared helpers for the test binaries. The oracles here deliberately solve
// the same equations through a different route than the library (plain
// G-space bisection, closed forms) so agreement is meaningful.

#include <cmath>
#include <stdexcept>

#include "rbcom/gain_medium.hpp"
#include "rbcom/link_budget.hpp"

namespace testing_support {

inline rbcom::MediumParams reference_medium() { return rbcom::MediumParams{}; }
inline rbcom::OpticsParams reference_optics() { return rbcom::OpticsParams{}; }

// Independent gain solve: bisect phi(G) = s_g*i_in*(G-1) + (D/2)*ln G - W
// directly in G over [1, exp(2 g0 l)], 200 steps. No Newton, no log-domain
// bracketing, no shared code with the library kernel.
inline double gain_oracle(double i_in, double f, const rbcom::MediumParams& m) {
  const double w = m.eta * m.p_in;
  const double detune = 1.0 + 4.0 * (f - m.f0) * (f - m.f0) / (m.df_h * m.df_h);
  const double d = detune * m.s_g * m.i_s0;
  const double g_max = std::exp(2.0 * w / d);
  if (i_in == 0.0) {
    return g_max;
  }
  const double drive = m.s_g * i_in;
  auto phi = [&](double g) { return drive * (g - 1.0) + 0.5 * d * std::log(g) - w; };
  double lo = 1.0;
  double hi = g_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// One-round output power via the oracle gain.
inline double link_gain_oracle(double x_sq, double f, double delta, const rbcom::OpticsParams& o,
                               const rbcom::MediumParams& m) {
  const double through = (1.0 - o.alpha) * delta * delta;
  return through * x_sq * gain_oracle(through * x_sq / m.s_g, f, m);
}

// Closed-form self-sustaining circulating power at line center: the fixed
// point forces G* = 1/((1-alpha) delta0^2); the gain equation then gives the
// drive power directly, no iteration at all.
inline double stable_power_closed_form(double delta0, const rbcom::OpticsParams& o,
                                       const rbcom::MediumParams& m) {
  const double g_star = 1.0 / ((1.0 - o.alpha) * delta0 * delta0);
  const double w = m.eta * m.p_in;
  const double d = m.s_g * m.i_s0;  // line center: detune factor 1
  const double drive = (w - 0.5 * d * std::log(g_star)) / (g_star - 1.0);
  if (!(drive > 0.0)) {
    throw std::domain_error("stable_power_closed_form: below threshold");
  }
  return drive * g_star;
}

}  // namespace testing_support
