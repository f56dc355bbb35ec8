#pragma once

#include <stdexcept>

#include "rbcom/gain_medium.hpp"
#include "rbcom/vec3.hpp"

namespace rbcom {

// Free-space beam geometry and passive losses of the resonant path.
// Defaults are the reference design point used throughout the tests.
struct OpticsParams {
  double lambda = 1064e-9;  // wavelength [m]
  double phi = 0.2e-3;      // beam divergence half-angle [rad]
  double s_r = 0.1256;      // receiver retroreflector capture area [m^2]
  double alpha = 0.01;      // power fraction split off to the detector
};

// Thrown when the pump cannot sustain oscillation at the requested geometry.
struct below_threshold_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Fraction of a diverging beam captured at range ||q||:
// delta = 1 - exp(-2 s_r / (lambda^2/(pi phi^2) + pi phi^2 ||q||^2)).
double link_loss(const Vec3& q, const OpticsParams& o);
double link_loss(double range, const OpticsParams& o);

// Power after one full round trip for circulating power x_sq at carrier f and
// capture fraction delta:
//   h = (1-alpha) delta^2 x_sq * G((1-alpha) delta^2 x_sq / s_g, f).
double link_gain(double x_sq, double f, double delta, const OpticsParams& o,
                 const MediumParams& p);

// Minimum pump power that sustains oscillation at capture fraction delta0:
//   p_th = -(2 ln delta0 + ln(1-alpha)) * Is(f0) * s_g / (2 eta).
double threshold_power(double delta0, const OpticsParams& o, const MediumParams& p);

// Self-consistent circulating power at line center, the fixed point of
// h(x, f0, delta0) = x. Throws below_threshold_error when p_in <= p_th.
double stable_power(double delta0, const OpticsParams& o, const MediumParams& p);

}  // namespace rbcom
