#include "rbcom/gain_medium.hpp"

#include <cmath>
#include <stdexcept>

#include "rbcom/kernels/kernels.hpp"

namespace rbcom {

double detune_factor(double f, const MediumParams& p) {
  const double d = (f - p.f0) / p.df_h;
  return 1.0 + 4.0 * d * d;
}

double saturation_intensity(double f, const MediumParams& p) {
  return p.i_s0 * detune_factor(f, p);
}

double small_signal_exponent(double f, const MediumParams& p) {
  return p.eta * p.p_in / (saturation_intensity(f, p) * p.s_g);
}

double solve_gain(double i_in, double f, const MediumParams& p) {
  if (!(i_in >= 0.0) || !std::isfinite(i_in)) {
    throw std::domain_error("solve_gain: input intensity must be finite and non-negative");
  }
  const kernels::GainSolveCtx c = kernels::make_gain_ctx(f, p);
  if (i_in == 0.0) {
    return std::exp(c.u_max);  // small-signal limit
  }
  return kernels::solve_gain_from_drive(c, c.drive_scale * i_in);
}

double gain_equation_residual(double g, double i_in, double f, const MediumParams& p) {
  const double d = saturation_intensity(f, p) * p.s_g;
  return p.s_g * i_in * (g - 1.0) + 0.5 * d * std::log(g) - p.eta * p.p_in;
}

}  // namespace rbcom
