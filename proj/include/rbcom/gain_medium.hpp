#pragma once

namespace rbcom {

// Homogeneously broadened laser gain medium pumped at constant electrical
// power. Defaults are the reference design point used throughout the tests.
struct MediumParams {
  double f0 = 281.96e12;   // line-center optical frequency [Hz]
  double i_s0 = 1.2e7;     // saturation intensity at line center [W/m^2]
  double df_h = 120e9;     // homogeneous FWHM linewidth [Hz]
  double s_g = 12.56e-6;   // beam cross-section in the medium [m^2]
  double eta = 0.7;        // pump-to-stored-power conversion efficiency
  double p_in = 200.0;     // electrical pump power [W]
};

// Lorentzian detuning factor 1 + 4 (f - f0)^2 / df_h^2.
double detune_factor(double f, const MediumParams& p);

// Saturation intensity at carrier f: Is(f) = i_s0 * detune_factor(f)  [W/m^2].
double saturation_intensity(double f, const MediumParams& p);

// Unsaturated round-trip log amplitude gain g0(f) * l = eta * p_in / (Is(f) * s_g).
// The medium length cancels against the gain coefficient; only the product
// is ever needed.
double small_signal_exponent(double f, const MediumParams& p);

// Steady-state saturated power gain G for circulating input intensity i_in
// [W/m^2] at carrier f: the unique root in [1, exp(2 g0 l)] of
//   s_g * i_in * (G - 1) + (Is(f) * s_g / 2) * ln G = eta * p_in.
// i_in = 0 returns the closed-form small-signal limit exp(2 g0 l).
// Throws std::domain_error for negative or non-finite i_in.
double solve_gain(double i_in, double f, const MediumParams& p);

// Power-balance residual of the equation above at a candidate gain g,
// evaluated through std::log (a different route than the solver, so the two
// cross-check each other). Units: watts.
double gain_equation_residual(double g, double i_in, double f, const MediumParams& p);

}  // namespace rbcom
