#pragma once

#include <cstdint>

#include "rbcom/gain_medium.hpp"
#include "rbcom/link_budget.hpp"

namespace rbcom {

// Noise floor conversion: dBm/Hz -> W/Hz.
double noise_density_w_per_hz(double dbm_per_hz);

// SNR above which the intensity-modulation capacity approximation switches
// from the low-SNR to the high-SNR branch: 8 / (pi e (1 - 2/(pi e))^2),
// evaluated at runtime from std::numbers.
double capacity_branch_snr();

// Achievable-rate approximation for an average-power-constrained intensity
// channel [bit/s]. p: mean received signal power [W], b: bandwidth [Hz],
// n0: one-sided noise density [W/Hz].
//   snr > branch: b * log2(1 + sqrt(2 p / (pi e n0 b)))
//   otherwise:    b/2 * log2(1 + p / (n0 b))
double capacity_approx(double p, double b, double n0);

// Size of the discontinuity of capacity_approx across the branch seam at
// bandwidth b [bit/s]; the approximation is piecewise and does not meet
// exactly at the switch point.
double capacity_branch_jump(double b, double n0);

// Mean received electrical power of a frame with squared channel coefficient
// a_sq, minimum modulation level mu, capture fraction delta and split alpha:
//   p = (1-mu)^2 alpha delta a_sq / 4.
double peak_power(double a_sq, double mu, double delta, double alpha);

// Detector-side mean amplitude for symbol s: sqrt(alpha delta) * a * s.
double received_symbol_mean(double a, double s, double delta, double alpha);

// Channel state of one frame as needed to bound the next frame.
struct FrameChannel {
  std::uint64_t k = 0;  // frame index; 0 means "before the first frame"
  double a_sq = 0.0;    // squared channel coefficient [W]
  double mu = 1.0;      // minimum modulation level in (0, 1]
  double f = 0.0;       // carrier during the frame [Hz]
  double delta = 0.0;   // capture fraction during the frame
};

// Largest squared channel coefficient the next frame can sustain: the
// steady-state circulating power for k = 0, afterwards the round-trip gain of
// the previous frame's weakest symbol, h(a_sq * mu^2, f, delta).
double max_next_a_sq(const FrameChannel& prev, const OpticsParams& o, const MediumParams& p);

}  // namespace rbcom
