#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rbcom/horizon.hpp"
#include "rbcom/rng.hpp"
#include "rbcom/scenario.hpp"

namespace rbcom {

// Symbol-level simulation of the normalized modulation chain. The weights
// w_k(n) renormalize each symbol against the realized round-trip gain of the
// previous symbol, which cancels inter-frame echo exactly; tests verify the
// resulting identity y - noise = sqrt(alpha delta) * A * s.

// One modulated frame.
struct FrameSignals {
  double a_target = 0;         // channel coefficient A_k this frame drives at
  std::vector<double> s;       // information symbols, in [mu, 1]
  std::vector<double> w;       // normalization weights, in (0, 1]
  std::vector<double> x;       // circulating amplitudes sqrt(h_prev) * w * s
  std::vector<double> noise;   // receiver noise realization
  std::vector<double> y;       // detector samples
};

// i.i.d. uniform symbols on [mu, 1] from the given stream.
std::vector<double> draw_symbols(std::size_t n, double mu, const CounterRng& rng);

// First frame: every symbol rides the steady-state circulating power p_t.
// Populates s/w/x; throws std::domain_error if a weight would exceed 1 + 1e-9
// (i.e. a_target above the sustainable bound).
FrameSignals modulate_first_frame(double p_t, double a_target, std::span<const double> s);

// Later frames: symbol n rides the realized gain of symbol n of the previous
// frame, carrier[n] = sqrt(h(prev_x[n]^2, f_prev, delta_prev)).
FrameSignals modulate_frame(std::span<const double> prev_x, double a_target,
                            std::span<const double> s, double f_prev, double delta_prev,
                            const OpticsParams& o, const MediumParams& m);

// Detection: y = sqrt(alpha delta) * x + noise, noise ~ N(0, variance) drawn
// from the given stream. Fills frame.noise and frame.y.
void transmit_and_receive(FrameSignals& frame, double delta, double alpha,
                          double noise_variance, const CounterRng& rng);

struct SimplificationReport {
  double max_rel_error = 0;  // worst |(y - noise) - sqrt(alpha delta) A s| / expected
  bool ok = false;
};

// Checks the echo-cancellation identity on every symbol of every frame.
SimplificationReport verify_simplification(std::span<const FrameSignals> frames,
                                           std::span<const double> deltas, double alpha,
                                           double tol);

// End-to-end run of k_frames frames of n_symbols each against a computed
// horizon: mu_k drawn uniformly from [0.3, 0.7], A_k at safety times the
// sustainable bound of the weakest previous symbol, symbol 0 pinned to the
// alphabet floor so worst-case bounds are exercised.
struct SimulationRun {
  std::vector<FrameSignals> frames;
  std::vector<double> mu;      // per-frame modulation floor
  std::vector<double> deltas;  // per-frame capture fraction
  SimplificationReport report;
};

SimulationRun simulate_link(const Scenario& scn, const HorizonResult& horizon,
                            std::size_t k_frames, std::size_t n_symbols, double safety,
                            double noise_variance, std::uint64_t seed);

}  // namespace rbcom
