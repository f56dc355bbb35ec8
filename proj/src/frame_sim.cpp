#include "rbcom/frame_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rbcom/kernels/kernels.hpp"

namespace rbcom {

namespace {

constexpr double weight_tol = 1e-9;

void check_weights(const std::vector<double>& w) {
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (!(w[n] > 0.0) || w[n] > 1.0 + weight_tol) {
      throw std::domain_error("modulate: weight " + std::to_string(w[n]) + " at symbol " +
                              std::to_string(n) + " outside (0, 1]");
    }
  }
}

}  // namespace

std::vector<double> draw_symbols(std::size_t n, double mu, const CounterRng& rng) {
  if (!(mu >= 0.0) || !(mu <= 1.0)) {
    throw std::domain_error("draw_symbols: mu must be in [0, 1]");
  }
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = rng.uniform(i, mu, 1.0);
  }
  return s;
}

FrameSignals modulate_first_frame(double p_t, double a_target, std::span<const double> s) {
  FrameSignals fr;
  fr.a_target = a_target;
  fr.s.assign(s.begin(), s.end());
  const double carrier = std::sqrt(p_t);
  fr.w.assign(s.size(), a_target / carrier);
  check_weights(fr.w);
  fr.x.resize(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) {
    fr.x[n] = carrier * fr.w[n] * fr.s[n];
  }
  return fr;
}

FrameSignals modulate_frame(std::span<const double> prev_x, double a_target,
                            std::span<const double> s, double f_prev, double delta_prev,
                            const OpticsParams& o, const MediumParams& m) {
  if (prev_x.size() != s.size()) {
    throw std::invalid_argument("modulate_frame: symbol count mismatch with previous frame");
  }
  FrameSignals fr;
  fr.a_target = a_target;
  fr.s.assign(s.begin(), s.end());
  fr.w.resize(s.size());
  fr.x.resize(s.size());

  std::vector<double> prev_sq(prev_x.size());
  for (std::size_t n = 0; n < prev_x.size(); ++n) {
    prev_sq[n] = prev_x[n] * prev_x[n];
  }
  std::vector<double> carrier(prev_x.size());
  const kernels::LinkGainCtx ctx = kernels::make_link_ctx(f_prev, delta_prev, o.alpha, m);
  kernels::active_backend().weight_batch(ctx, a_target, prev_sq.data(), fr.w.data(),
                                         carrier.data(), prev_sq.size());
  check_weights(fr.w);
  for (std::size_t n = 0; n < s.size(); ++n) {
    fr.x[n] = carrier[n] * fr.w[n] * fr.s[n];
  }
  return fr;
}

void transmit_and_receive(FrameSignals& frame, double delta, double alpha,
                          double noise_variance, const CounterRng& rng) {
  if (!(noise_variance >= 0.0)) {
    throw std::domain_error("transmit_and_receive: noise variance must be >= 0");
  }
  const double gain = std::sqrt(alpha * delta);
  const double sigma = std::sqrt(noise_variance);
  frame.noise.resize(frame.x.size());
  frame.y.resize(frame.x.size());
  for (std::size_t n = 0; n < frame.x.size(); ++n) {
    frame.noise[n] = sigma * rng.gaussian(n);
    frame.y[n] = gain * frame.x[n] + frame.noise[n];
  }
}

SimplificationReport verify_simplification(std::span<const FrameSignals> frames,
                                           std::span<const double> deltas, double alpha,
                                           double tol) {
  if (frames.size() != deltas.size()) {
    throw std::invalid_argument("verify_simplification: frame/delta count mismatch");
  }
  SimplificationReport rep;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const FrameSignals& fr = frames[i];
    const double gain = std::sqrt(alpha * deltas[i]);
    for (std::size_t n = 0; n < fr.y.size(); ++n) {
      const double expected = gain * fr.a_target * fr.s[n];
      const double actual = fr.y[n] - fr.noise[n];
      const double rel = std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
      rep.max_rel_error = std::max(rep.max_rel_error, rel);
    }
  }
  rep.ok = rep.max_rel_error <= tol;
  return rep;
}

SimulationRun simulate_link(const Scenario& scn, const HorizonResult& horizon,
                            std::size_t k_frames, std::size_t n_symbols, double safety,
                            double noise_variance, std::uint64_t seed) {
  if (k_frames == 0 || horizon.frames.size() < k_frames) {
    throw std::invalid_argument("simulate_link: horizon does not cover the requested frames");
  }
  if (!(safety > 0.0) || safety > 1.0) {
    throw std::domain_error("simulate_link: safety factor must be in (0, 1]");
  }

  const CounterRng root(seed);
  const CounterRng mu_stream = root.substream(0x6d75);  // distinct stream per purpose
  SimulationRun run;
  run.frames.reserve(k_frames);
  run.mu.resize(k_frames);
  run.deltas.resize(k_frames);

  double prev_a = 0.0;
  for (std::size_t i = 0; i < k_frames; ++i) {
    run.mu[i] = mu_stream.uniform(i, 0.3, 0.7);
    run.deltas[i] = horizon.frames[i].delta;

    const CounterRng sym_stream = root.substream(2 * i + 2);
    std::vector<double> s = draw_symbols(n_symbols, run.mu[i], sym_stream);
    s[0] = run.mu[i];  // pin the alphabet floor so worst-case bounds are exercised

    FrameSignals fr;
    if (i == 0) {
      const double a = safety * std::sqrt(horizon.p_t);
      fr = modulate_first_frame(horizon.p_t, a, s);
    } else {
      const double mu_prev = run.mu[i - 1];
      const double bound_sq = link_gain(prev_a * prev_a * mu_prev * mu_prev,
                                        horizon.frames[i].f_prev, horizon.frames[i - 1].delta,
                                        scn.optics, scn.medium);
      fr = modulate_frame(run.frames[i - 1].x, safety * std::sqrt(bound_sq), s,
                          horizon.frames[i].f_prev, horizon.frames[i - 1].delta, scn.optics,
                          scn.medium);
    }
    prev_a = fr.a_target;
    transmit_and_receive(fr, run.deltas[i], scn.optics.alpha, noise_variance,
                         root.substream(2 * i + 3));
    run.frames.push_back(std::move(fr));
  }
  run.report = verify_simplification(run.frames, run.deltas, scn.optics.alpha, 1e-12);
  return run;
}

}  // namespace rbcom
