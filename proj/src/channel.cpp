#include "rbcom/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbcom {

double noise_density_w_per_hz(double dbm_per_hz) {
  return 1e-3 * std::pow(10.0, dbm_per_hz / 10.0);
}

double capacity_branch_snr() {
  const double pe = std::numbers::pi * std::numbers::e;
  const double t = 1.0 - 2.0 / pe;
  return 8.0 / (pe * t * t);
}

double capacity_approx(double p, double b, double n0) {
  if (!(p >= 0.0) || !(b > 0.0) || !(n0 > 0.0)) {
    throw std::domain_error("capacity_approx: power, bandwidth and noise must be positive");
  }
  const double snr = p / (n0 * b);
  if (snr > capacity_branch_snr()) {
    const double pe = std::numbers::pi * std::numbers::e;
    return b * std::log2(1.0 + std::sqrt(2.0 * p / (pe * n0 * b)));
  }
  return 0.5 * b * std::log2(1.0 + snr);
}

double capacity_branch_jump(double b, double n0) {
  const double pe = std::numbers::pi * std::numbers::e;
  const double snr = capacity_branch_snr();
  const double p = snr * n0 * b;
  const double high = b * std::log2(1.0 + std::sqrt(2.0 * p / (pe * n0 * b)));
  const double low = 0.5 * b * std::log2(1.0 + snr);
  return high - low;
}

double peak_power(double a_sq, double mu, double delta, double alpha) {
  const double depth = 1.0 - mu;
  return depth * depth * alpha * delta * a_sq / 4.0;
}

double received_symbol_mean(double a, double s, double delta, double alpha) {
  return std::sqrt(alpha * delta) * a * s;
}

double max_next_a_sq(const FrameChannel& prev, const OpticsParams& o, const MediumParams& p) {
  if (prev.k == 0) {
    return stable_power(prev.delta, o, p);
  }
  return link_gain(prev.a_sq * prev.mu * prev.mu, prev.f, prev.delta, o, p);
}

}  // namespace rbcom
