#include "rbcom/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rbcom/constants.hpp"

namespace rbcom {

Vec3 advance_position(const Vec3& q, const Vec3& v) {
  return q + (2.0 * norm(q) / speed_of_light) * v;
}

double direction_cosine(const Vec3& q, const Vec3& v) {
  const double nq = norm(q);
  const double nv = norm(v);
  if (nq == 0.0 || nv == 0.0) {
    throw std::domain_error("direction_cosine: zero-norm vector");
  }
  return std::clamp(dot(q, v) / (nq * nv), -1.0, 1.0);
}

double next_frequency(double f_prev, double speed, double cos_theta) {
  return f_prev * (1.0 - 2.0 * speed * cos_theta / speed_of_light);
}

double round_duration(const Vec3& q_prev) { return 2.0 * norm(q_prev) / speed_of_light; }

std::uint64_t symbols_per_frame(double b1, const Vec3& q0) {
  const double n = std::floor(4.0 * b1 * norm(q0) / speed_of_light);
  if (!(n >= 1.0)) {
    throw std::domain_error("symbols_per_frame: bandwidth/range too small for one symbol");
  }
  return static_cast<std::uint64_t>(n);
}

double frame_bandwidth(std::uint64_t n_sym, const Vec3& q_prev) {
  const double nq = norm(q_prev);
  if (nq == 0.0) {
    throw std::domain_error("frame_bandwidth: zero range");
  }
  return static_cast<double>(n_sym) * speed_of_light / (4.0 * nq);
}

}  // namespace rbcom
