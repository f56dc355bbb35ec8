#include "rbcom/link_budget.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rbcom/kernels/kernels.hpp"

namespace rbcom {

double link_loss(double range, const OpticsParams& o) {
  const double pi = std::numbers::pi;
  const double waist_area = o.lambda * o.lambda / (pi * o.phi * o.phi);
  const double spread_area = pi * o.phi * o.phi * range * range;
  return 1.0 - std::exp(-2.0 * o.s_r / (waist_area + spread_area));
}

double link_loss(const Vec3& q, const OpticsParams& o) { return link_loss(norm(q), o); }

double link_gain(double x_sq, double f, double delta, const OpticsParams& o,
                 const MediumParams& p) {
  if (!(x_sq >= 0.0) || !std::isfinite(x_sq)) {
    throw std::domain_error("link_gain: circulating power must be finite and non-negative");
  }
  const kernels::LinkGainCtx c = kernels::make_link_ctx(f, delta, o.alpha, p);
  const double drive = c.through * x_sq;
  return drive * kernels::solve_gain_from_drive(c.gain, drive);
}

double threshold_power(double delta0, const OpticsParams& o, const MediumParams& p) {
  if (!(delta0 > 0.0) || !(delta0 <= 1.0)) {
    throw std::domain_error("threshold_power: capture fraction must be in (0, 1]");
  }
  const double round_trip_log_loss = 2.0 * std::log(delta0) + std::log(1.0 - o.alpha);
  return -round_trip_log_loss * saturation_intensity(p.f0, p) * p.s_g / (2.0 * p.eta);
}

double stable_power(double delta0, const OpticsParams& o, const MediumParams& p) {
  if (p.p_in <= threshold_power(delta0, o, p)) {
    throw below_threshold_error("stable_power: pump power at or below oscillation threshold");
  }
  // Above threshold h(x) - x is positive for small x and negative for large x
  // (the saturated gain falls below the round-trip loss), so the nonzero fixed
  // point is bracketed; expand upward then bisect.
  const auto excess = [&](double x) { return link_gain(x, p.f0, delta0, o, p) - x; };
  double lo = 1e-12;
  double hi = std::max(1.0, 2.0 * p.p_in);
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw std::runtime_error("stable_power: failed to bracket the fixed point");
    }
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rbcom
