#include <cmath>

#include "rbcom/kernels/kernels.hpp"

namespace rbcom::kernels {

GainSolveCtx make_gain_ctx(double f, const MediumParams& p) {
  GainSolveCtx c;
  c.drive_scale = p.s_g;
  c.pump = p.eta * p.p_in;
  c.half_d = saturation_intensity(f, p) * p.s_g * 0.5;
  c.u_max = c.pump / c.half_d;
  return c;
}

LinkGainCtx make_link_ctx(double f, double delta, double alpha, const MediumParams& p) {
  return {make_gain_ctx(f, p), (1.0 - alpha) * delta * delta};
}

double solve_gain_from_drive(const GainSolveCtx& c, double drive) {
  // phi(u) = drive*(e^u - 1) + half_d*u - pump is convex and increasing with
  // phi(0) = -pump < 0 and phi(u_max) >= 0, so the root is bracketed.
  double lo = 0.0;
  double hi = c.u_max;
  for (int it = 0; it < 44; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double phi = drive * (std::exp(mid) - 1.0) + c.half_d * mid - c.pump;
    if (phi > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Newton from the non-negative side of a convex function stays above the
  // root, so these polishing steps cannot escape the bracket.
  double u = hi;
  for (int it = 0; it < 4; ++it) {
    const double eu = std::exp(u);
    const double phi = drive * (eu - 1.0) + c.half_d * u - c.pump;
    u -= phi / (drive * eu + c.half_d);
  }
  return std::exp(u);
}

namespace {

void gain_batch_scalar(const GainSolveCtx& c, const double* i_in, double* g, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = solve_gain_from_drive(c, c.drive_scale * i_in[i]);
  }
}

void link_gain_batch_scalar(const LinkGainCtx& c, const double* x_sq, double* h, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double drive = c.through * x_sq[i];
    h[i] = drive * solve_gain_from_drive(c.gain, drive);
  }
}

void weight_batch_scalar(const LinkGainCtx& c, double a_target, const double* prev_x_sq,
                         double* w, double* carrier, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double drive = c.through * prev_x_sq[i];
    carrier[i] = std::sqrt(drive * solve_gain_from_drive(c.gain, drive));
    w[i] = a_target / carrier[i];
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", gain_batch_scalar, link_gain_batch_scalar,
                         weight_batch_scalar};
  return b;
}

}  // namespace rbcom::kernels
