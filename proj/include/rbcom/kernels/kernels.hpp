#pragma once

#include <cstddef>
#include <string_view>

#include "rbcom/gain_medium.hpp"

// Batch numeric kernels: a scalar reference implementation plus an AVX2
// variant selected at runtime. Both solve the same fixed-iteration algorithm;
// equivalence is enforced by tests at tight tolerance.

namespace rbcom::kernels {

// Per-carrier working set for the saturated-gain root solve. "drive" is the
// circulating power seen by the medium, s_g * i_in [W].
struct GainSolveCtx {
  double drive_scale;  // s_g [m^2], converts intensity to drive power
  double pump;         // eta * p_in [W]
  double half_d;       // Is(f) * s_g / 2 [W]
  double u_max;        // pump / half_d = 2 g0 l, log of the small-signal gain
};

GainSolveCtx make_gain_ctx(double f, const MediumParams& p);

// Round-trip context: gain plus the passive power throughput
// (1 - alpha) * delta^2 of one circulation.
struct LinkGainCtx {
  GainSolveCtx gain;
  double through;
};

LinkGainCtx make_link_ctx(double f, double delta, double alpha, const MediumParams& p);

// Scalar core: root of drive*(e^u - 1) + half_d*u - pump in u = ln G,
// by 44 bisections then 4 monotone Newton steps. Returns G.
double solve_gain_from_drive(const GainSolveCtx& c, double drive);

struct Backend {
  const char* name;
  // G for each input intensity [W/m^2].
  void (*gain_batch)(const GainSolveCtx&, const double* i_in, double* g, std::size_t n);
  // One-round output power h = through * x_sq * G(through * x_sq / s_g) for
  // each input power x_sq [W].
  void (*link_gain_batch)(const LinkGainCtx&, const double* x_sq, double* h, std::size_t n);
  // carrier[i] = sqrt(h(prev_x_sq[i])), w[i] = a_target / carrier[i].
  void (*weight_batch)(const LinkGainCtx&, double a_target, const double* prev_x_sq, double* w,
                       double* carrier, std::size_t n);
};

const Backend& scalar_backend();
bool avx2_supported();           // compiled in and the CPU reports AVX2+FMA
const Backend& active_backend();  // honours RBCOM_KERNELS=scalar|avx2, else auto

// Force a backend by name ("scalar" or "avx2"); throws std::runtime_error if
// unknown or unsupported. Intended for tests and benchmarking.
void set_backend(std::string_view name);

}  // namespace rbcom::kernels
