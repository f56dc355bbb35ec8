// AVX2 + FMA variants of the batch kernels. This translation unit is the only
// one compiled with -mavx2 -mfma; it is referenced solely through the
// dispatcher, which checks CPU support first.
#ifdef RBCOM_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "rbcom/kernels/kernels.hpp"

namespace rbcom::kernels {

const Backend& avx2_backend_impl();

namespace {

// exp(x) for the solver's argument range (|x| well inside +-700):
// Cody-Waite reduction x = n ln2 + r, degree-13 Taylor on r, 2^n by exponent
// assembly. Error is within a couple of ulp, far inside the equivalence
// tolerance the tests enforce against the scalar reference.
inline __m256d vexp(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  n = _mm256_min_pd(n, _mm256_set1_pd(1023.0));
  n = _mm256_max_pd(n, _mm256_set1_pd(-1022.0));
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

// Four saturated-gain solves in lockstep; the iteration counts match the
// scalar reference so every lane follows the same control flow.
inline __m256d solve4(const GainSolveCtx& c, __m256d drive) {
  const __m256d half_d = _mm256_set1_pd(c.half_d);
  const __m256d target = _mm256_add_pd(_mm256_set1_pd(c.pump), drive);
  const __m256d half = _mm256_set1_pd(0.5);
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_set1_pd(c.u_max);
  for (int it = 0; it < 44; ++it) {
    const __m256d mid = _mm256_mul_pd(half, _mm256_add_pd(lo, hi));
    const __m256d phi =
        _mm256_fmadd_pd(drive, vexp(mid), _mm256_fmsub_pd(half_d, mid, target));
    const __m256d pos = _mm256_cmp_pd(phi, _mm256_setzero_pd(), _CMP_GT_OQ);
    hi = _mm256_blendv_pd(hi, mid, pos);
    lo = _mm256_blendv_pd(mid, lo, pos);
  }
  __m256d u = hi;
  for (int it = 0; it < 4; ++it) {
    const __m256d eu = vexp(u);
    const __m256d phi = _mm256_fmadd_pd(drive, eu, _mm256_fmsub_pd(half_d, u, target));
    const __m256d dphi = _mm256_fmadd_pd(drive, eu, half_d);
    u = _mm256_sub_pd(u, _mm256_div_pd(phi, dphi));
  }
  return vexp(u);
}

void gain_batch_avx2(const GainSolveCtx& c, const double* i_in, double* g, std::size_t n) {
  const __m256d scale = _mm256_set1_pd(c.drive_scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d drive = _mm256_mul_pd(scale, _mm256_loadu_pd(i_in + i));
    _mm256_storeu_pd(g + i, solve4(c, drive));
  }
  for (; i < n; ++i) {
    g[i] = solve_gain_from_drive(c, c.drive_scale * i_in[i]);
  }
}

void link_gain_batch_avx2(const LinkGainCtx& c, const double* x_sq, double* h, std::size_t n) {
  const __m256d through = _mm256_set1_pd(c.through);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d drive = _mm256_mul_pd(through, _mm256_loadu_pd(x_sq + i));
    _mm256_storeu_pd(h + i, _mm256_mul_pd(drive, solve4(c.gain, drive)));
  }
  for (; i < n; ++i) {
    const double drive = c.through * x_sq[i];
    h[i] = drive * solve_gain_from_drive(c.gain, drive);
  }
}

void weight_batch_avx2(const LinkGainCtx& c, double a_target, const double* prev_x_sq, double* w,
                       double* carrier, std::size_t n) {
  const __m256d through = _mm256_set1_pd(c.through);
  const __m256d target = _mm256_set1_pd(a_target);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d drive = _mm256_mul_pd(through, _mm256_loadu_pd(prev_x_sq + i));
    const __m256d amp = _mm256_sqrt_pd(_mm256_mul_pd(drive, solve4(c.gain, drive)));
    _mm256_storeu_pd(carrier + i, amp);
    _mm256_storeu_pd(w + i, _mm256_div_pd(target, amp));
  }
  for (; i < n; ++i) {
    const double drive = c.through * prev_x_sq[i];
    carrier[i] = std::sqrt(drive * solve_gain_from_drive(c.gain, drive));
    w[i] = a_target / carrier[i];
  }
}

}  // namespace

const Backend& avx2_backend_impl() {
  static const Backend b{"avx2", gain_batch_avx2, link_gain_batch_avx2, weight_batch_avx2};
  return b;
}

}  // namespace rbcom::kernels

#endif  // RBCOM_HAVE_AVX2
