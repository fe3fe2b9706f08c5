#include <arm_neon.h>

#include <cmath>

#include "ghlab/simd/kernels.hpp"

namespace ghlab::simd::detail {
namespace {

void word_traces(const MatrixTable& m, const std::int32_t* words, std::size_t word_count,
                 std::size_t len, double* traces) {
  std::size_t w = 0;
  for (; w + 2 <= word_count; w += 2) {
    const std::int32_t* w0 = words + w * len;
    const std::int32_t* w1 = w0 + len;
    float64x2_t a = vdupq_n_f64(1.0);
    float64x2_t b = vdupq_n_f64(0.0);
    float64x2_t c = vdupq_n_f64(0.0);
    float64x2_t d = vdupq_n_f64(1.0);
    for (std::size_t k = 0; k < len; ++k) {
      const std::int32_t i0 = w0[k], i1 = w1[k];
      const float64x2_t la = vsetq_lane_f64(m.a[i1], vdupq_n_f64(m.a[i0]), 1);
      const float64x2_t lb = vsetq_lane_f64(m.b[i1], vdupq_n_f64(m.b[i0]), 1);
      const float64x2_t lc = vsetq_lane_f64(m.c[i1], vdupq_n_f64(m.c[i0]), 1);
      const float64x2_t ld = vsetq_lane_f64(m.d[i1], vdupq_n_f64(m.d[i0]), 1);
      const float64x2_t na = vaddq_f64(vmulq_f64(a, la), vmulq_f64(b, lc));
      const float64x2_t nb = vaddq_f64(vmulq_f64(a, lb), vmulq_f64(b, ld));
      const float64x2_t nc = vaddq_f64(vmulq_f64(c, la), vmulq_f64(d, lc));
      const float64x2_t nd = vaddq_f64(vmulq_f64(c, lb), vmulq_f64(d, ld));
      a = na;
      b = nb;
      c = nc;
      d = nd;
    }
    vst1q_f64(traces + w, vaddq_f64(a, d));
  }
  if (w < word_count) {
    scalar_kernels().word_traces(m, words + w * len, word_count - w, len, traces + w);
  }
}

void curl_centered(const double* p, const double* q, std::size_t nx, std::size_t ny, double hx,
                   double hy, double* out) {
  const double sx = 2 * hx;
  const double sy = 2 * hy;
  const float64x2_t vsx = vdupq_n_f64(sx);
  const float64x2_t vsy = vdupq_n_f64(sy);
  for (std::size_t j = 0; j < ny; ++j) {
    double* row = out + j * nx;
    if (j == 0 || j + 1 == ny || nx < 3) {
      for (std::size_t i = 0; i < nx; ++i) row[i] = 0;
      continue;
    }
    row[0] = 0;
    row[nx - 1] = 0;
    std::size_t i = 1;
    for (; i + 2 <= nx - 1; i += 2) {
      const std::size_t k = j * nx + i;
      const float64x2_t dq = vsubq_f64(vld1q_f64(q + k + 1), vld1q_f64(q + k - 1));
      const float64x2_t dp = vsubq_f64(vld1q_f64(p + k + nx), vld1q_f64(p + k - nx));
      vst1q_f64(out + k, vsubq_f64(vdivq_f64(dq, vsx), vdivq_f64(dp, vsy)));
    }
    for (; i + 1 < nx; ++i) {
      const std::size_t k = j * nx + i;
      out[k] = (q[k + 1] - q[k - 1]) / sx - (p[k + nx] - p[k - nx]) / sy;
    }
  }
}

double max_abs(const double* x, std::size_t n) {
  double m = 0;
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
      const float64x2_t v = vabsq_f64(vld1q_f64(x + i));
      // keep NaNs out of the accumulator, matching the scalar comparison
      acc = vbslq_f64(vcgtq_f64(v, acc), v, acc);
    }
    const double l0 = vgetq_lane_f64(acc, 0), l1 = vgetq_lane_f64(acc, 1);
    m = l0 > m ? l0 : m;
    m = l1 > m ? l1 : m;
  }
  for (; i < n; ++i) {
    const double v = std::abs(x[i]);
    m = v > m ? v : m;
  }
  return m;
}

}  // namespace

const Kernels& neon_kernels() {
  static const Kernels k{word_traces, curl_centered, max_abs};
  return k;
}

}  // namespace ghlab::simd::detail
