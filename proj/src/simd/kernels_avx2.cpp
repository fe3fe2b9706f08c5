#include <immintrin.h>

#include <cmath>

#include "ghlab/simd/kernels.hpp"

namespace ghlab::simd::detail {
namespace {

void word_traces(const MatrixTable& m, const std::int32_t* words, std::size_t word_count,
                 std::size_t len, double* traces) {
  std::size_t w = 0;
  for (; w + 4 <= word_count; w += 4) {
    const std::int32_t* w0 = words + w * len;
    __m256d a = _mm256_set1_pd(1.0);
    __m256d b = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd();
    __m256d d = _mm256_set1_pd(1.0);
    for (std::size_t k = 0; k < len; ++k) {
      const __m128i idx =
          _mm_set_epi32(w0[3 * len + k], w0[2 * len + k], w0[len + k], w0[k]);
      const __m256d la = _mm256_i32gather_pd(m.a, idx, 8);
      const __m256d lb = _mm256_i32gather_pd(m.b, idx, 8);
      const __m256d lc = _mm256_i32gather_pd(m.c, idx, 8);
      const __m256d ld = _mm256_i32gather_pd(m.d, idx, 8);
      const __m256d na = _mm256_add_pd(_mm256_mul_pd(a, la), _mm256_mul_pd(b, lc));
      const __m256d nb = _mm256_add_pd(_mm256_mul_pd(a, lb), _mm256_mul_pd(b, ld));
      const __m256d nc = _mm256_add_pd(_mm256_mul_pd(c, la), _mm256_mul_pd(d, lc));
      const __m256d nd = _mm256_add_pd(_mm256_mul_pd(c, lb), _mm256_mul_pd(d, ld));
      a = na;
      b = nb;
      c = nc;
      d = nd;
    }
    _mm256_storeu_pd(traces + w, _mm256_add_pd(a, d));
  }
  if (w < word_count) {
    scalar_kernels().word_traces(m, words + w * len, word_count - w, len, traces + w);
  }
}

void curl_centered(const double* p, const double* q, std::size_t nx, std::size_t ny, double hx,
                   double hy, double* out) {
  const double sx = 2 * hx;
  const double sy = 2 * hy;
  const __m256d vsx = _mm256_set1_pd(sx);
  const __m256d vsy = _mm256_set1_pd(sy);
  for (std::size_t j = 0; j < ny; ++j) {
    double* row = out + j * nx;
    if (j == 0 || j + 1 == ny || nx < 3) {
      for (std::size_t i = 0; i < nx; ++i) row[i] = 0;
      continue;
    }
    row[0] = 0;
    row[nx - 1] = 0;
    std::size_t i = 1;
    for (; i + 4 <= nx - 1; i += 4) {
      const std::size_t k = j * nx + i;
      const __m256d dq = _mm256_sub_pd(_mm256_loadu_pd(q + k + 1), _mm256_loadu_pd(q + k - 1));
      const __m256d dp =
          _mm256_sub_pd(_mm256_loadu_pd(p + k + nx), _mm256_loadu_pd(p + k - nx));
      _mm256_storeu_pd(out + k, _mm256_sub_pd(_mm256_div_pd(dq, vsx), _mm256_div_pd(dp, vsy)));
    }
    for (; i + 1 < nx; ++i) {
      const std::size_t k = j * nx + i;
      out[k] = (q[k + 1] - q[k - 1]) / sx - (p[k + nx] - p[k - nx]) / sy;
    }
  }
}

double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i));
    acc = _mm256_max_pd(v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = 0;
  for (double v : lanes) m = v > m ? v : m;
  for (; i < n; ++i) {
    const double v = std::abs(x[i]);
    m = v > m ? v : m;
  }
  return m;
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k{word_traces, curl_centered, max_abs};
  return k;
}

}  // namespace ghlab::simd::detail
