#include <cmath>

#include "ghlab/simd/kernels.hpp"

namespace ghlab::simd::detail {
namespace {

void word_traces(const MatrixTable& m, const std::int32_t* words, std::size_t word_count,
                 std::size_t len, double* traces) {
  for (std::size_t w = 0; w < word_count; ++w) {
    const std::int32_t* word = words + w * len;
    double a = 1, b = 0, c = 0, d = 1;
    for (std::size_t k = 0; k < len; ++k) {
      const std::int32_t l = word[k];
      const double la = m.a[l], lb = m.b[l], lc = m.c[l], ld = m.d[l];
      const double na = a * la + b * lc;
      const double nb = a * lb + b * ld;
      const double nc = c * la + d * lc;
      const double nd = c * lb + d * ld;
      a = na;
      b = nb;
      c = nc;
      d = nd;
    }
    traces[w] = a + d;
  }
}

void curl_centered(const double* p, const double* q, std::size_t nx, std::size_t ny, double hx,
                   double hy, double* out) {
  const double sx = 2 * hx;
  const double sy = 2 * hy;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = j * nx + i;
      if (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny) {
        out[k] = 0;
        continue;
      }
      out[k] = (q[k + 1] - q[k - 1]) / sx - (p[k + nx] - p[k - nx]) / sy;
    }
  }
}

double max_abs(const double* x, std::size_t n) {
  double m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::abs(x[i]);
    m = v > m ? v : m;
  }
  return m;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{word_traces, curl_centered, max_abs};
  return k;
}

}  // namespace ghlab::simd::detail
