#pragma once

// Hot loops with a scalar reference and per-ISA variants. All variants
// perform the same IEEE operations in the same order, so results are
// bit-identical (the build disables fp contraction).

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ghlab::simd {

enum class Isa { Scalar, Avx2, Neon };

/// 2x2 matrices stored as four parallel arrays.
struct MatrixTable {
  const double* a;
  const double* b;
  const double* c;
  const double* d;
};

struct Kernels {
  /// traces[w] = tr(M[words[w*len]] * ... * M[words[w*len+len-1]]).
  void (*word_traces)(const MatrixTable& letters, const std::int32_t* words,
                      std::size_t word_count, std::size_t len, double* traces);

  /// out = dq/dx - dp/dy by centered differences on an nx-by-ny row-major
  /// grid (x fastest). Boundary nodes are set to 0.
  void (*curl_centered)(const double* p, const double* q, std::size_t nx, std::size_t ny,
                        double hx, double hy, double* out);

  /// max |x_i|, 0 for an empty range.
  double (*max_abs)(const double* x, std::size_t n);
};

const Kernels& kernels_for(Isa isa);

/// Variants compiled in and supported by the running CPU.
std::vector<Isa> available_isas();

/// The variant used by the library. Chosen once: the best available ISA,
/// unless GHLAB_SIMD=scalar|avx2|neon requests a specific one.
Isa active_isa();
const Kernels& active();

std::string_view isa_name(Isa isa);

namespace detail {
const Kernels& scalar_kernels();
#if defined(GHLAB_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif
#if defined(GHLAB_HAVE_NEON)
const Kernels& neon_kernels();
#endif
}  // namespace detail

}  // namespace ghlab::simd
