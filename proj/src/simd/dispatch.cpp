#include <cstdlib>
#include <string>

#include "ghlab/errors.hpp"
#include "ghlab/simd/kernels.hpp"

namespace ghlab::simd {

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(GHLAB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(GHLAB_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa choose() {
  if (const char* env = std::getenv("GHLAB_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == isa_name(isa)) {
        return cpu_supports(isa) ? isa : Isa::Scalar;
      }
    }
  }
  const auto all = available_isas();
  return all.back();
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "?";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

const Kernels& kernels_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw InvalidArgument("SIMD variant not available: " + std::string(isa_name(isa)));
  }
  switch (isa) {
#if defined(GHLAB_HAVE_AVX2)
    case Isa::Avx2:
      return detail::avx2_kernels();
#endif
#if defined(GHLAB_HAVE_NEON)
    case Isa::Neon:
      return detail::neon_kernels();
#endif
    default:
      return detail::scalar_kernels();
  }
}

Isa active_isa() {
  static const Isa isa = choose();
  return isa;
}

const Kernels& active() { return kernels_for(active_isa()); }

}  // namespace ghlab::simd
