#pragma once

#include <cstddef>

namespace glm::simd {

// Inner product of two float vectors.
//
// All variants accumulate into eight independent lanes (lane j sums elements
// j, j+8, j+16, ...) and reduce with the fixed tree
// ((l0+l4)+(l2+l6)) + ((l1+l5)+(l3+l7)), so scalar and AVX2 results are
// identical floats, not merely close. Kernel TUs are built with
// -ffp-contract=off to keep the scalar path un-fused.
using DotFn = float (*)(const float*, const float*, std::size_t);

float dot_scalar(const float* a, const float* b, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
float dot_avx2(const float* a, const float* b, std::size_t n);
#endif

// Kernel picked once per process: AVX2 when the CPU supports it, scalar
// otherwise. GLM_SIMD=scalar|avx2 overrides for testing.
DotFn active_dot();
const char* active_dot_name();

inline float dot(const float* a, const float* b, std::size_t n) {
  return active_dot()(a, b, n);
}

}  // namespace glm::simd
