#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "glm/simd/dot.hpp"

namespace glm::simd {

float dot_avx2(const float* a, const float* b, std::size_t n) {
  __m256 acc = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 va = _mm256_loadu_ps(a + i);
    __m256 vb = _mm256_loadu_ps(b + i);
    // mul+add kept separate (no FMA): rounding must match the scalar kernel
    acc = _mm256_add_ps(acc, _mm256_mul_ps(va, vb));
  }
  if (i < n) {
    alignas(32) int maskbits[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    for (std::size_t j = 0; i + j < n; ++j) maskbits[j] = -1;
    __m256i mask = _mm256_load_si256(reinterpret_cast<const __m256i*>(maskbits));
    __m256 va = _mm256_maskload_ps(a + i, mask);
    __m256 vb = _mm256_maskload_ps(b + i, mask);
    acc = _mm256_add_ps(acc, _mm256_mul_ps(va, vb));
  }
  __m128 lo = _mm256_castps256_ps128(acc);       // lanes 0..3
  __m128 hi = _mm256_extractf128_ps(acc, 1);     // lanes 4..7
  __m128 s = _mm_add_ps(lo, hi);                 // (0+4, 1+5, 2+6, 3+7)
  __m128 sh = _mm_movehl_ps(s, s);               // (2+6, 3+7, ..)
  __m128 t = _mm_add_ps(s, sh);                  // (even, odd, ..)
  __m128 odd = _mm_shuffle_ps(t, t, 0x1);
  return _mm_cvtss_f32(_mm_add_ss(t, odd));
}

}  // namespace glm::simd

#endif
