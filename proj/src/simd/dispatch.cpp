#include <cstdlib>
#include <cstring>

#include "glm/simd/dot.hpp"

namespace glm::simd {

namespace {

struct Selected {
  DotFn fn;
  const char* name;
};

Selected select() {
  const char* forced = std::getenv("GLM_SIMD");
#if defined(__x86_64__) || defined(_M_X64)
  if (forced != nullptr) {
    if (std::strcmp(forced, "scalar") == 0) return {dot_scalar, "scalar"};
    if (std::strcmp(forced, "avx2") == 0) return {dot_avx2, "avx2"};
  }
  if (__builtin_cpu_supports("avx2")) return {dot_avx2, "avx2"};
#else
  (void)forced;
#endif
  return {dot_scalar, "scalar"};
}

const Selected& selected() {
  static const Selected s = select();
  return s;
}

}  // namespace

DotFn active_dot() { return selected().fn; }

const char* active_dot_name() { return selected().name; }

}  // namespace glm::simd
