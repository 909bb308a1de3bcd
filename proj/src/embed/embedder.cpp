#include "glm/embed/embedder.hpp"

#include <cmath>
#include <string_view>

#include "glm/simd/dot.hpp"
#include "glm/util/fnv.hpp"

namespace glm {

namespace {

std::size_t padded(int dim) {
  return (static_cast<std::size_t>(dim) + 7) / 8 * 8;
}

}  // namespace

Embedding embed(const std::string& text, int dim) {
  std::vector<float> v(padded(dim), 0.0f);
  if (text.size() >= 3) {
    for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
      std::uint64_t h = fnv1a(std::string_view(text).substr(i, 3));
      v[h % static_cast<std::uint64_t>(dim)] += 1.0f;
    }
  }
  double sumsq = 0.0;
  for (float x : v) sumsq += static_cast<double>(x) * x;
  if (sumsq == 0.0) {
    v[0] = 1.0f;
    return Embedding(std::move(v), dim);
  }
  float inv = static_cast<float>(1.0 / std::sqrt(sumsq));
  for (float& x : v) x *= inv;
  return Embedding(std::move(v), dim);
}

float cosine(const Embedding& a, const Embedding& b) {
  return simd::dot(a.data(), b.data(), a.padded_size());
}

}  // namespace glm
