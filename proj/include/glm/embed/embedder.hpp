#pragma once

#include <string>
#include <vector>

namespace glm {

// Unit-length embedding. Storage is zero-padded to a multiple of 8 floats so
// the dot kernels see whole lanes; dim() is the logical dimension.
class Embedding {
 public:
  Embedding() = default;
  Embedding(std::vector<float> values, int dim) : values_(std::move(values)), dim_(dim) {}

  int dim() const { return dim_; }
  const float* data() const { return values_.data(); }
  std::size_t padded_size() const { return values_.size(); }
  float operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<float> values_;
  int dim_ = 0;
};

// Character-trigram feature hashing into d buckets, then L2 normalization.
// Deterministic by construction; texts shorter than 3 chars (and any text
// hashing to the zero vector) map to the first basis vector.
Embedding embed(const std::string& text, int dim = 64);

// Cosine similarity of two unit embeddings (a plain dot product).
float cosine(const Embedding& a, const Embedding& b);

}  // namespace glm
