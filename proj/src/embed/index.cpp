#include "glm/embed/index.hpp"

#include <algorithm>

#include "glm/error.hpp"

namespace glm {

namespace {

const std::string* usable_text(const NodeRecord& n, const Config& config) {
  std::string configured = config.text_field_for(n.node_type);
  const char* fallbacks[] = {"title", "name"};
  std::vector<std::string> candidates;
  if (!configured.empty()) candidates.push_back(configured);
  for (const char* f : fallbacks) candidates.emplace_back(f);
  for (const auto& key : candidates) {
    auto it = n.attributes.find(key);
    if (it == n.attributes.end()) continue;
    if (const auto* s = std::get_if<Scalar>(&it->second))
      if (const auto* str = std::get_if<std::string>(s)) return str;
  }
  return nullptr;
}

}  // namespace

VectorIndex VectorIndex::build(const PropertyGraph& graph, const Config& config) {
  VectorIndex idx;
  idx.dim_ = config.embed_dim;
  for (const auto& id : graph.node_ids()) {
    const std::string* text = usable_text(graph.node(id), config);
    if (text == nullptr) continue;
    idx.ids_.push_back(id);
    idx.texts_.push_back(*text);
    idx.embeddings_.push_back(embed(*text, idx.dim_));
  }
  return idx;
}

std::vector<ScoredNode> VectorIndex::nearest(const std::string& text, int k) const {
  if (ids_.empty()) throw EmptyIndex();
  Embedding q = embed(text, dim_);
  std::vector<ScoredNode> scored;
  scored.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i)
    scored.push_back({ids_[i], cosine(q, embeddings_[i])});
  auto better = [](const ScoredNode& a, const ScoredNode& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  };
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(), better);
  scored.resize(take);
  return scored;
}

std::optional<std::string> VectorIndex::indexed_text(const std::string& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return texts_[static_cast<std::size_t>(it - ids_.begin())];
}

}  // namespace glm
