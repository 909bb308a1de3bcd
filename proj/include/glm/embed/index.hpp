#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glm/config.hpp"
#include "glm/embed/embedder.hpp"
#include "glm/graph/graph_store.hpp"

namespace glm {

struct ScoredNode {
  std::string id;
  float score;
  bool operator==(const ScoredNode&) const = default;
};

// Exact nearest-neighbour index over one embedded text attribute per node.
// Entries are held ascending by id; queries are full scans, so results are
// exact and insertion order can never matter.
class VectorIndex {
 public:
  // Indexes every node with a usable text attribute. The attribute is the
  // configured text field for the node's type, else "title", else "name";
  // nodes with none of these (or a non-string value) are skipped.
  static VectorIndex build(const PropertyGraph& graph, const Config& config);

  // Exact top-k by cosine descending, ties ascending by id. k larger than the
  // index returns every entry, ranked. Throws EmptyIndex.
  std::vector<ScoredNode> nearest(const std::string& text, int k) const;

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  int dim() const { return dim_; }

  // Indexed text for a node id, when present (used by tests and tools).
  std::optional<std::string> indexed_text(const std::string& id) const;

 private:
  std::vector<std::string> ids_;    // ascending
  std::vector<std::string> texts_;  // aligned with ids_
  std::vector<Embedding> embeddings_;
  int dim_ = 64;
};

}  // namespace glm
