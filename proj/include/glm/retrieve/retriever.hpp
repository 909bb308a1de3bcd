#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "glm/config.hpp"
#include "glm/embed/index.hpp"
#include "glm/graph/graph_store.hpp"
#include "glm/retrieve/chunk.hpp"
#include "glm/retrieve/lru_cache.hpp"

namespace glm {

struct RetrieverStats {
  std::int64_t cache_hits = 0;
  std::int64_t cache_misses = 0;
  std::int64_t index_probes = 0;
};

// The Graph RAG retriever: text-to-node resolution with a bounded LRU result
// cache, vertex-chunk construction, and thin typed lookups over the graph.
// Graph and index are shared read-only; the cache is the only mutable state.
class Retriever {
 public:
  Retriever(const PropertyGraph& graph, const VectorIndex& index, const Config& config)
      : graph_(graph),
        index_(index),
        config_(config),
        cache_(config.retrieval_cache_capacity) {}

  struct Resolution {
    std::string id;
    bool cache_hit;
  };

  // Cache hit returns the mapped id without touching the index; miss runs an
  // exact top-1 search and inserts the winner.
  std::string retrieve_node(const std::string& text);
  Resolution retrieve_node_traced(const std::string& text);

  // Peeks the cache without recording a hit or probing (pipeline stage 1).
  std::optional<std::string> cached_lookup(const std::string& text);

  VertexChunk node_info(const std::string& id) const;
  std::string node_info_rendered(const std::string& id) const;

  std::vector<std::optional<AttrValue>> node_feature(const std::vector<std::string>& ids,
                                                     const std::string& feature_name) const;
  std::int64_t node_degree(const std::string& id, const std::string& edge_type) const;
  std::vector<std::string> neighbour_check(const std::string& id,
                                           const std::string& edge_type) const;

  RetrieverStats stats() const;
  bool last_was_cache_hit() const;

  const PropertyGraph& graph() const { return graph_; }

 private:
  const PropertyGraph& graph_;
  const VectorIndex& index_;
  Config config_;

  mutable std::mutex mutex_;
  LruCache<std::string, std::string> cache_;
  RetrieverStats stats_;
  bool last_hit_ = false;
};

}  // namespace glm
