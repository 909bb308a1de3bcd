#include "glm/retrieve/retriever.hpp"

#include <algorithm>

#include "glm/error.hpp"

namespace glm {

std::string render_chunk(const VertexChunk& chunk) {
  auto pairs = [](const AttrPairs& attrs) {
    std::string out = "{";
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      if (i) out += ", ";
      out += attrs[i].first;
      out += ":";
      out += attrs[i].second;
    }
    out += "}";
    return out;
  };

  std::string out = "[Node:" + chunk.center + " " + pairs(chunk.center_attrs) + "]";
  out += "\n[neighbours:";
  for (std::size_t i = 0; i < chunk.neighbours.size(); ++i) {
    if (i) out += ",";
    out += "(" + chunk.neighbours[i].first + " " + pairs(chunk.neighbours[i].second) + ")";
  }
  out += "]";
  return out;
}

namespace {

AttrPairs attr_pairs_of(const NodeRecord& n) {
  AttrPairs pairs;
  pairs.reserve(n.attributes.size() + 1);
  for (const auto& [k, v] : n.attributes) pairs.emplace_back(k, render_attr_value(v));
  pairs.emplace_back("type", n.node_type);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

std::string Retriever::retrieve_node(const std::string& text) {
  return retrieve_node_traced(text).id;
}

Retriever::Resolution Retriever::retrieve_node_traced(const std::string& text) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto hit = cache_.get(text)) {
    ++stats_.cache_hits;
    last_hit_ = true;
    return {*hit, true};
  }
  ++stats_.cache_misses;
  last_hit_ = false;
  std::vector<ScoredNode> top;
  try {
    top = index_.nearest(text, 1);
  } catch (const EmptyIndex& e) {
    throw RetrievalError(e.what());
  }
  ++stats_.index_probes;
  cache_.put(text, top.front().id);
  return {top.front().id, false};
}

std::optional<std::string> Retriever::cached_lookup(const std::string& text) {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.get(text);
}

VertexChunk Retriever::node_info(const std::string& id) const {
  const NodeRecord& center = graph_.node(id);

  // 1-hop neighbour set: union over edge types, both directions unless the
  // direction-sensitive mode is configured.
  std::vector<std::string> nbr_ids;
  for (const auto& etype : graph_.incident_edge_types(id)) {
    const auto& out = graph_.neighbours(id, etype);
    nbr_ids.insert(nbr_ids.end(), out.begin(), out.end());
    if (!config_.chunk_directed) {
      const auto& in = graph_.in_neighbours(id, etype);
      nbr_ids.insert(nbr_ids.end(), in.begin(), in.end());
    }
  }
  std::sort(nbr_ids.begin(), nbr_ids.end());
  nbr_ids.erase(std::unique(nbr_ids.begin(), nbr_ids.end()), nbr_ids.end());

  struct Weighted {
    std::string id;
    std::int64_t weight;
  };
  std::vector<Weighted> weighted;
  weighted.reserve(nbr_ids.size());
  for (auto& nid : nbr_ids) {
    std::int64_t w = config_.chunk_weight_mode == ChunkWeightMode::TotalDegree
                         ? graph_.total_degree(nid)
                         : [&] {
                             std::int64_t best = 0;
                             for (const auto& t : graph_.incident_edge_types(nid))
                               best = std::max(best, graph_.total_degree(nid, t));
                             return best;
                           }();
    weighted.push_back({std::move(nid), w});
  }
  std::stable_sort(weighted.begin(), weighted.end(), [](const Weighted& a, const Weighted& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.id < b.id;
  });
  if (weighted.size() > static_cast<std::size_t>(std::max(config_.chunk_k, 0)))
    weighted.resize(static_cast<std::size_t>(std::max(config_.chunk_k, 0)));

  VertexChunk chunk;
  chunk.center = id;
  chunk.center_attrs = attr_pairs_of(center);
  for (const auto& w : weighted)
    chunk.neighbours.emplace_back(w.id, attr_pairs_of(graph_.node(w.id)));
  return chunk;
}

std::string Retriever::node_info_rendered(const std::string& id) const {
  try {
    return render_chunk(node_info(id));
  } catch (const UnknownNode& e) {
    throw RetrievalError(e.what());
  }
}

std::vector<std::optional<AttrValue>> Retriever::node_feature(
    const std::vector<std::string>& ids, const std::string& feature_name) const {
  try {
    return graph_.feature(ids, feature_name);
  } catch (const UnknownNode& e) {
    throw RetrievalError(e.what());
  }
}

std::int64_t Retriever::node_degree(const std::string& id, const std::string& edge_type) const {
  try {
    return graph_.degree(id, edge_type);
  } catch (const UnknownNode& e) {
    throw RetrievalError(e.what());
  }
}

std::vector<std::string> Retriever::neighbour_check(const std::string& id,
                                                    const std::string& edge_type) const {
  try {
    return graph_.neighbours(id, edge_type);
  } catch (const UnknownNode& e) {
    throw RetrievalError(e.what());
  }
}

RetrieverStats Retriever::stats() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return stats_;
}

bool Retriever::last_was_cache_hit() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return last_hit_;
}

}  // namespace glm
