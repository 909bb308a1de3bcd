#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glm/attr.hpp"

namespace glm {

struct NodeRecord {
  std::string id;
  std::string node_type;
  std::map<std::string, AttrValue> attributes;
};

struct EdgeRecord {
  std::string src;
  std::string dst;
  std::string edge_type;
};

// In-memory property graph. Immutable after load; adjacency lists are kept
// sorted ascending by id so every traversal is canonical.
class PropertyGraph {
 public:
  static PropertyGraph load(const std::string& path);
  static PropertyGraph from_records(std::vector<NodeRecord> nodes,
                                    std::vector<EdgeRecord> edges);

  // Canonical JSONL: nodes ascending by id, then edges by (src, etype, dst).
  std::string serialize() const;
  void save(const std::string& path) const;

  bool has_node(const std::string& id) const;
  const NodeRecord& node(const std::string& id) const;  // throws UnknownNode

  // Out-neighbours of the given edge type, ascending by id.
  const std::vector<std::string>& neighbours(const std::string& id,
                                             const std::string& edge_type) const;
  std::int64_t degree(const std::string& id, const std::string& edge_type) const;

  // In-neighbours (edges pointing at id), ascending by id.
  const std::vector<std::string>& in_neighbours(const std::string& id,
                                                const std::string& edge_type) const;

  // Positionally aligned with ids; nullopt marks a missing attribute.
  std::vector<std::optional<AttrValue>> feature(const std::vector<std::string>& ids,
                                                const std::string& feature_name) const;

  // Incident edge count over all types and both directions.
  std::int64_t total_degree(const std::string& id) const;
  // Same, restricted to one edge type.
  std::int64_t total_degree(const std::string& id, const std::string& edge_type) const;

  // Distinct edge types incident to id (either direction), ascending.
  std::vector<std::string> incident_edge_types(const std::string& id) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& node_ids() const { return node_ids_; }  // ascending
  const std::vector<EdgeRecord>& edges() const { return edges_; }

 private:
  void build_indexes();

  std::map<std::string, NodeRecord> nodes_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::string> node_ids_;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> out_adj_;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> in_adj_;
  std::map<std::string, std::int64_t> total_degree_;
};

}  // namespace glm
