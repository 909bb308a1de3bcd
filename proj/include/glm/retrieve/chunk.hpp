#pragma once

#include <string>
#include <utility>
#include <vector>

namespace glm {

// Attribute pairs carry already-rendered values; pairs are sorted ascending
// by key. The node's type appears as the pair ("type", <node_type>).
using AttrPairs = std::vector<std::pair<std::string, std::string>>;

// A center node plus its top-k weighted 1-hop neighbours.
struct VertexChunk {
  std::string center;
  AttrPairs center_attrs;
  std::vector<std::pair<std::string, AttrPairs>> neighbours;
};

// Bit-exact two-line rendering:
//   [Node:<id> {k1:v1, k2:v2}]
//   [neighbours:(<id1> {k1:v1}),(<id2> {k1:v1})]
// An empty neighbour list renders as "[neighbours:]".
std::string render_chunk(const VertexChunk& chunk);

}  // namespace glm
