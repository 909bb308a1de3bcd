#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glm/config.hpp"
#include "glm/graph/graph_store.hpp"

namespace glm {

struct Question {
  std::string id;
  std::string text;
  bool deterministic = true;
  int required_facts = 1;  // distinct nodes a non-deterministic answer needs
  std::string expected_answer;
};

struct Workload {
  std::vector<Question> questions;

  std::string serialize_jsonl() const;
  static Workload load_jsonl(const std::string& path);
  void save_jsonl(const std::string& path) const;
};

// Synthetic desk-scale item graph. Sources link into shared targets in
// disjoint clusters (noise edges only touch private leaf nodes), so the
// intersection of a cluster's out-neighbours is exactly its target.
struct SynthGraphOptions {
  std::uint64_t seed = 7;
  int nodes = 500;
  std::string link_edge_type = "linked";
};
PropertyGraph synth_graph(const SynthGraphOptions& options);

// Deterministic under (seed, n, nondet_ratio, graph). Deterministic
// questions instantiate "What is the <attr> of <title>?"; non-deterministic
// ones need the common link target of 2..4 source nodes. Every question is
// validated against the graph (unique retrieval, unique intersection) before
// it is emitted. Throws GraphTooSmall when the graph cannot supply n
// questions.
Workload generate_workload(std::uint64_t seed, int n, double nondet_ratio,
                           const PropertyGraph& graph, const Config& config);

}  // namespace glm
