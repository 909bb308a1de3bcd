#pragma once

#include <string>

#include "glm/config.hpp"
#include "glm/llm/provider.hpp"

namespace glm {

// Heuristic synthetic agent: answers the two workload question shapes
// ("What is the <attr> of <entity>?" and "Which item is linked from all
// of: ...") by parsing its own prompts, so benchmark runs close the loop
// fully offline. It never touches the graph directly.
class RuleProvider : public Provider {
 public:
  struct Options {
    ChunkingMode chunking = ChunkingMode::Vertex;
    std::string link_edge_type = "linked";
  };

  explicit RuleProvider(Options options = {}) : options_(options) {}

  CompletionResult complete(const CompletionRequest& req) override;

 private:
  std::string classify(const std::string& prompt) const;
  std::string reason(const std::string& prompt) const;
  std::string act(const std::string& prompt) const;
  std::string baseline_thought(const std::string& prompt) const;
  std::string baseline_action(const std::string& prompt) const;

  Options options_;
};

}  // namespace glm
