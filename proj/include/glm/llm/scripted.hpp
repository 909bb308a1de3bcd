#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "glm/llm/provider.hpp"

namespace glm {

struct TraceEntry {
  std::string session;
  std::string agent;  // agent kind name
  int step = 0;
  std::string text;
};

// Replays a trace keyed by (session, agent kind, step); the deterministic
// test double. Missing keys are protocol errors, never silent fallbacks.
class ScriptedProvider : public Provider {
 public:
  explicit ScriptedProvider(std::vector<TraceEntry> entries);
  static ScriptedProvider load_jsonl(const std::string& path);

  CompletionResult complete(const CompletionRequest& req) override;

 private:
  std::map<std::tuple<std::string, std::string, int>, std::string> entries_;
};

}  // namespace glm
