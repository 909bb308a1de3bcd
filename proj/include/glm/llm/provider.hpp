#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "glm/agents/kind.hpp"

namespace glm {

struct CompletionRequest {
  std::string prompt;
  AgentKind agent = AgentKind::Classification;
  std::string session_id;
  int step = 0;  // per (session, agent) invocation index
  std::function<void(std::string_view)> on_increment;  // optional stream sink
};

struct Increment {
  std::string text;
  double wall_ms = 0.0;  // wall-clock providers only
};

struct CompletionResult {
  std::string text;
  std::int64_t tokens_in = 0;   // tokenize(prompt) under the shared tokenizer
  std::int64_t tokens_out = 0;  // tokenize(text)
  std::vector<Increment> increments;  // concatenation equals text
  std::int64_t remote_reported_tokens = -1;  // recorded, never used in metrics
};

// Completion provider. Implementations must stream at least line-granular
// increments and tolerate concurrent complete() calls from distinct sessions.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual CompletionResult complete(const CompletionRequest& req) = 0;
  virtual bool deterministic() const { return true; }
};

// Splits text into line-granular increments (each keeps its newline), feeds
// the sink, and fills local token counts. Shared by the offline providers.
CompletionResult finalize_completion(const CompletionRequest& req, std::string text);

}  // namespace glm
