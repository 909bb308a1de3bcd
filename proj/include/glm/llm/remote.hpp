#pragma once

#include <string>

#include "glm/config.hpp"
#include "glm/llm/provider.hpp"

namespace glm {

// JSON-over-HTTP chat-completion client (messages array, streamed chunk
// events). Marked nondeterministic; excluded from acceptance runs. Token
// counts still come from the shared tokenizer; remote-reported usage is
// recorded separately and never used in metrics.
class RemoteProvider : public Provider {
 public:
  explicit RemoteProvider(const Config& config);

  CompletionResult complete(const CompletionRequest& req) override;
  bool deterministic() const override { return false; }

 private:
  std::string endpoint_;
  std::string model_;
  std::string api_key_;
  std::int64_t timeout_ms_;
};

}  // namespace glm
