#pragma once

#include <optional>
#include <string>

#include "glm/config.hpp"
#include "glm/llm/provider.hpp"
#include "glm/retrieve/retriever.hpp"

namespace glm {

struct TimingModel {
  TimingMode mode = TimingMode::Simulated;
  double c_prefill = 1.0;        // cost units per computed prompt token
  double c_decode = 4.0;         // cost units per generated token
  double retrieval_latency = 120.0;  // cost units per uncached RetrieveNode
};

struct PipelineTrace {
  double prefill_span = 0.0;    // P
  double decode_to_call = 0.0;  // D1: decode up to and including the call line
  double retrieval_span = 0.0;  // R
  double decode_rest = 0.0;     // D2
  bool overlapped = false;
  double total = 0.0;
  bool call_detected = false;
  bool cache_hit = false;
  std::string query;
  std::string resolved_id;
};

// Latency laws (Simulated mode, substitution cost 0).
inline double pipelined_total(double p, double d1, double r, double d2) {
  return p + d1 + (r > d2 ? r : d2);
}
inline double serial_total(double p, double d1, double r, double d2) {
  return p + d1 + r + d2;
}

struct ActionRun {
  std::string response_text;  // provider output after call-site substitution
  CompletionResult completion;
  PipelineTrace trace;
};

// Streams the action response, watching decoded lines for the first complete
// RetrieveNode("...") call. On a retrieval-cache hit the cached id is reused
// directly; on a miss the retrieval overlaps the remaining decode (pipelined)
// or extends it (serial). The resolved id replaces the call site, so the
// returned snippet parses without that RetrieveNode call. prefill_cost_tokens
// is the number of prompt tokens actually computed (cache-aware callers pass
// their prefill report's count).
ActionRun run_action_pipelined(const CompletionRequest& req, Provider& provider,
                               Retriever& retriever, const TimingModel& tm,
                               std::size_t prefill_cost_tokens);

ActionRun run_action_serial(const CompletionRequest& req, Provider& provider,
                            Retriever& retriever, const TimingModel& tm,
                            std::size_t prefill_cost_tokens);

}  // namespace glm
