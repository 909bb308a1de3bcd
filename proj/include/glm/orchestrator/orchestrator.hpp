#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "glm/agents/notebook.hpp"
#include "glm/agents/templates.hpp"
#include "glm/config.hpp"
#include "glm/error.hpp"
#include "glm/kvcache/cache.hpp"
#include "glm/llm/provider.hpp"
#include "glm/pipeline/pipeline.hpp"
#include "glm/retrieve/retriever.hpp"

namespace glm {

struct TraceRecord {
  double timestamp = 0.0;  // session clock after this record
  char actor = '?';        // C, R, A agents; V = retriever
  std::uint64_t prompt_hash = 0;
  std::int64_t tokens_in = 0;
  std::int64_t tokens_out = 0;
  double span = 0.0;  // critical-path latency contribution
  std::size_t cached_tokens = 0;
  std::size_t computed_tokens = 0;  // includes the partial tail
  std::string outcome;
};

struct SessionTrace {
  std::vector<TraceRecord> records;

  std::int64_t total_tokens() const {  // Tok(tau)
    std::int64_t t = 0;
    for (const auto& r : records) t += r.tokens_in + r.tokens_out;
    return t;
  }
  double total_latency() const {  // Lat(tau)
    double t = 0;
    for (const auto& r : records) t += r.span;
    return t;
  }
  std::map<char, std::int64_t> tokens_by_actor() const {
    std::map<char, std::int64_t> out;
    for (const auto& r : records) out[r.actor] += r.tokens_in + r.tokens_out;
    return out;
  }
};

enum class SessionState { Classifying, DirectAction, Reasoning, Acting, Done, Failed, Interrupted };

struct Session {
  std::string id;
  std::string question;
  SessionState state = SessionState::Classifying;
  SessionState resume_state = SessionState::Classifying;
  bool baseline = false;
  Notebook notebook;
  std::string history;  // baseline full-context transcript
  int rounds = 0;       // completed reasoning rounds
  std::string pending_task;
  std::string answer;
  std::optional<ErrorKind> error;
  SessionTrace trace;
  std::map<std::string, int> agent_steps;  // next step index per agent kind
  int timeout_retries_left = 1;
  double clock = 0.0;  // simulated session time, cost units

  bool terminal() const {
    return state == SessionState::Done || state == SessionState::Failed;
  }
};

// Drives sessions through the multi-agent workflow: classify; deterministic
// questions go straight to one action+execution; everything else loops
// reason -> act -> execute, appending snippet output to the notebook, until
// Finish or the step limit. Shared caches are the only cross-session state.
class Orchestrator {
 public:
  Orchestrator(Retriever& retriever, const TemplateSet& templates, Provider& provider,
               KvCacheState& kv, const Config& config);

  Session make_session(std::string id, std::string question, bool baseline = false) const;

  // One state-machine step; returns false when the session is terminal or
  // interrupted. A step is one LLM call plus its bookkeeping (action steps
  // include snippet execution and any repair attempts).
  bool run_step(Session& session);

  void run(Session& session);

  // Continues an interrupted session from the step that timed out; notebook
  // and resident cache blocks are intact, so the retried prefill reuses them.
  void resume(Session& session);

  Session answer(const std::string& question, const std::string& session_id);
  Session run_baseline(const std::string& question, const std::string& session_id);

  const Config& config() const { return config_; }
  KvCacheState& kv() { return kv_; }
  std::mutex& kv_mutex() { return kv_mutex_; }

 private:
  struct LlmCall {
    CompletionResult completion;
    PrefillReport prefill;
    double span = 0.0;
  };

  PrefillReport kv_prefill(const PromptSegments& segments, const std::string& session_id);
  LlmCall call_llm(Session& session, AgentKind agent, const PromptSegments& segments,
                   char actor, const std::string& outcome_on_ok);
  void record(Session& session, char actor, const CompletionResult& completion,
              const PrefillReport& prefill, double span, const std::string& outcome,
              std::uint64_t prompt_hash);
  void fail(Session& session, ErrorKind kind, const std::string& detail);
  void finish(Session& session, std::string answer_text);

  // Action call + snippet execution with the repair loop; returns stdout.
  std::optional<std::string> action_phase(Session& session, const std::string& task);

  void step_classifying(Session& session);
  void step_direct_action(Session& session);
  void step_reasoning(Session& session);
  void step_acting(Session& session);
  void step_baseline_round(Session& session);

  Retriever& retriever_;
  const TemplateSet& templates_;
  Provider& provider_;
  KvCacheState& kv_;
  std::mutex kv_mutex_;
  Config config_;
  TimingModel timing_;
};

// Runs every session on a worker pool ("each query runs on an independent
// thread"); graph, index and templates are shared read-only.
void run_sessions_threaded(Orchestrator& orch, std::vector<Session>& sessions, int workers);

}  // namespace glm
