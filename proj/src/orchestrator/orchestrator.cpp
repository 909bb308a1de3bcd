#include "glm/orchestrator/orchestrator.hpp"

#include <atomic>
#include <thread>

#include "glm/agents/output.hpp"
#include "glm/kvcache/tokenizer.hpp"
#include "glm/snippet/graph_api.hpp"
#include "glm/snippet/interp.hpp"
#include "glm/util/fnv.hpp"

namespace glm {

namespace {

std::string rtrim_newline(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

// Per-execution retrieval instrumentation: counts uncached RetrieveNode
// calls so their latency lands on the session's critical path.
class CountingGraphApi : public snippet::SnippetGraphApi {
 public:
  CountingGraphApi(Retriever& retriever, bool node_info_enabled)
      : inner_(retriever), retriever_(retriever), node_info_enabled_(node_info_enabled) {}

  std::string retrieve_node(const std::string& text) override {
    auto res = retriever_.retrieve_node_traced(text);
    if (!res.cache_hit) ++uncached_retrieves_;
    return res.id;
  }
  std::string node_info(const std::string& id) override { return inner_.node_info(id); }
  std::vector<std::optional<AttrValue>> node_feature(const std::vector<std::string>& ids,
                                                     const std::string& name) override {
    return inner_.node_feature(ids, name);
  }
  std::int64_t node_degree(const std::string& id, const std::string& etype) override {
    return inner_.node_degree(id, etype);
  }
  std::vector<std::string> neighbour_check(const std::string& id,
                                           const std::string& etype) override {
    return inner_.neighbour_check(id, etype);
  }
  bool node_info_enabled() const override { return node_info_enabled_; }

  int uncached_retrieves() const { return uncached_retrieves_; }

 private:
  snippet::RetrieverGraphApi inner_;
  Retriever& retriever_;
  bool node_info_enabled_;
  int uncached_retrieves_ = 0;
};

}  // namespace

Orchestrator::Orchestrator(Retriever& retriever, const TemplateSet& templates,
                           Provider& provider, KvCacheState& kv, const Config& config)
    : retriever_(retriever),
      templates_(templates),
      provider_(provider),
      kv_(kv),
      config_(config) {
  timing_.mode = config.timing_mode;
  timing_.c_prefill = config.cost_prefill;
  timing_.c_decode = config.cost_decode;
  timing_.retrieval_latency = config.retrieval_latency;
}

Session Orchestrator::make_session(std::string id, std::string question, bool baseline) const {
  Session s;
  s.id = std::move(id);
  s.question = std::move(question);
  s.baseline = baseline;
  s.state = SessionState::Classifying;
  s.timeout_retries_left = config_.timeout_retries;
  return s;
}

PrefillReport Orchestrator::kv_prefill(const PromptSegments& segments,
                                       const std::string& session_id) {
  TokenSeq tokens;
  TierMap tiers;
  for (const auto& [text, tier] : segments.parts) {
    TokenSeq part = tokenize(text);
    if (part.empty()) continue;
    std::size_t begin = tokens.size();
    tokens.insert(tokens.end(), part.begin(), part.end());
    if (!tiers.empty() && tiers.back().tier == tier)
      tiers.back().end = tokens.size();
    else
      tiers.push_back({begin, tokens.size(), tier});
  }
  std::lock_guard<std::mutex> lock(kv_mutex_);
  return kv_.prefill(tokens, tiers, session_id);
}

void Orchestrator::record(Session& session, char actor, const CompletionResult& completion,
                          const PrefillReport& prefill, double span, const std::string& outcome,
                          std::uint64_t prompt_hash) {
  session.clock += span;
  TraceRecord r;
  r.timestamp = session.clock;
  r.actor = actor;
  r.prompt_hash = prompt_hash;
  r.tokens_in = completion.tokens_in;
  r.tokens_out = completion.tokens_out;
  r.span = span;
  r.cached_tokens = prefill.cached_tokens;
  r.computed_tokens = prefill.total_computed();
  r.outcome = outcome;
  session.trace.records.push_back(std::move(r));
}

Orchestrator::LlmCall Orchestrator::call_llm(Session& session, AgentKind agent,
                                             const PromptSegments& segments, char actor,
                                             const std::string& outcome_on_ok) {
  std::string prompt = segments.text();
  PrefillReport prefill = kv_prefill(segments, session.id);

  CompletionRequest req;
  req.prompt = prompt;
  req.agent = agent;
  req.session_id = session.id;
  req.step = session.agent_steps[to_string(agent)];

  CompletionResult completion = provider_.complete(req);  // may throw timeout
  session.agent_steps[to_string(agent)] = req.step + 1;

  double span = timing_.c_prefill * static_cast<double>(prefill.total_computed()) +
                timing_.c_decode * static_cast<double>(completion.tokens_out);
  record(session, actor, completion, prefill, span, outcome_on_ok, fnv1a(prompt));
  return {std::move(completion), prefill, span};
}

void Orchestrator::fail(Session& session, ErrorKind kind, const std::string& detail) {
  session.state = SessionState::Failed;
  session.error = kind;
  TraceRecord r;
  r.timestamp = session.clock;
  r.actor = '!';
  r.outcome = std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail);
  session.trace.records.push_back(std::move(r));
}

void Orchestrator::finish(Session& session, std::string answer_text) {
  session.answer = std::move(answer_text);
  session.state = SessionState::Done;
  // Fig. 5 step 4: once the question is resolved, the session's live
  // notebook blocks drop from II to III.
  std::lock_guard<std::mutex> lock(kv_mutex_);
  kv_.set_tier(session.id, Tier::II, Tier::III);
}

bool Orchestrator::run_step(Session& session) {
  if (session.terminal() || session.state == SessionState::Interrupted) return false;
  SessionState entry = session.state;
  try {
    if (session.baseline) {
      step_baseline_round(session);
    } else {
      switch (session.state) {
        case SessionState::Classifying: step_classifying(session); break;
        case SessionState::DirectAction: step_direct_action(session); break;
        case SessionState::Reasoning: step_reasoning(session); break;
        case SessionState::Acting: step_acting(session); break;
        default: return false;
      }
    }
  } catch (const ProviderTimeoutError&) {
    if (session.timeout_retries_left > 0) {
      session.resume_state = entry;
      session.state = SessionState::Interrupted;
      TraceRecord r;
      r.timestamp = session.clock;
      r.actor = '!';
      r.outcome = "timeout";
      session.trace.records.push_back(std::move(r));
    } else {
      fail(session, ErrorKind::ProviderTimeout, "retry budget exhausted");
    }
  } catch (const UnexpectedAgentOutput& e) {
    fail(session, ErrorKind::UnexpectedAgentOutput, e.what());
  } catch (const RetrievalError& e) {
    fail(session, ErrorKind::RetrievalProcessError, e.what());
  }
  return !session.terminal() && session.state != SessionState::Interrupted;
}

void Orchestrator::run(Session& session) {
  while (run_step(session)) {
  }
}

void Orchestrator::resume(Session& session) {
  if (session.state == SessionState::Done) return;  // no-op
  if (session.state != SessionState::Interrupted)
    throw InvalidState("resume requires an interrupted session");
  --session.timeout_retries_left;
  session.state = session.resume_state;
  run(session);
}

Session Orchestrator::answer(const std::string& question, const std::string& session_id) {
  Session s = make_session(session_id, question);
  run(s);
  return s;
}

Session Orchestrator::run_baseline(const std::string& question, const std::string& session_id) {
  Session s = make_session(session_id, question, true);
  run(s);
  return s;
}

void Orchestrator::step_classifying(Session& session) {
  auto segments = templates_.render_classification(session.question);
  LlmCall call = call_llm(session, AgentKind::Classification, segments, 'C', "classified");
  Classified c = parse_classification(call.completion.text);
  session.trace.records.back().outcome = c.deterministic ? "deterministic" : "non-deterministic";
  session.state = c.deterministic ? SessionState::DirectAction : SessionState::Reasoning;
}

void Orchestrator::step_direct_action(Session& session) {
  auto stdout_text = action_phase(session, session.question);
  if (!stdout_text) return;  // failed inside
  finish(session, rtrim_newline(*stdout_text));
}

void Orchestrator::step_reasoning(Session& session) {
  if (session.rounds >= config_.max_steps) {
    fail(session, ErrorKind::StepLimitExceeded,
         "no Finish after " + std::to_string(session.rounds) + " rounds");
    return;
  }
  auto segments = templates_.render_reasoning(session.question, session.notebook);
  LlmCall call = call_llm(session, AgentKind::Reasoning, segments, 'R', "reasoned");
  auto parsed = parse_reasoning(call.completion.text);
  if (const auto* fin = std::get_if<Finish>(&parsed)) {
    session.trace.records.back().outcome = "finish";
    finish(session, fin->answer);
    return;
  }
  session.pending_task = std::get<MissingInfo>(parsed).text;
  session.trace.records.back().outcome = "missing";
  session.state = SessionState::Acting;
}

void Orchestrator::step_acting(Session& session) {
  auto stdout_text = action_phase(session, session.pending_task);
  if (!stdout_text) return;
  session.notebook.append({"round" + std::to_string(session.rounds + 1), *stdout_text});
  ++session.rounds;
  session.state = SessionState::Reasoning;
}

std::optional<std::string> Orchestrator::action_phase(Session& session,
                                                      const std::string& task) {
  std::string failed_snippet;
  std::string failed_error;

  for (int attempt = 0; attempt <= config_.repair_budget; ++attempt) {
    PromptSegments segments =
        attempt == 0 ? templates_.render_action(task)
                     : templates_.render_action_repair(task, failed_snippet, failed_error);
    std::string prompt = segments.text();
    PrefillReport prefill = kv_prefill(segments, session.id);

    CompletionRequest req;
    req.prompt = prompt;
    req.agent = AgentKind::Action;
    req.session_id = session.id;
    req.step = session.agent_steps[to_string(AgentKind::Action)];

    ActionRun run = config_.pipeline_enabled
                        ? run_action_pipelined(req, provider_, retriever_, timing_,
                                               prefill.total_computed())
                        : run_action_serial(req, provider_, retriever_, timing_,
                                            prefill.total_computed());
    session.agent_steps[to_string(AgentKind::Action)] = req.step + 1;
    record(session, 'A', run.completion, prefill, run.trace.total,
           attempt == 0 ? "action" : "action_repair", fnv1a(prompt));

    Snippet snippet = parse_action(run.response_text);  // throws UnexpectedAgentOutput

    snippet::ExecutionResult exec;
    CountingGraphApi api(retriever_, config_.chunking == ChunkingMode::Vertex);
    bool parse_failed = false;
    try {
      snippet::ParseOptions popts;
      popts.max_loop_depth = config_.snippet_max_loop_depth;
      auto program = snippet::parse(snippet.source, popts);
      snippet::ExecOptions eopts;
      eopts.step_budget = config_.snippet_step_budget;
      exec = snippet::execute(program, api, eopts);
    } catch (const snippet::ParseError& e) {
      parse_failed = true;
      exec.error = snippet::ExecError{ErrorKind::CodeExecutionError, e.what(), e.pos};
    }

    double retrieval_span =
        timing_.retrieval_latency * static_cast<double>(api.uncached_retrieves());
    if (retrieval_span > 0) {
      session.clock += retrieval_span;
      TraceRecord r;
      r.timestamp = session.clock;
      r.actor = 'V';
      r.span = retrieval_span;
      r.outcome = "execute_retrievals";
      session.trace.records.push_back(std::move(r));
    }

    if (exec.ok()) return exec.stdout_text;

    if (exec.error->category == ErrorKind::RetrievalProcessError) {
      fail(session, ErrorKind::RetrievalProcessError, exec.error->message);
      return std::nullopt;
    }
    // Code execution failure: log the faulty code and feed it back.
    failed_snippet = snippet.source;
    failed_error = exec.error->message;
    session.trace.records.back().outcome =
        parse_failed ? "snippet_parse_error" : "snippet_exec_error";
  }

  fail(session, ErrorKind::CodeExecutionError,
       "repair budget exhausted: " + failed_error);
  return std::nullopt;
}

void Orchestrator::step_baseline_round(Session& session) {
  if (session.rounds >= config_.max_steps) {
    fail(session, ErrorKind::StepLimitExceeded,
         "no Finish after " + std::to_string(session.rounds) + " rounds");
    return;
  }

  auto thought_segments = templates_.render_baseline_thought(session.question, session.history);
  LlmCall thought =
      call_llm(session, AgentKind::BaselineThought, thought_segments, 'R', "thought");
  std::string thought_line = rtrim_newline(thought.completion.text);
  if (thought_line.rfind("Finish:", 0) == 0) {
    session.trace.records.back().outcome = "finish";
    std::string ans = thought_line.substr(7);
    std::size_t b = ans.find_first_not_of(' ');
    finish(session, b == std::string::npos ? "" : ans.substr(b));
    return;
  }
  session.history += "Thought: " + thought_line + "\n";

  auto action_segments = templates_.render_baseline_action(session.question, session.history);
  LlmCall action =
      call_llm(session, AgentKind::BaselineAction, action_segments, 'A', "baseline_action");
  std::string call_line = rtrim_newline(action.completion.text);

  CountingGraphApi api(retriever_, false);  // the baseline function set has no NodeInfo
  snippet::ExecutionResult exec;
  try {
    auto program = snippet::parse("print(" + call_line + ")\n");
    exec = snippet::execute(program, api);
  } catch (const snippet::ParseError& e) {
    throw UnexpectedAgentOutput(std::string("baseline action is not a function call: ") +
                                e.what());
  }

  double retrieval_span =
      timing_.retrieval_latency * static_cast<double>(api.uncached_retrieves());
  if (retrieval_span > 0) {
    session.clock += retrieval_span;
    TraceRecord r;
    r.timestamp = session.clock;
    r.actor = 'V';
    r.span = retrieval_span;
    r.outcome = "execute_retrievals";
    session.trace.records.push_back(std::move(r));
  }

  if (!exec.ok()) {
    if (exec.error->category == ErrorKind::RetrievalProcessError)
      fail(session, ErrorKind::RetrievalProcessError, exec.error->message);
    else
      fail(session, ErrorKind::CodeExecutionError, exec.error->message);
    return;
  }

  session.history +=
      "Action: " + call_line + "\nObservation: " + rtrim_newline(exec.stdout_text) + "\n";
  ++session.rounds;
}

void run_sessions_threaded(Orchestrator& orch, std::vector<Session>& sessions, int workers) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= sessions.size()) return;
      orch.run(sessions[i]);
    }
  };
  std::vector<std::thread> pool;
  int n = std::max(1, workers);
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace glm
