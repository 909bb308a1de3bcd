#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glm/bench/workload.hpp"
#include "glm/config.hpp"
#include "glm/graph/graph_store.hpp"
#include "glm/orchestrator/orchestrator.hpp"

namespace glm {

struct BenchOptions {
  bool glm_mode = true;  // false = single-agent Graph-CoT baseline
  CachePolicy policy = CachePolicy::Priority;
  ChunkingMode chunking = ChunkingMode::Vertex;
  bool pipeline = true;
  int concurrency = 8;
  Config config;  // sizing knobs (kv capacity, costs, limits)
};

struct SessionSummary {
  std::string id;
  std::string question;
  bool deterministic = true;
  std::string answer;
  std::string expected;
  bool correct = false;
  std::string error;  // empty when ok
  std::int64_t tokens = 0;
  double latency = 0.0;
  int rounds = 0;
  int reasoning_calls = 0;
};

struct BenchReport {
  std::string mode;      // glm | graphcot
  std::string policy;    // priority | lru
  std::string chunking;  // vertex | fact
  std::string pipeline;  // on | off
  int concurrency = 1;
  std::vector<std::string> question_ids;

  std::int64_t total_tokens = 0;
  double mean_latency = 0.0;
  double p50_latency = 0.0;
  double p95_latency = 0.0;
  double max_latency = 0.0;
  double makespan = 0.0;        // simulated, with `concurrency` lanes
  double throughput_qps = 0.0;  // questions per simulated second
  double cache_hit_rate = 0.0;
  std::map<std::string, std::int64_t> tokens_by_agent;  // C/R/A/V
  std::map<std::string, int> errors_by_kind;
  int correct = 0;
  int answered = 0;
  double mean_rounds = 0.0;

  std::vector<SessionSummary> sessions;

  std::string to_csv() const;   // frozen schema=1
  std::string to_json() const;
  std::string sessions_jsonl() const;
};

// Executes every question against the chosen mode with the RuleProvider,
// advancing up to `concurrency` sessions round-robin (deterministic
// interleaving); per-question failures are reported, never thrown.
BenchReport run_bench(const Workload& workload, const PropertyGraph& graph,
                      const BenchOptions& options);

// Writes metrics.csv, metrics.json and sessions.jsonl under out_dir.
void write_report(const BenchReport& report, const std::string& out_dir);

struct ReportDiff {
  std::string markdown;
  std::string csv;
};

// Per-metric absolute and relative deltas; throws WorkloadMismatch when the
// two reports cover different question sets.
ReportDiff report_diff(const BenchReport& a, const BenchReport& b);

}  // namespace glm
