#include "glm/bench/bench.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glm/embed/index.hpp"
#include "glm/error.hpp"
#include "glm/llm/rule.hpp"
#include "json.hpp"

namespace glm {

namespace {

std::string normalize_ws(const std::string& s) {
  std::string out;
  bool in_space = true;  // also trims leading space
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!in_space) out += ' ';
      in_space = true;
    } else {
      out += c;
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double idx = p * static_cast<double>(values.size() - 1);
  std::size_t lo = static_cast<std::size_t>(idx);
  std::size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = idx - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace

BenchReport run_bench(const Workload& workload, const PropertyGraph& graph,
                      const BenchOptions& options) {
  Config config = options.config;
  config.kv_policy = options.policy;
  config.chunking = options.chunking;
  config.pipeline_enabled = options.pipeline;
  config.timing_mode = TimingMode::Simulated;

  VectorIndex index = VectorIndex::build(graph, config);
  Retriever retriever(graph, index, config);
  KvCacheState kv(config.kv_capacity_blocks, config.kv_block_tokens, config.kv_policy);
  TemplateSet templates = TemplateSet::builtin();
  RuleProvider provider(RuleProvider::Options{config.chunking, "linked"});
  Orchestrator orch(retriever, templates, provider, kv, config);

  std::vector<Session> sessions;
  sessions.reserve(workload.questions.size());
  for (const auto& q : workload.questions)
    sessions.push_back(orch.make_session(q.id, q.text, !options.glm_mode));

  // Round-robin admission: up to `concurrency` sessions in flight, one step
  // each per rotation. Deterministic interleaving stands in for the thread
  // pool so metrics are reproducible.
  std::size_t admitted = 0;
  std::vector<std::size_t> active;
  int lanes = std::max(1, options.concurrency);
  while (admitted < sessions.size() || !active.empty()) {
    while (active.size() < static_cast<std::size_t>(lanes) && admitted < sessions.size())
      active.push_back(admitted++);
    for (std::size_t i = 0; i < active.size();) {
      Session& s = sessions[active[i]];
      orch.run_step(s);
      if (s.state == SessionState::Interrupted) orch.resume(s);
      if (s.terminal())
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(i));
      else
        ++i;
    }
  }

  BenchReport report;
  report.mode = options.glm_mode ? "glm" : "graphcot";
  report.policy = options.policy == CachePolicy::Priority ? "priority" : "lru";
  report.chunking = options.chunking == ChunkingMode::Vertex ? "vertex" : "fact";
  report.pipeline = options.pipeline ? "on" : "off";
  report.concurrency = lanes;

  std::vector<double> latencies;
  double rounds_sum = 0.0;
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    const Session& s = sessions[i];
    const Question& q = workload.questions[i];
    report.question_ids.push_back(q.id);

    SessionSummary sum;
    sum.id = s.id;
    sum.question = q.text;
    sum.deterministic = q.deterministic;
    sum.answer = s.answer;
    sum.expected = q.expected_answer;
    sum.tokens = s.trace.total_tokens();
    sum.latency = s.trace.total_latency();
    sum.rounds = s.rounds;
    for (const auto& r : s.trace.records)
      if (r.actor == 'R') ++sum.reasoning_calls;
    if (s.error) {
      sum.error = to_string(*s.error);
      ++report.errors_by_kind[sum.error];
    } else {
      ++report.answered;
      sum.correct = !q.expected_answer.empty() &&
                    normalize_ws(s.answer) == normalize_ws(q.expected_answer);
      if (sum.correct) ++report.correct;
    }
    report.total_tokens += sum.tokens;
    latencies.push_back(sum.latency);
    rounds_sum += s.rounds;
    for (const auto& r : s.trace.records)
      if (r.actor == 'C' || r.actor == 'R' || r.actor == 'A' || r.actor == 'V')
        report.tokens_by_agent[std::string(1, r.actor)] += r.tokens_in + r.tokens_out;
    report.sessions.push_back(std::move(sum));
  }

  if (!latencies.empty()) {
    double sum = 0;
    for (double v : latencies) sum += v;
    report.mean_latency = sum / static_cast<double>(latencies.size());
    report.p50_latency = percentile(latencies, 0.50);
    report.p95_latency = percentile(latencies, 0.95);
    report.max_latency = *std::max_element(latencies.begin(), latencies.end());
  }
  report.mean_rounds =
      sessions.empty() ? 0.0 : rounds_sum / static_cast<double>(sessions.size());
  report.cache_hit_rate = kv.counters().hit_rate();

  // Simulated makespan: greedy assignment of per-session latencies onto
  // `concurrency` lanes in arrival order. 1000 cost units = 1 simulated
  // second. The first 5% of completions are warm-up and excluded from the
  // rate.
  std::vector<double> lane_end(static_cast<std::size_t>(lanes), 0.0);
  std::vector<double> completions;
  for (double v : latencies) {
    auto it = std::min_element(lane_end.begin(), lane_end.end());
    *it += v;
    completions.push_back(*it);
  }
  report.makespan = lane_end.empty() ? 0.0 : *std::max_element(lane_end.begin(), lane_end.end());
  std::sort(completions.begin(), completions.end());
  std::size_t warm = static_cast<std::size_t>(config.bench_warmup_frac *
                                              static_cast<double>(completions.size()));
  double t_warm = warm > 0 ? completions[warm - 1] : 0.0;
  double counted = static_cast<double>(completions.size() - warm);
  double window_units = report.makespan - t_warm;
  if (window_units <= 0) window_units = report.makespan;
  if (window_units > 0) report.throughput_qps = counted / (window_units / 1000.0);
  return report;
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "schema=1\n";
  out << "metric,value\n";
  out << "mode," << mode << "\n";
  out << "policy," << policy << "\n";
  out << "chunking," << chunking << "\n";
  out << "pipeline," << pipeline << "\n";
  out << "concurrency," << concurrency << "\n";
  out << "questions," << question_ids.size() << "\n";
  out << "answered," << answered << "\n";
  out << "correct," << correct << "\n";
  out << "total_tokens," << total_tokens << "\n";
  out << "mean_latency," << mean_latency << "\n";
  out << "p50_latency," << p50_latency << "\n";
  out << "p95_latency," << p95_latency << "\n";
  out << "max_latency," << max_latency << "\n";
  out << "makespan," << makespan << "\n";
  out << "throughput_qps," << throughput_qps << "\n";
  out << "cache_hit_rate," << cache_hit_rate << "\n";
  out << "mean_rounds," << mean_rounds << "\n";
  for (const auto& [agent, tokens] : tokens_by_agent)
    out << "tokens_agent_" << agent << "," << tokens << "\n";
  for (const auto& [kind, count] : errors_by_kind) out << "errors_" << kind << "," << count << "\n";
  return out.str();
}

std::string BenchReport::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["mode"] = mode;
  j["policy"] = policy;
  j["chunking"] = chunking;
  j["pipeline"] = pipeline;
  j["concurrency"] = concurrency;
  j["questions"] = question_ids.size();
  j["answered"] = answered;
  j["correct"] = correct;
  j["total_tokens"] = total_tokens;
  j["mean_latency"] = mean_latency;
  j["p50_latency"] = p50_latency;
  j["p95_latency"] = p95_latency;
  j["max_latency"] = max_latency;
  j["makespan"] = makespan;
  j["throughput_qps"] = throughput_qps;
  j["cache_hit_rate"] = cache_hit_rate;
  j["mean_rounds"] = mean_rounds;
  j["tokens_by_agent"] = tokens_by_agent;
  j["errors_by_kind"] = errors_by_kind;
  return j.dump(2);
}

std::string BenchReport::sessions_jsonl() const {
  std::ostringstream out;
  for (const auto& s : sessions) {
    nlohmann::json j;
    j["id"] = s.id;
    j["question"] = s.question;
    j["kind"] = s.deterministic ? "deterministic" : "non_deterministic";
    j["answer"] = s.answer;
    j["expected"] = s.expected;
    j["correct"] = s.correct;
    j["error"] = s.error;
    j["tokens"] = s.tokens;
    j["latency"] = s.latency;
    j["rounds"] = s.rounds;
    j["reasoning_calls"] = s.reasoning_calls;
    out << j.dump() << "\n";
  }
  return out.str();
}

void write_report(const BenchReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& content) {
    std::ofstream f(std::filesystem::path(out_dir) / name);
    if (!f) throw GlmError(std::string("cannot write report file: ") + name);
    f << content;
  };
  write("metrics.csv", report.to_csv());
  write("metrics.json", report.to_json());
  write("sessions.jsonl", report.sessions_jsonl());
}

ReportDiff report_diff(const BenchReport& a, const BenchReport& b) {
  if (a.question_ids != b.question_ids)
    throw WorkloadMismatch("reports cover different workloads");

  struct Row {
    const char* name;
    double a, b;
  };
  std::vector<Row> rows = {
      {"total_tokens", static_cast<double>(a.total_tokens), static_cast<double>(b.total_tokens)},
      {"mean_latency", a.mean_latency, b.mean_latency},
      {"p50_latency", a.p50_latency, b.p50_latency},
      {"p95_latency", a.p95_latency, b.p95_latency},
      {"makespan", a.makespan, b.makespan},
      {"throughput_qps", a.throughput_qps, b.throughput_qps},
      {"cache_hit_rate", a.cache_hit_rate, b.cache_hit_rate},
      {"mean_rounds", a.mean_rounds, b.mean_rounds},
      {"correct", static_cast<double>(a.correct), static_cast<double>(b.correct)},
  };

  std::ostringstream md, csv;
  md << "| metric | " << a.mode << " | " << b.mode << " | delta | relative |\n";
  md << "|---|---|---|---|---|\n";
  csv << "schema=1\n";
  csv << "metric,a,b,delta,relative\n";
  for (const auto& r : rows) {
    double delta = r.b - r.a;
    double rel = r.a != 0.0 ? delta / r.a : 0.0;
    md << "| " << r.name << " | " << r.a << " | " << r.b << " | " << delta << " | " << rel
       << " |\n";
    csv << r.name << "," << r.a << "," << r.b << "," << delta << "," << rel << "\n";
  }
  double ratio = a.throughput_qps != 0.0 ? b.throughput_qps / a.throughput_qps : 0.0;
  md << "| throughput_ratio | 1 | " << ratio << " | - | - |\n";
  csv << "throughput_ratio,1," << ratio << ",,\n";
  return {md.str(), csv.str()};
}

}  // namespace glm
