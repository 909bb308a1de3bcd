#include "glm/pipeline/pipeline.hpp"

#include <chrono>
#include <future>
#include <vector>

#include "glm/kvcache/tokenizer.hpp"
#include "glm/snippet/detect.hpp"

namespace glm {

namespace {

struct LineScan {
  std::vector<std::string> lines;  // each keeps its newline except maybe the last
  std::optional<std::size_t> call_line;
  snippet::RetrieveCallSite site;
};

LineScan scan_lines(const std::string& text) {
  LineScan scan;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string::npos ? text.size() : nl + 1;
    scan.lines.push_back(text.substr(start, end - start));
    start = end;
  }
  for (std::size_t i = 0; i < scan.lines.size(); ++i) {
    std::string_view line = scan.lines[i];
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    if (auto site = snippet::detect_retrieve_call_site(line)) {
      scan.call_line = i;
      scan.site = std::move(*site);
      break;
    }
  }
  return scan;
}

ActionRun run_action(const CompletionRequest& req, Provider& provider, Retriever& retriever,
                     const TimingModel& tm, std::size_t prefill_cost_tokens, bool pipelined) {
  ActionRun run;
  PipelineTrace& trace = run.trace;

  if (tm.mode == TimingMode::Simulated) {
    run.completion = provider.complete(req);
    LineScan scan = scan_lines(run.completion.text);

    double p = tm.c_prefill * static_cast<double>(prefill_cost_tokens);
    double d1 = 0.0, d2 = 0.0, r = 0.0;

    std::string substituted;
    if (scan.call_line) {
      std::int64_t tokens_d1 = 0, tokens_d2 = 0;
      for (std::size_t i = 0; i < scan.lines.size(); ++i) {
        if (i <= *scan.call_line)
          tokens_d1 += count_tokens(scan.lines[i]);
        else
          tokens_d2 += count_tokens(scan.lines[i]);
      }
      d1 = tm.c_decode * static_cast<double>(tokens_d1);
      d2 = tm.c_decode * static_cast<double>(tokens_d2);

      auto resolution = retriever.retrieve_node_traced(scan.site.query);
      trace.call_detected = true;
      trace.cache_hit = resolution.cache_hit;
      trace.query = scan.site.query;
      trace.resolved_id = resolution.id;
      r = resolution.cache_hit ? 0.0 : tm.retrieval_latency;

      for (std::size_t i = 0; i < scan.lines.size(); ++i) {
        if (i == *scan.call_line) {
          std::string line = scan.lines[i];
          line.replace(scan.site.begin, scan.site.end - scan.site.begin,
                       "\"" + resolution.id + "\"");
          substituted += line;
        } else {
          substituted += scan.lines[i];
        }
      }
    } else {
      d1 = tm.c_decode * static_cast<double>(run.completion.tokens_out);
      substituted = run.completion.text;
    }

    trace.prefill_span = p;
    trace.decode_to_call = d1;
    trace.retrieval_span = r;
    trace.decode_rest = d2;
    trace.overlapped = pipelined && trace.call_detected && !trace.cache_hit;
    trace.total = pipelined ? pipelined_total(p, d1, r, d2) : serial_total(p, d1, r, d2);
    run.response_text = std::move(substituted);
    return run;
  }

  // Wall-clock mode: detection runs on the live stream; on a cache miss the
  // retrieval task starts immediately and joins at end-of-decode.
  auto started = std::chrono::steady_clock::now();
  auto ms_since_start = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
        .count();
  };

  std::string buffer;
  bool found = false;
  snippet::RetrieveCallSite site;
  double call_seen_at = 0.0;
  std::future<Retriever::Resolution> retrieval;

  CompletionRequest streamed = req;
  streamed.on_increment = [&](std::string_view chunk) {
    if (req.on_increment) req.on_increment(chunk);
    if (found) return;
    buffer.append(chunk);
    std::size_t at;
    std::size_t consumed = 0;
    while (!found && (at = buffer.find('\n', consumed)) != std::string::npos) {
      std::string_view line(buffer.data() + consumed, at - consumed);
      if (auto s = snippet::detect_retrieve_call_site(line)) {
        found = true;
        site = std::move(*s);
        call_seen_at = ms_since_start();
        if (pipelined) {
          retrieval = std::async(std::launch::async, [&retriever, q = site.query] {
            return retriever.retrieve_node_traced(q);
          });
        }
      }
      consumed = at + 1;
    }
    buffer.erase(0, consumed);
  };

  try {
    run.completion = provider.complete(streamed);
  } catch (...) {
    if (retrieval.valid()) retrieval.wait();  // never leak the task
    throw;
  }
  double decode_done_at = ms_since_start();

  LineScan scan = scan_lines(run.completion.text);
  std::string substituted;
  if (scan.call_line) {
    Retriever::Resolution resolution;
    if (!pipelined || !retrieval.valid()) {
      double r0 = ms_since_start();
      resolution = retriever.retrieve_node_traced(scan.site.query);
      trace.retrieval_span = ms_since_start() - r0;
    } else {
      resolution = retrieval.get();
      trace.retrieval_span = ms_since_start() - call_seen_at;
    }
    trace.call_detected = true;
    trace.cache_hit = resolution.cache_hit;
    trace.query = scan.site.query;
    trace.resolved_id = resolution.id;
    for (std::size_t i = 0; i < scan.lines.size(); ++i) {
      if (i == *scan.call_line) {
        std::string line = scan.lines[i];
        line.replace(scan.site.begin, scan.site.end - scan.site.begin,
                     "\"" + resolution.id + "\"");
        substituted += line;
      } else {
        substituted += scan.lines[i];
      }
    }
  } else {
    if (retrieval.valid()) retrieval.wait();
    substituted = run.completion.text;
  }

  trace.decode_to_call = found ? call_seen_at : decode_done_at;
  trace.decode_rest = found ? decode_done_at - call_seen_at : 0.0;
  trace.overlapped = pipelined && trace.call_detected && !trace.cache_hit;
  trace.total = ms_since_start();
  run.response_text = std::move(substituted);
  return run;
}

}  // namespace

ActionRun run_action_pipelined(const CompletionRequest& req, Provider& provider,
                               Retriever& retriever, const TimingModel& tm,
                               std::size_t prefill_cost_tokens) {
  return run_action(req, provider, retriever, tm, prefill_cost_tokens, true);
}

ActionRun run_action_serial(const CompletionRequest& req, Provider& provider,
                            Retriever& retriever, const TimingModel& tm,
                            std::size_t prefill_cost_tokens) {
  return run_action(req, provider, retriever, tm, prefill_cost_tokens, false);
}

}  // namespace glm
