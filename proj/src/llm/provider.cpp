#include "glm/llm/provider.hpp"

#include <fstream>

#include "glm/error.hpp"
#include "glm/kvcache/tokenizer.hpp"
#include "glm/llm/scripted.hpp"
#include "json.hpp"

namespace glm {

CompletionResult finalize_completion(const CompletionRequest& req, std::string text) {
  CompletionResult result;
  result.tokens_in = count_tokens(req.prompt);
  result.tokens_out = count_tokens(text);

  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string::npos ? text.size() : nl + 1;
    Increment inc;
    inc.text = text.substr(start, end - start);
    if (req.on_increment) req.on_increment(inc.text);
    result.increments.push_back(std::move(inc));
    start = end;
  }
  result.text = std::move(text);
  return result;
}

ScriptedProvider::ScriptedProvider(std::vector<TraceEntry> entries) {
  for (auto& e : entries) entries_[{e.session, e.agent, e.step}] = std::move(e.text);
}

ScriptedProvider ScriptedProvider::load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GlmError("cannot open trace file: " + path);
  std::vector<TraceEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw GlmError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
    entries.push_back({j.at("session").get<std::string>(), j.at("agent").get<std::string>(),
                       j.at("step").get<int>(), j.at("text").get<std::string>()});
  }
  return ScriptedProvider(std::move(entries));
}

CompletionResult ScriptedProvider::complete(const CompletionRequest& req) {
  auto it = entries_.find({req.session_id, to_string(req.agent), req.step});
  if (it == entries_.end())
    throw ProviderProtocolError("no scripted entry for (" + req.session_id + ", " +
                                to_string(req.agent) + ", " + std::to_string(req.step) + ")");
  return finalize_completion(req, it->second);
}

}  // namespace glm
