#include "glm/llm/rule.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace glm {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t at = s.find(sep, start);
    if (at == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, at - start));
    start = at + sep.size();
  }
}

std::vector<std::string> lines_of(const std::string& s) { return split(s, "\n"); }

// Last "Question: " line of a prompt.
std::string question_of(const std::string& prompt) {
  std::size_t at = prompt.rfind("Question: ");
  if (at == std::string::npos) return "";
  std::size_t end = prompt.find('\n', at);
  return prompt.substr(at + 10, end == std::string::npos ? std::string::npos : end - at - 10);
}

std::string section_between(const std::string& prompt, const std::string& header,
                            const std::string& stop) {
  std::size_t begin = prompt.find(header);
  if (begin == std::string::npos) return "";
  begin += header.size();
  std::size_t end = prompt.rfind(stop);
  if (end == std::string::npos || end < begin) return "";
  return prompt.substr(begin, end - begin);
}

struct DetQuestion {
  std::string attr;
  std::string entity;
};

std::optional<DetQuestion> match_deterministic(const std::string& q) {
  const std::string prefix = "What is the ";
  if (q.rfind(prefix, 0) != 0) return std::nullopt;
  std::size_t of = q.find(" of ", prefix.size());
  if (of == std::string::npos) return std::nullopt;
  std::string attr = q.substr(prefix.size(), of - prefix.size());
  std::string entity = q.substr(of + 4);
  if (!entity.empty() && entity.back() == '?') entity.pop_back();
  if (attr.empty() || entity.empty() || attr.find(' ') != std::string::npos) return std::nullopt;
  return DetQuestion{attr, trim(entity)};
}

std::optional<std::vector<std::string>> match_intersection(const std::string& q) {
  const std::string prefix = "Which item is linked from all of: ";
  if (q.rfind(prefix, 0) != 0) return std::nullopt;
  std::string payload = q.substr(prefix.size());
  if (!payload.empty() && payload.back() == '?') payload.pop_back();
  std::vector<std::string> texts;
  for (auto& part : split(payload, "; ")) {
    std::string t = trim(part);
    if (!t.empty()) texts.push_back(std::move(t));
  }
  if (texts.size() < 2) return std::nullopt;
  return texts;
}

std::string fence(const std::string& code) { return "```\n" + code + "```\n"; }

std::string quote_lit(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// "[a, b, c]" -> {a, b, c}
std::vector<std::string> parse_rendered_list(const std::string& s) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') return {};
  std::string inner = t.substr(1, t.size() - 2);
  if (trim(inner).empty()) return {};
  std::vector<std::string> out;
  for (auto& part : split(inner, ", ")) out.push_back(trim(part));
  return out;
}

// Neighbour entries of a rendered chunk line:
//   [neighbours:(id {k:v, k:v}),(id {...})]
std::vector<std::pair<std::string, std::map<std::string, std::string>>> parse_chunk_neighbours(
    const std::string& line) {
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> out;
  const std::string header = "[neighbours:";
  if (line.rfind(header, 0) != 0 || line.back() != ']') return out;
  std::string body = line.substr(header.size(), line.size() - header.size() - 1);
  if (body.empty()) return out;
  // split "(...),(...)" on "),(" after stripping outermost parens
  if (body.front() != '(' || body.back() != ')') return out;
  body = body.substr(1, body.size() - 2);
  for (auto& entry : split(body, "),(")) {
    std::size_t brace = entry.find(" {");
    if (brace == std::string::npos || entry.back() != '}') continue;
    std::string id = entry.substr(0, brace);
    std::string attrs = entry.substr(brace + 2, entry.size() - brace - 3);
    std::map<std::string, std::string> kv;
    if (!attrs.empty()) {
      for (auto& pair : split(attrs, ", ")) {
        std::size_t colon = pair.find(':');
        if (colon == std::string::npos) continue;
        kv[pair.substr(0, colon)] = pair.substr(colon + 1);
      }
    }
    out.emplace_back(std::move(id), std::move(kv));
  }
  return out;
}

}  // namespace

CompletionResult RuleProvider::complete(const CompletionRequest& req) {
  std::string text;
  switch (req.agent) {
    case AgentKind::Classification: text = classify(req.prompt); break;
    case AgentKind::Reasoning: text = reason(req.prompt); break;
    case AgentKind::Action: text = act(req.prompt); break;
    case AgentKind::BaselineThought: text = baseline_thought(req.prompt); break;
    case AgentKind::BaselineAction: text = baseline_action(req.prompt); break;
  }
  return finalize_completion(req, std::move(text));
}

std::string RuleProvider::classify(const std::string& prompt) const {
  return match_deterministic(question_of(prompt)) ? "yes\n" : "no\n";
}

std::string RuleProvider::reason(const std::string& prompt) const {
  std::string question = question_of(prompt);
  auto texts = match_intersection(question);
  if (!texts) return "Finish: unknown\n";
  std::string notebook = section_between(prompt, "Notebook:\n", "Question: ");

  if (options_.chunking == ChunkingMode::Vertex) {
    // One round gathers every chunk; the second reads the intersection off
    // the neighbour lists.
    std::vector<std::set<std::string>> nbr_sets;
    std::map<std::string, std::string> titles;
    for (const auto& line : lines_of(notebook)) {
      auto nbrs = parse_chunk_neighbours(trim(line));
      if (nbrs.empty()) continue;
      std::set<std::string> ids;
      for (auto& [id, attrs] : nbrs) {
        ids.insert(id);
        auto it = attrs.find("title");
        if (it != attrs.end()) titles[id] = it->second;
      }
      nbr_sets.push_back(std::move(ids));
    }
    if (nbr_sets.size() < texts->size()) {
      std::string missing = "Missing: vertex chunks for: ";
      for (std::size_t i = 0; i < texts->size(); ++i) {
        if (i) missing += "; ";
        missing += (*texts)[i];
      }
      return missing + "\n";
    }
    std::set<std::string> common = nbr_sets[0];
    for (std::size_t i = 1; i < nbr_sets.size(); ++i) {
      std::set<std::string> next;
      std::set_intersection(common.begin(), common.end(), nbr_sets[i].begin(), nbr_sets[i].end(),
                            std::inserter(next, next.end()));
      common = std::move(next);
    }
    if (common.size() != 1) return "Finish: unknown\n";
    auto title = titles.find(*common.begin());
    return "Finish: " + (title == titles.end() ? *common.begin() : title->second) + "\n";
  }

  // Fact mode: one tagged fact per round.
  std::map<std::string, std::vector<std::string>> linked;  // source text -> ids
  std::optional<std::string> found_title;
  for (const auto& raw : lines_of(notebook)) {
    std::string line = trim(raw);
    if (line.rfind("linked[", 0) == 0) {
      std::size_t close = line.find("]:");
      if (close == std::string::npos) continue;
      linked[line.substr(7, close - 7)] = parse_rendered_list(line.substr(close + 2));
    } else if (line.rfind("title[", 0) == 0) {
      std::size_t close = line.find("]:");
      if (close != std::string::npos) found_title = trim(line.substr(close + 2));
    }
  }
  for (const auto& t : *texts)
    if (!linked.count(t)) return "Missing: neighbours linked from " + t + "\n";
  std::set<std::string> common(linked[(*texts)[0]].begin(), linked[(*texts)[0]].end());
  for (std::size_t i = 1; i < texts->size(); ++i) {
    std::set<std::string> ids(linked[(*texts)[i]].begin(), linked[(*texts)[i]].end());
    std::set<std::string> next;
    std::set_intersection(common.begin(), common.end(), ids.begin(), ids.end(),
                          std::inserter(next, next.end()));
    common = std::move(next);
  }
  if (common.size() != 1) return "Finish: unknown\n";
  if (!found_title) return "Missing: title of node " + *common.begin() + "\n";
  return "Finish: " + *found_title + "\n";
}

std::string RuleProvider::act(const std::string& prompt) const {
  std::size_t at = prompt.rfind("Task: ");
  std::string task;
  if (at != std::string::npos) {
    std::size_t end = prompt.find('\n', at);
    task = prompt.substr(at + 6, end == std::string::npos ? std::string::npos : end - at - 6);
  }
  task = trim(task);

  if (auto det = match_deterministic(task)) {
    return fence("print(NodeFeature([RetrieveNode(" + quote_lit(det->entity) + ")], " +
                 quote_lit(det->attr) + "))\n");
  }
  if (task.rfind("vertex chunks for: ", 0) == 0) {
    std::string code;
    for (auto& part : split(task.substr(19), "; ")) {
      std::string t = trim(part);
      if (!t.empty()) code += "print(NodeInfo(RetrieveNode(" + quote_lit(t) + ")))\n";
    }
    return fence(code);
  }
  if (task.rfind("neighbours linked from ", 0) == 0) {
    std::string t = trim(task.substr(23));
    return fence("print(\"linked[" + t + "]:\", sorted(NeighbourCheck(RetrieveNode(" +
                 quote_lit(t) + "), " + quote_lit(options_.link_edge_type) + ")))\n");
  }
  if (task.rfind("title of node ", 0) == 0) {
    std::string id = trim(task.substr(14));
    return fence("print(\"title[" + id + "]:\", NodeFeature([" + quote_lit(id) +
                 "], \"title\")[0])\n");
  }
  // Unrecognized task: empty print keeps the session moving and surfaces
  // as a wrong answer rather than a protocol failure.
  return fence("print(\"\")\n");
}

std::string RuleProvider::baseline_thought(const std::string& prompt) const {
  std::string question = question_of(prompt);
  std::string history = section_between(prompt, "History:\n", "Question: ");
  std::vector<std::string> observations;
  for (const auto& raw : lines_of(history)) {
    std::string line = trim(raw);
    if (line.rfind("Observation: ", 0) == 0) observations.push_back(line.substr(13));
  }

  if (auto det = match_deterministic(question)) {
    if (observations.empty()) return "Need the node id for " + det->entity + ".\n";
    if (observations.size() == 1)
      return "Need the " + det->attr + " of node " + observations[0] + ".\n";
    return "Finish: " + observations[1] + "\n";
  }
  if (auto texts = match_intersection(question)) {
    std::size_t m = texts->size();
    std::size_t n = observations.size();
    if (n < 2 * m) {
      std::size_t i = n / 2;
      if (n % 2 == 0) return "Need the node id for " + (*texts)[i] + ".\n";
      return "Need the " + options_.link_edge_type + " neighbours of node " + observations[n - 1] +
             ".\n";
    }
    if (n == 2 * m) {
      std::set<std::string> common;
      bool first = true;
      for (std::size_t i = 0; i < m; ++i) {
        auto ids = parse_rendered_list(observations[2 * i + 1]);
        std::set<std::string> s(ids.begin(), ids.end());
        if (first) {
          common = std::move(s);
          first = false;
        } else {
          std::set<std::string> next;
          std::set_intersection(common.begin(), common.end(), s.begin(), s.end(),
                                std::inserter(next, next.end()));
          common = std::move(next);
        }
      }
      if (common.size() != 1) return "Finish: unknown\n";
      return "Need the title of node " + *common.begin() + ".\n";
    }
    auto title = parse_rendered_list(observations.back());
    return "Finish: " + (title.size() == 1 ? title[0] : "unknown") + "\n";
  }
  return "Finish: unknown\n";
}

std::string RuleProvider::baseline_action(const std::string& prompt) const {
  std::string history = section_between(prompt, "History:\n", "Question: ");
  std::string thought;
  std::vector<std::string> observations;
  for (const auto& raw : lines_of(history)) {
    std::string line = trim(raw);
    if (line.rfind("Thought: ", 0) == 0) thought = line.substr(9);
    if (line.rfind("Observation: ", 0) == 0) observations.push_back(line.substr(13));
  }

  if (thought.rfind("Need the node id for ", 0) == 0) {
    std::string entity = thought.substr(21);
    if (!entity.empty() && entity.back() == '.') entity.pop_back();
    return "RetrieveNode(" + quote_lit(entity) + ")\n";
  }
  const std::string nbr_marker = " neighbours of node ";
  std::size_t nb = thought.find(nbr_marker);
  if (thought.rfind("Need the ", 0) == 0 && nb != std::string::npos) {
    std::string etype = thought.substr(9, nb - 9);
    std::string id = thought.substr(nb + nbr_marker.size());
    if (!id.empty() && id.back() == '.') id.pop_back();
    return "NeighbourCheck(" + quote_lit(id) + ", " + quote_lit(etype) + ")\n";
  }
  if (thought.rfind("Need the ", 0) == 0) {
    const std::string of_marker = " of node ";
    std::size_t of = thought.find(of_marker);
    if (of != std::string::npos) {
      std::string attr = thought.substr(9, of - 9);
      std::string id = thought.substr(of + of_marker.size());
      if (!id.empty() && id.back() == '.') id.pop_back();
      return "NodeFeature([" + quote_lit(id) + "], " + quote_lit(attr) + ")\n";
    }
  }
  return "NodeDegree(\"unknown\", \"unknown\")\n";
}

}  // namespace glm
