#include "glm/agents/templates.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "glm/error.hpp"

namespace glm {

namespace {

// Shipped prompt assets; the custom/ directory carries editable copies.
const char* kClassification =
    "You route questions for a graph question answering system.\n"
    "Answer yes when one retrieval or one computed lookup over the graph settles the question directly.\n"
    "Answer no when the question needs facts from several nodes combined by multi-hop reasoning.\n"
    "Reply with a single word: yes or no.\n"
    "\n"
    "Question: {{question}}\n"
    "Answer:\n";

const char* kReasoning =
    "You are the reasoning agent for graph question answering.\n"
    "Read the notebook of retrieved facts and decide whether it already answers the question.\n"
    "If it does, reply on one line: Finish: <answer>\n"
    "If facts are missing, reply on one line: Missing: <what is needed>\n"
    "\n"
    "Notebook:\n"
    "{{notebook}}Question: {{question}}\n"
    "Reply:\n";

const char* kAction =
    "You are the action agent. Write a short code snippet that gathers exactly the requested information from the graph.\n"
    "Allowed calls: RetrieveNode(text), NodeInfo(nodeID), NodeFeature(nodeIDs, featureName), NodeDegree(nodeID, neighbourType), NeighbourCheck(nodeID, neighbourType).\n"
    "Helpers: len, set, list, sorted, sum, min, max. Print only the final result.\n"
    "Reply with one fenced code block.\n"
    "\n"
    "Task: {{task}}\n"
    "Code:\n";

const char* kActionRepair =
    "You are the action agent. The previous snippet for this task failed; write a corrected one.\n"
    "Allowed calls: RetrieveNode(text), NodeInfo(nodeID), NodeFeature(nodeIDs, featureName), NodeDegree(nodeID, neighbourType), NeighbourCheck(nodeID, neighbourType).\n"
    "Helpers: len, set, list, sorted, sum, min, max. Print only the final result.\n"
    "Reply with one fenced code block.\n"
    "\n"
    "Task: {{task}}\n"
    "Failed snippet:\n"
    "{{failed_snippet}}\n"
    "Error: {{error}}\n"
    "Code:\n";

const char* kBaselineThought =
    "You answer graph questions by iterative reasoning. Inspect the history of actions and observations, then state what to do next.\n"
    "When the history already contains the answer, reply on one line: Finish: <answer>\n"
    "Otherwise describe the next fact you need.\n"
    "\n"
    "History:\n"
    "{{history}}Question: {{question}}\n"
    "Thought:\n";

const char* kBaselineAction =
    "Pick exactly one call from: RetrieveNode(text), NodeFeature(nodeIDs, featureName), NodeDegree(nodeID, neighbourType), NeighbourCheck(nodeID, neighbourType).\n"
    "Reply with the single call and nothing else.\n"
    "\n"
    "History:\n"
    "{{history}}Question: {{question}}\n"
    "Action:\n";

struct SlotFill {
  std::string name;
  std::string value;
  Tier tier;
};

// Literal text before the first slot takes tier I (shared prefix); every
// other literal run takes the tier of the slot that follows it, and trailing
// text keeps the last slot's tier. Adjacent same-tier parts merge.
PromptSegments render_tiered(const PromptTemplate& tmpl, const std::vector<SlotFill>& fills) {
  auto fill_for = [&](const std::string& name) -> const SlotFill& {
    for (const auto& f : fills)
      if (f.name == name) return f;
    throw ConfigError("no value for template slot: " + name);
  };

  PromptSegments out;
  auto push = [&](const std::string& text, Tier tier) {
    if (text.empty()) return;
    if (!out.parts.empty() && out.parts.back().second == tier)
      out.parts.back().first += text;
    else
      out.parts.emplace_back(text, tier);
  };

  const auto& segments = tmpl.segments();
  std::string pending;
  bool seen_slot = false;
  Tier current = Tier::I;
  for (const auto& seg : segments) {
    if (!seg.is_slot) {
      pending += seg.value;
      continue;
    }
    const SlotFill& f = fill_for(seg.value);
    push(pending, seen_slot ? f.tier : Tier::I);
    pending.clear();
    push(f.value, f.tier);
    seen_slot = true;
    current = f.tier;
  }
  push(pending, current);
  return out;
}

}  // namespace

PromptTemplate PromptTemplate::parse(std::string text) {
  PromptTemplate t;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find("{{", pos);
    if (open == std::string::npos) {
      t.segments_.push_back({false, text.substr(pos)});
      break;
    }
    std::size_t close = text.find("}}", open);
    if (close == std::string::npos) throw ConfigError("unterminated {{slot}} in template");
    if (open > pos) t.segments_.push_back({false, text.substr(pos, open - pos)});
    std::string name = text.substr(open + 2, close - open - 2);
    if (name.empty()) throw ConfigError("empty slot name in template");
    t.segments_.push_back({true, name});
    t.slot_names_.push_back(std::move(name));
    pos = close + 2;
  }
  for (const auto& s : t.segments_) {
    if (s.is_slot) break;
    t.shared_prefix_ += s.value;
  }
  return t;
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& slots) const {
  std::string out;
  for (const auto& seg : segments_) {
    if (!seg.is_slot) {
      out += seg.value;
      continue;
    }
    auto it = slots.find(seg.value);
    if (it == slots.end()) throw ConfigError("missing template slot: " + seg.value);
    out += it->second;
  }
  return out;
}

TemplateSet TemplateSet::builtin() {
  TemplateSet set;
  set.templates_.emplace("classification", PromptTemplate::parse(kClassification));
  set.templates_.emplace("reasoning", PromptTemplate::parse(kReasoning));
  set.templates_.emplace("action", PromptTemplate::parse(kAction));
  set.templates_.emplace("action_repair", PromptTemplate::parse(kActionRepair));
  set.templates_.emplace("baseline_thought", PromptTemplate::parse(kBaselineThought));
  set.templates_.emplace("baseline_action", PromptTemplate::parse(kBaselineAction));
  return set;
}

TemplateSet TemplateSet::load_dir(const std::string& dir) {
  TemplateSet set;
  const char* names[] = {"classification", "reasoning",        "action",
                         "action_repair",  "baseline_thought", "baseline_action"};
  for (const char* name : names) {
    std::filesystem::path path = std::filesystem::path(dir) / (std::string(name) + ".prompt");
    std::ifstream in(path);
    if (!in) throw ConfigError("missing template file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    set.templates_.emplace(name, PromptTemplate::parse(buf.str()));
  }
  return set;
}

const PromptTemplate& TemplateSet::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw ConfigError("unknown template: " + name);
  return it->second;
}

PromptSegments TemplateSet::render_classification(const std::string& question) const {
  if (question.empty()) throw EmptyQuestion();
  return render_tiered(get("classification"), {{"question", question, Tier::IV}});
}

PromptSegments TemplateSet::render_reasoning(const std::string& question,
                                             const Notebook& notebook) const {
  if (question.empty()) throw EmptyQuestion();
  return render_tiered(get("reasoning"), {{"notebook", notebook.rendered(), Tier::II},
                                          {"question", question, Tier::IV}});
}

PromptSegments TemplateSet::render_action(const std::string& task) const {
  return render_tiered(get("action"), {{"task", task, Tier::IV}});
}

PromptSegments TemplateSet::render_action_repair(const std::string& task,
                                                 const std::string& failed_snippet,
                                                 const std::string& error_message) const {
  return render_tiered(get("action_repair"), {{"task", task, Tier::IV},
                                              {"failed_snippet", failed_snippet, Tier::IV},
                                              {"error", error_message, Tier::IV}});
}

PromptSegments TemplateSet::render_baseline_thought(const std::string& question,
                                                    const std::string& history) const {
  return render_tiered(get("baseline_thought"),
                       {{"history", history, Tier::II}, {"question", question, Tier::IV}});
}

PromptSegments TemplateSet::render_baseline_action(const std::string& question,
                                                   const std::string& history) const {
  return render_tiered(get("baseline_action"),
                       {{"history", history, Tier::II}, {"question", question, Tier::IV}});
}

}  // namespace glm
