#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "glm/agents/kind.hpp"
#include "glm/agents/notebook.hpp"
#include "glm/kvcache/tier.hpp"

namespace glm {

// A rendered prompt carved into (text, tier) segments; segment boundaries are
// the tier boundaries the kv cache needs. text() is the exact prompt.
struct PromptSegments {
  std::vector<std::pair<std::string, Tier>> parts;

  std::string text() const {
    std::string out;
    for (const auto& [t, tier] : parts) out += t;
    return out;
  }
};

// Text asset with {{slot}} placeholders. The shared prefix is the literal
// text before the first slot and stays constant per deployment.
class PromptTemplate {
 public:
  static PromptTemplate parse(std::string text);

  std::string render(const std::map<std::string, std::string>& slots) const;
  const std::string& shared_prefix() const { return shared_prefix_; }
  const std::vector<std::string>& slot_names() const { return slot_names_; }

  struct Segment {
    bool is_slot;
    std::string value;  // literal text or slot name
  };
  const std::vector<Segment>& segments() const { return segments_; }

 private:
  std::vector<Segment> segments_;
  std::string shared_prefix_;
  std::vector<std::string> slot_names_;
};

// The agent prompt assets, loaded from a directory of <name>.prompt files.
class TemplateSet {
 public:
  static TemplateSet load_dir(const std::string& dir);
  // Built-in copies of the shipped assets, for tests and trace construction.
  static TemplateSet builtin();

  PromptSegments render_classification(const std::string& question) const;
  PromptSegments render_reasoning(const std::string& question, const Notebook& notebook) const;
  PromptSegments render_action(const std::string& task) const;
  PromptSegments render_action_repair(const std::string& task, const std::string& failed_snippet,
                                      const std::string& error_message) const;
  PromptSegments render_baseline_thought(const std::string& question,
                                         const std::string& history) const;
  PromptSegments render_baseline_action(const std::string& question,
                                        const std::string& history) const;

  const PromptTemplate& get(const std::string& name) const;

 private:
  std::map<std::string, PromptTemplate> templates_;
};

}  // namespace glm
