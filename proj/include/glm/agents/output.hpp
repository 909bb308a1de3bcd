#pragma once

#include <string>
#include <variant>

namespace glm {

struct Classified {
  bool deterministic;
};
struct MissingInfo {
  std::string text;
};
struct Finish {
  std::string answer;
};
struct Snippet {
  std::string source;
};

using AgentOutput = std::variant<Classified, MissingInfo, Finish, Snippet>;

// "yes"/"no" by case-insensitive leading token; anything else is
// UnexpectedAgentOutput.
Classified parse_classification(const std::string& raw);

// First line starting "Finish:" wins over "Missing:"; neither marker is
// UnexpectedAgentOutput.
std::variant<MissingInfo, Finish> parse_reasoning(const std::string& raw);

// First fenced code block (``` ... ```); no fence is UnexpectedAgentOutput.
Snippet parse_action(const std::string& raw);

}  // namespace glm
