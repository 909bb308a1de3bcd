#include "glm/agents/output.hpp"

#include <cctype>
#include <optional>

#include "glm/error.hpp"

namespace glm {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t nl = s.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(s.substr(start));
      break;
    }
    lines.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

Classified parse_classification(const std::string& raw) {
  std::size_t i = raw.find_first_not_of(" \t\r\n");
  if (i == std::string::npos) throw UnexpectedAgentOutput("empty classification response");
  std::string token;
  while (i < raw.size() && std::isalpha(static_cast<unsigned char>(raw[i])))
    token += static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i++])));
  if (token == "yes") return Classified{true};
  if (token == "no") return Classified{false};
  throw UnexpectedAgentOutput("classification must start with yes or no, got: " + trim(raw));
}

std::variant<MissingInfo, Finish> parse_reasoning(const std::string& raw) {
  std::optional<std::string> missing;
  for (const auto& line : lines_of(raw)) {
    std::string t = trim(line);
    if (t.rfind("Finish:", 0) == 0) return Finish{trim(t.substr(7))};
    if (!missing && t.rfind("Missing:", 0) == 0) missing = trim(t.substr(8));
  }
  if (missing) return MissingInfo{*missing};
  throw UnexpectedAgentOutput("reasoning response has neither Finish: nor Missing: marker");
}

Snippet parse_action(const std::string& raw) {
  std::size_t open = raw.find("```");
  if (open == std::string::npos)
    throw UnexpectedAgentOutput("action response has no fenced code block");
  std::size_t body = raw.find('\n', open);
  if (body == std::string::npos)
    throw UnexpectedAgentOutput("unterminated code fence");
  ++body;  // content begins after the fence line (language tag ignored)
  std::size_t close = raw.find("```", body);
  if (close == std::string::npos)
    throw UnexpectedAgentOutput("unterminated code fence");
  return Snippet{raw.substr(body, close - body)};
}

}  // namespace glm
