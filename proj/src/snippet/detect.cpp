#include "glm/snippet/detect.hpp"

#include <cctype>

namespace glm::snippet {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

}  // namespace

std::optional<RetrieveCallSite> detect_retrieve_call_site(std::string_view line) {
  static const std::string_view kName = "RetrieveNode";
  std::size_t search = 0;
  while (true) {
    std::size_t at = line.find(kName, search);
    if (at == std::string_view::npos) return std::nullopt;
    search = at + 1;
    if (at > 0 && ident_char(line[at - 1])) continue;
    std::size_t i = at + kName.size();
    if (i < line.size() && ident_char(line[i])) continue;
    i = skip_spaces(line, i);
    if (i >= line.size() || line[i] != '(') continue;
    i = skip_spaces(line, i + 1);
    if (i >= line.size() || (line[i] != '"' && line[i] != '\'')) continue;
    char quote = line[i];
    ++i;
    std::string query;
    bool closed = false;
    while (i < line.size()) {
      char c = line[i++];
      if (c == quote) {
        closed = true;
        break;
      }
      if (c == '\\' && i < line.size()) {
        char e = line[i++];
        switch (e) {
          case 'n': query += '\n'; break;
          case 't': query += '\t'; break;
          default: query += e; break;
        }
      } else {
        query += c;
      }
    }
    if (!closed) continue;
    i = skip_spaces(line, i);
    if (i >= line.size() || line[i] != ')') continue;
    return RetrieveCallSite{std::move(query), at, i + 1};
  }
}

std::optional<std::string> detect_retrieve_call(std::string_view line) {
  auto site = detect_retrieve_call_site(line);
  if (!site) return std::nullopt;
  return std::move(site->query);
}

}  // namespace glm::snippet
