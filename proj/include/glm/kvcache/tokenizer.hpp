#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace glm {

// Shared whitespace token model. Every token count in the system (provider
// usage, kv blocks, cost spans) comes from this segmentation.
using TokenSeq = std::vector<std::string>;

inline TokenSeq tokenize(std::string_view text) {
  TokenSeq tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

// Single-space joining; tokenize(detokenize(t)) == t.
inline std::string detokenize(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

inline std::int64_t count_tokens(std::string_view text) {
  std::int64_t n = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size()) ++n;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  }
  return n;
}

}  // namespace glm
