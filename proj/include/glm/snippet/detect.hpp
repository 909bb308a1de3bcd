#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace glm::snippet {

// A syntactically complete RetrieveNode("...") occurrence within one line.
struct RetrieveCallSite {
  std::string query;  // decoded string-literal argument
  std::size_t begin;  // byte offset of 'R' in RetrieveNode
  std::size_t end;    // one past the closing ')'
};

// Returns the first complete RetrieveNode call whose argument is a string
// literal. Incomplete calls and non-literal arguments yield nullopt (those
// resolve synchronously at execution time).
std::optional<RetrieveCallSite> detect_retrieve_call_site(std::string_view line);

// The query text alone.
std::optional<std::string> detect_retrieve_call(std::string_view line);

}  // namespace glm::snippet
