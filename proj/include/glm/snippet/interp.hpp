#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glm/error.hpp"
#include "glm/snippet/ast.hpp"
#include "glm/snippet/graph_api.hpp"
#include "glm/snippet/value.hpp"

namespace glm::snippet {

struct RetrievalCallRecord {
  std::string function;
  std::string args;    // rendered argument values
  std::string result;  // rendered result value
};

struct ExecError {
  ErrorKind category = ErrorKind::CodeExecutionError;
  std::string message;
  SourcePos pos;
};

struct ExecutionResult {
  std::string stdout_text;  // print() output only
  std::vector<RetrievalCallRecord> retrieval_calls;
  std::int64_t steps_used = 0;
  std::optional<ExecError> error;
  bool ok() const { return !error.has_value(); }
};

struct ExecOptions {
  std::int64_t step_budget = 100000;
};

// Deterministic sandboxed evaluation; the graph api is the only external
// effect. Errors land in ExecutionResult::error, never as exceptions.
ExecutionResult execute(const SnippetProgram& program, SnippetGraphApi& api,
                        const ExecOptions& options = {});

}  // namespace glm::snippet
