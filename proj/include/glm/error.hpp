#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glm {

// Terminal failure classes a session can end with.
enum class ErrorKind {
  UnexpectedAgentOutput,
  RetrievalProcessError,
  CodeExecutionError,
  StepLimitExceeded,
  ProviderTimeout,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnexpectedAgentOutput: return "unexpected_agent_output";
    case ErrorKind::RetrievalProcessError: return "retrieval_process_error";
    case ErrorKind::CodeExecutionError: return "code_execution_error";
    case ErrorKind::StepLimitExceeded: return "step_limit_exceeded";
    case ErrorKind::ProviderTimeout: return "provider_timeout";
  }
  return "unknown";
}

class GlmError : public std::runtime_error {
 public:
  explicit GlmError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- graph-store ----

class MalformedRecord : public GlmError {
 public:
  MalformedRecord(std::size_t line_no, const std::string& why)
      : GlmError("malformed record at line " + std::to_string(line_no) + ": " + why),
        line_no(line_no) {}
  std::size_t line_no;
};

class DanglingEdge : public GlmError {
 public:
  DanglingEdge(std::string src_, std::string dst_)
      : GlmError("edge references unknown node: " + src_ + " -> " + dst_),
        src(std::move(src_)), dst(std::move(dst_)) {}
  std::string src, dst;
};

class DuplicateNode : public GlmError {
 public:
  explicit DuplicateNode(std::string id_)
      : GlmError("duplicate node id: " + id_), id(std::move(id_)) {}
  std::string id;
};

class UnknownNode : public GlmError {
 public:
  explicit UnknownNode(std::string id_)
      : GlmError("unknown node id: " + id_), id(std::move(id_)) {}
  std::string id;
};

// ---- embed-index ----

class EmptyIndex : public GlmError {
 public:
  EmptyIndex() : GlmError("vector index is empty") {}
};

// ---- retriever ----

class RetrievalError : public GlmError {
 public:
  explicit RetrievalError(const std::string& msg)
      : GlmError(msg) {}
  ErrorKind kind = ErrorKind::RetrievalProcessError;
};

// ---- llm-backend ----

class ProviderTimeoutError : public GlmError {
 public:
  explicit ProviderTimeoutError(const std::string& msg) : GlmError(msg) {}
  ErrorKind kind = ErrorKind::ProviderTimeout;
};

class ProviderProtocolError : public GlmError {
 public:
  explicit ProviderProtocolError(const std::string& msg) : GlmError(msg) {}
};

// ---- agents ----

class EmptyQuestion : public GlmError {
 public:
  EmptyQuestion() : GlmError("question must be non-empty") {}
};

class UnexpectedAgentOutput : public GlmError {
 public:
  explicit UnexpectedAgentOutput(const std::string& msg) : GlmError(msg) {}
  ErrorKind kind = ErrorKind::UnexpectedAgentOutput;
};

// ---- kvcache ----

class CacheExhausted : public GlmError {
 public:
  explicit CacheExhausted(const std::string& msg) : GlmError(msg) {}
};

// ---- bench / config ----

class GraphTooSmall : public GlmError {
 public:
  explicit GraphTooSmall(const std::string& msg) : GlmError(msg) {}
};

class WorkloadMismatch : public GlmError {
 public:
  explicit WorkloadMismatch(const std::string& msg) : GlmError(msg) {}
};

class ConfigError : public GlmError {
 public:
  explicit ConfigError(const std::string& msg) : GlmError(msg) {}
};

// ---- orchestrator ----

class InvalidState : public GlmError {
 public:
  explicit InvalidState(const std::string& msg) : GlmError(msg) {}
};

}  // namespace glm
