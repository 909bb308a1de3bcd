#pragma once

#include <string>

#include "glm/error.hpp"

namespace glm {

enum class AgentKind { Classification, Reasoning, Action, BaselineThought, BaselineAction };

inline const char* to_string(AgentKind k) {
  switch (k) {
    case AgentKind::Classification: return "classification";
    case AgentKind::Reasoning: return "reasoning";
    case AgentKind::Action: return "action";
    case AgentKind::BaselineThought: return "baseline_thought";
    case AgentKind::BaselineAction: return "baseline_action";
  }
  return "?";
}

inline AgentKind agent_kind_from(const std::string& s) {
  if (s == "classification") return AgentKind::Classification;
  if (s == "reasoning") return AgentKind::Reasoning;
  if (s == "action") return AgentKind::Action;
  if (s == "baseline_thought") return AgentKind::BaselineThought;
  if (s == "baseline_action") return AgentKind::BaselineAction;
  throw GlmError("unknown agent kind: " + s);
}

}  // namespace glm
