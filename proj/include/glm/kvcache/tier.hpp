#pragma once

namespace glm {

// Eviction classes for cached blocks, strongest retention first:
//   I   shared template prefixes, never evicted
//   II  live notebook facts of an active session
//   III notebook facts of a finished session
//   IV  transient query/suffix text, first to go
enum class Tier { I = 0, II = 1, III = 2, IV = 3 };

inline const char* to_string(Tier t) {
  switch (t) {
    case Tier::I: return "I";
    case Tier::II: return "II";
    case Tier::III: return "III";
    case Tier::IV: return "IV";
  }
  return "?";
}

}  // namespace glm
