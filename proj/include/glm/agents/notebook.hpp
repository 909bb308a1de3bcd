#pragma once

#include <string>
#include <vector>

namespace glm {

struct Fact {
  std::string source;  // retrieval call id / producing step
  std::string text;
};

// Append-only fact accumulator. Existing entries are never mutated or
// reordered, so each rendering is a byte-prefix of every later one.
class Notebook {
 public:
  void append(Fact fact) { facts_.push_back(std::move(fact)); }

  const std::vector<Fact>& facts() const { return facts_; }
  bool empty() const { return facts_.empty(); }
  std::size_t size() const { return facts_.size(); }

  std::string rendered() const {
    std::string out;
    for (const auto& f : facts_) out += f.text;
    return out;
  }

 private:
  std::vector<Fact> facts_;
};

}  // namespace glm
