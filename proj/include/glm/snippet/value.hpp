#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "glm/attr.hpp"

namespace glm::snippet {

struct MissingV {};
struct NodeIdV {
  std::string id;
};

class Value;
using List = std::vector<Value>;

// Set members and dict keys are scalars with a total order (type rank, then
// value). Ints and doubles share the numeric rank and compare by value, so
// {1, 1.0} collapses to one member. Node ids order as their strings.
class ScalarKey {
 public:
  enum class Rank { Bool = 0, Number = 1, Text = 2 };

  static ScalarKey of_bool(bool b);
  static ScalarKey of_int(std::int64_t i);
  static ScalarKey of_double(double d);
  static ScalarKey of_text(std::string s, bool node_id);

  bool operator<(const ScalarKey& other) const;
  bool operator==(const ScalarKey& other) const;

  Value to_value() const;
  std::string render() const;

 private:
  Rank rank_ = Rank::Bool;
  bool bool_ = false;
  bool is_int_ = false;
  std::int64_t int_ = 0;
  double double_ = 0.0;
  bool node_id_ = false;
  std::string text_;
};

struct SetV {
  std::set<ScalarKey> members;
  bool operator==(const SetV&) const = default;
};
struct DictV {
  std::map<ScalarKey, Value> entries;
};

class Value {
 public:
  using Repr = std::variant<std::string, std::int64_t, double, bool, MissingV,
                            NodeIdV, List, SetV, DictV>;

  Value() : repr_(MissingV{}) {}
  Value(Repr r) : repr_(std::move(r)) {}

  static Value str(std::string s) { return Value(Repr(std::move(s))); }
  static Value integer(std::int64_t i) { return Value(Repr(i)); }
  static Value real(double d) { return Value(Repr(d)); }
  static Value boolean(bool b) { return Value(Repr(b)); }
  static Value missing() { return Value(Repr(MissingV{})); }
  static Value node_id(std::string id) { return Value(Repr(NodeIdV{std::move(id)})); }
  static Value list(List items) { return Value(Repr(std::move(items))); }
  static Value set(SetV s) { return Value(Repr(std::move(s))); }
  static Value dict(DictV d) { return Value(Repr(std::move(d))); }

  static Value from_attr(const AttrValue& av);
  static Value from_scalar(const Scalar& s);

  const Repr& repr() const { return repr_; }
  Repr& repr() { return repr_; }

  bool is_missing() const { return std::holds_alternative<MissingV>(repr_); }
  bool is_number() const {
    return std::holds_alternative<std::int64_t>(repr_) || std::holds_alternative<double>(repr_);
  }
  bool is_text() const {
    return std::holds_alternative<std::string>(repr_) || std::holds_alternative<NodeIdV>(repr_);
  }
  const std::string& text() const {
    if (const auto* n = std::get_if<NodeIdV>(&repr_)) return n->id;
    return std::get<std::string>(repr_);
  }
  double as_double() const {
    if (const auto* i = std::get_if<std::int64_t>(&repr_)) return static_cast<double>(*i);
    return std::get<double>(repr_);
  }

  // Deterministic display form, shared by print() and notebook facts.
  std::string render() const;

 private:
  Repr repr_;
};

// Equality used by ==, in, and list comparison. Missing never equals
// anything, including Missing.
bool values_equal(const Value& a, const Value& b);

std::string render_values(const std::vector<Value>& values, const char* sep);

}  // namespace glm::snippet
