#include "glm/snippet/value.hpp"

namespace glm::snippet {

ScalarKey ScalarKey::of_bool(bool b) {
  ScalarKey k;
  k.rank_ = Rank::Bool;
  k.bool_ = b;
  return k;
}

ScalarKey ScalarKey::of_int(std::int64_t i) {
  ScalarKey k;
  k.rank_ = Rank::Number;
  k.is_int_ = true;
  k.int_ = i;
  k.double_ = static_cast<double>(i);
  return k;
}

ScalarKey ScalarKey::of_double(double d) {
  ScalarKey k;
  k.rank_ = Rank::Number;
  k.is_int_ = false;
  k.double_ = d;
  return k;
}

ScalarKey ScalarKey::of_text(std::string s, bool node_id) {
  ScalarKey k;
  k.rank_ = Rank::Text;
  k.node_id_ = node_id;
  k.text_ = std::move(s);
  return k;
}

bool ScalarKey::operator<(const ScalarKey& other) const {
  if (rank_ != other.rank_) return rank_ < other.rank_;
  switch (rank_) {
    case Rank::Bool:
      return bool_ < other.bool_;
    case Rank::Number:
      if (is_int_ && other.is_int_) return int_ < other.int_;
      return double_ < other.double_;
    case Rank::Text:
      return text_ < other.text_;
  }
  return false;
}

bool ScalarKey::operator==(const ScalarKey& other) const {
  return !(*this < other) && !(other < *this);
}

Value ScalarKey::to_value() const {
  switch (rank_) {
    case Rank::Bool:
      return Value::boolean(bool_);
    case Rank::Number:
      return is_int_ ? Value::integer(int_) : Value::real(double_);
    case Rank::Text:
      return node_id_ ? Value::node_id(text_) : Value::str(text_);
  }
  return Value::missing();
}

std::string ScalarKey::render() const { return to_value().render(); }

Value Value::from_scalar(const Scalar& s) {
  struct V {
    Value operator()(const std::string& v) const { return Value::str(v); }
    Value operator()(std::int64_t v) const { return Value::integer(v); }
    Value operator()(double v) const { return Value::real(v); }
    Value operator()(bool v) const { return Value::boolean(v); }
  };
  return std::visit(V{}, s);
}

Value Value::from_attr(const AttrValue& av) {
  if (const auto* s = std::get_if<Scalar>(&av)) return from_scalar(*s);
  List items;
  for (const auto& s : std::get<std::vector<Scalar>>(av)) items.push_back(from_scalar(s));
  return Value::list(std::move(items));
}

std::string Value::render() const {
  struct V {
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "True" : "False"; }
    std::string operator()(const MissingV&) const { return "Missing"; }
    std::string operator()(const NodeIdV& v) const { return v.id; }
    std::string operator()(const List& v) const {
      std::string out = "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].render();
      }
      return out + "]";
    }
    std::string operator()(const SetV& v) const {
      if (v.members.empty()) return "set()";
      std::string out = "{";
      bool first = true;
      for (const auto& m : v.members) {
        if (!first) out += ", ";
        first = false;
        out += m.render();
      }
      return out + "}";
    }
    std::string operator()(const DictV& v) const {
      std::string out = "{";
      bool first = true;
      for (const auto& [k, val] : v.entries) {
        if (!first) out += ", ";
        first = false;
        out += k.render() + ": " + val.render();
      }
      return out + "}";
    }
  };
  return std::visit(V{}, repr_);
}

bool values_equal(const Value& a, const Value& b) {
  if (a.is_missing() || b.is_missing()) return false;
  if (a.is_number() && b.is_number()) {
    const auto* ai = std::get_if<std::int64_t>(&a.repr());
    const auto* bi = std::get_if<std::int64_t>(&b.repr());
    if (ai && bi) return *ai == *bi;
    return a.as_double() == b.as_double();
  }
  if (a.is_text() && b.is_text()) return a.text() == b.text();
  const auto* ab = std::get_if<bool>(&a.repr());
  const auto* bb = std::get_if<bool>(&b.repr());
  if (ab && bb) return *ab == *bb;
  const auto* al = std::get_if<List>(&a.repr());
  const auto* bl = std::get_if<List>(&b.repr());
  if (al && bl) {
    if (al->size() != bl->size()) return false;
    for (std::size_t i = 0; i < al->size(); ++i)
      if (!values_equal((*al)[i], (*bl)[i])) return false;
    return true;
  }
  const auto* as = std::get_if<SetV>(&a.repr());
  const auto* bs = std::get_if<SetV>(&b.repr());
  if (as && bs) return as->members == bs->members;
  return false;
}

std::string render_values(const std::vector<Value>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i].render();
  }
  return out;
}

}  // namespace glm::snippet
