#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace glm {

// Node attribute scalars. Integers are kept apart from doubles so that a
// price of 10 renders as "10", never "10.0".
using Scalar = std::variant<std::string, std::int64_t, double, bool>;

// An attribute value is a scalar or a list of scalars.
using AttrValue = std::variant<Scalar, std::vector<Scalar>>;

// Shortest round-trip decimal form.
inline std::string format_double(double d) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  (void)ec;
  return std::string(buf, ptr);
}

// Canonical text form used by vertex-chunk rendering: strings unquoted,
// integers decimal, doubles shortest round-trip, booleans true/false.
inline std::string render_scalar(const Scalar& s) {
  struct V {
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(V{}, s);
}

inline std::string render_attr_value(const AttrValue& v) {
  if (const auto* s = std::get_if<Scalar>(&v)) return render_scalar(*s);
  const auto& list = std::get<std::vector<Scalar>>(v);
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ", ";
    out += render_scalar(list[i]);
  }
  out += "]";
  return out;
}

}  // namespace glm
