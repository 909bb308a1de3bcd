#include <string>

#include "glm/attr.hpp"
#include "glm/snippet/ast.hpp"

namespace glm::snippet {

// Canonical source form of a parsed program; parse(to_source(p)) reproduces p.
namespace {

std::string expr_to_source(const Expr& e);

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::In: return "in";
    case BinOp::BitAnd: return "&";
    case BinOp::BitOr: return "|";
  }
  return "?";
}

std::string expr_list(const std::vector<ExprPtr>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += expr_to_source(*items[i]);
  }
  return out;
}

std::string expr_to_source(const Expr& e) {
  struct V {
    std::string operator()(const StringLit& n) const { return quote(n.value); }
    std::string operator()(const IntLit& n) const { return std::to_string(n.value); }
    std::string operator()(const FloatLit& n) const { return format_double(n.value); }
    std::string operator()(const BoolLit& n) const { return n.value ? "True" : "False"; }
    std::string operator()(const NameRef& n) const { return n.name; }
    std::string operator()(const BinExpr& n) const {
      return "(" + expr_to_source(*n.lhs) + " " + op_text(n.op) + " " +
             expr_to_source(*n.rhs) + ")";
    }
    std::string operator()(const NegExpr& n) const { return "(-" + expr_to_source(*n.operand) + ")"; }
    std::string operator()(const CallExpr& n) const { return n.callee + "(" + expr_list(n.args) + ")"; }
    std::string operator()(const IndexExpr& n) const {
      return expr_to_source(*n.base) + "[" + expr_to_source(*n.index) + "]";
    }
    std::string operator()(const ListExpr& n) const { return "[" + expr_list(n.items) + "]"; }
    std::string operator()(const SetExpr& n) const { return "{" + expr_list(n.items) + "}"; }
    std::string operator()(const DictExpr& n) const {
      if (n.items.empty()) return "{}";
      std::string out = "{";
      for (std::size_t i = 0; i < n.items.size(); ++i) {
        if (i) out += ", ";
        out += expr_to_source(*n.items[i].first) + ": " + expr_to_source(*n.items[i].second);
      }
      return out + "}";
    }
  };
  return std::visit(V{}, e.node);
}

void block_to_source(const Block& block, int indent, std::string& out);

void stmt_to_source(const Stmt& stmt, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
  struct V {
    const std::string& pad;
    int indent;
    std::string& out;
    void operator()(const AssignStmt& s) const {
      out += pad + s.name + " = " + expr_to_source(*s.value) + "\n";
    }
    void operator()(const ForStmt& s) const {
      out += pad + "for " + s.var + " in " + expr_to_source(*s.iterable) + ":\n";
      block_to_source(s.body, indent + 1, out);
    }
    void operator()(const IfStmt& s) const {
      for (std::size_t i = 0; i < s.arms.size(); ++i) {
        const IfArm& arm = s.arms[i];
        if (i == 0)
          out += pad + "if " + expr_to_source(*arm.cond) + ":\n";
        else if (arm.cond)
          out += pad + "elif " + expr_to_source(*arm.cond) + ":\n";
        else
          out += pad + "else:\n";
        block_to_source(arm.body, indent + 1, out);
      }
    }
    void operator()(const PrintStmt& s) const { out += pad + "print(" + expr_list(s.args) + ")\n"; }
    void operator()(const ExprStmt& s) const { out += pad + expr_to_source(*s.expr) + "\n"; }
  };
  std::visit(V{pad, indent, out}, stmt.node);
}

void block_to_source(const Block& block, int indent, std::string& out) {
  for (const auto& s : block) stmt_to_source(*s, indent, out);
}

}  // namespace

std::string to_source(const SnippetProgram& program) {
  std::string out;
  block_to_source(program.statements, 0, out);
  return out;
}

}  // namespace glm::snippet
