#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "glm/error.hpp"

namespace glm::snippet {

struct SourcePos {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
};

class ParseError : public GlmError {
 public:
  ParseError(SourcePos pos, const std::string& message)
      : GlmError("parse error at " + std::to_string(pos.line) + ":" +
                 std::to_string(pos.col) + ": " + message),
        pos(pos) {}
  SourcePos pos;
};

enum class BinOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, In, BitAnd, BitOr };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct StringLit { std::string value; };
struct IntLit { std::int64_t value; };
struct FloatLit { double value; };
struct BoolLit { bool value; };
struct NameRef { std::string name; };
struct BinExpr { BinOp op; ExprPtr lhs, rhs; };
struct NegExpr { ExprPtr operand; };
struct CallExpr { std::string callee; std::vector<ExprPtr> args; };
struct IndexExpr { ExprPtr base, index; };
struct ListExpr { std::vector<ExprPtr> items; };
struct SetExpr { std::vector<ExprPtr> items; };
struct DictExpr { std::vector<std::pair<ExprPtr, ExprPtr>> items; };

struct Expr {
  SourcePos pos;
  std::variant<StringLit, IntLit, FloatLit, BoolLit, NameRef, BinExpr, NegExpr,
               CallExpr, IndexExpr, ListExpr, SetExpr, DictExpr>
      node;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct AssignStmt { std::string name; ExprPtr value; };
struct ForStmt { std::string var; ExprPtr iterable; Block body; };
struct IfArm { ExprPtr cond; Block body; };  // null cond marks the else arm
struct IfStmt { std::vector<IfArm> arms; };
struct PrintStmt { std::vector<ExprPtr> args; };
struct ExprStmt { ExprPtr expr; };

struct Stmt {
  SourcePos pos;
  std::variant<AssignStmt, ForStmt, IfStmt, PrintStmt, ExprStmt> node;
};

struct SnippetProgram {
  Block statements;
};

struct ParseOptions {
  int max_loop_depth = 3;
};

// Builtin surface: the five retrieval functions plus a handful of helpers.
bool is_builtin(const std::string& name);
bool is_retrieval_builtin(const std::string& name);

SnippetProgram parse(const std::string& source, const ParseOptions& options = {});

// Canonical source form; parse(to_source(p)) reproduces p.
std::string to_source(const SnippetProgram& program);

}  // namespace glm::snippet
