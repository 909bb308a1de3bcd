#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

#include "glm/snippet/ast.hpp"

namespace glm::snippet {

namespace {

enum class TokKind { Ident, Keyword, Int, Float, Str, Op, Newline, Indent, Dedent, End };

struct Token {
  TokKind kind;
  std::string text;
  std::int64_t int_value = 0;
  double float_value = 0.0;
  SourcePos pos;
};

const char* kKeywords[] = {"for", "in", "if", "elif", "else", "True", "False"};

bool is_keyword(const std::string& s) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), s) != std::end(kKeywords);
}

// Line-oriented lexer with 4-space indentation blocks. Newlines inside
// brackets are ignored so multi-line calls lex as one logical line.
class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> toks;
    std::vector<int> indents{0};
    std::size_t i = 0;
    int line = 1;
    int bracket_depth = 0;

    auto pos_at = [&](std::size_t offset, int ln) {
      return SourcePos{ln, static_cast<int>(offset - line_start_ + 1)};
    };

    bool at_line_start = true;
    while (i <= src_.size()) {
      if (at_line_start && bracket_depth == 0) {
        line_start_ = i;
        int spaces = 0;
        while (i < src_.size() && (src_[i] == ' ' || src_[i] == '\t')) {
          if (src_[i] == '\t')
            throw ParseError({line, spaces + 1}, "tabs are not allowed in indentation");
          ++spaces;
          ++i;
        }
        // blank or comment-only lines carry no indentation structure
        if (i >= src_.size() || src_[i] == '\n' || src_[i] == '#' || src_[i] == '\r') {
          while (i < src_.size() && src_[i] != '\n') ++i;
          if (i < src_.size()) {
            ++i;
            ++line;
            continue;
          }
          break;
        }
        if (spaces % 4 != 0)
          throw ParseError({line, spaces + 1}, "indentation must be a multiple of 4 spaces");
        int level = spaces / 4;
        if (level > indents.back()) {
          if (level != indents.back() + 1)
            throw ParseError({line, spaces + 1}, "indentation increased by more than one level");
          indents.push_back(level);
          toks.push_back({TokKind::Indent, "", 0, 0, {line, 1}});
        } else {
          while (level < indents.back()) {
            indents.pop_back();
            toks.push_back({TokKind::Dedent, "", 0, 0, {line, 1}});
          }
          if (level != indents.back())
            throw ParseError({line, spaces + 1}, "unindent does not match any outer level");
        }
        at_line_start = false;
        continue;
      }

      if (i >= src_.size()) break;
      char c = src_[i];

      if (c == '\n') {
        ++i;
        ++line;
        line_start_ = i;
        if (bracket_depth == 0) {
          toks.push_back({TokKind::Newline, "", 0, 0, {line - 1, 0}});
          at_line_start = true;
        }
        continue;
      }
      if (c == ' ' || c == '\r') {
        ++i;
        continue;
      }
      if (c == '#') {
        while (i < src_.size() && src_[i] != '\n') ++i;
        continue;
      }

      SourcePos pos = pos_at(i, line);
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = i;
        while (i < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_'))
          ++i;
        std::string word = src_.substr(start, i - start);
        toks.push_back({is_keyword(word) ? TokKind::Keyword : TokKind::Ident, word, 0, 0, pos});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = i;
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        bool is_float = false;
        if (i + 1 < src_.size() && src_[i] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[i + 1]))) {
          is_float = true;
          ++i;
          while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        }
        std::string text = src_.substr(start, i - start);
        Token t{is_float ? TokKind::Float : TokKind::Int, text, 0, 0, pos};
        if (is_float) {
          t.float_value = std::strtod(text.c_str(), nullptr);
        } else {
          auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), t.int_value);
          if (ec != std::errc()) throw ParseError(pos, "integer literal out of range");
        }
        toks.push_back(std::move(t));
        continue;
      }
      if (c == '"' || c == '\'') {
        char quote = c;
        ++i;
        std::string value;
        while (true) {
          if (i >= src_.size() || src_[i] == '\n')
            throw ParseError(pos, "unterminated string literal");
          char d = src_[i++];
          if (d == quote) break;
          if (d == '\\') {
            if (i >= src_.size()) throw ParseError(pos, "unterminated string literal");
            char e = src_[i++];
            switch (e) {
              case 'n': value += '\n'; break;
              case 't': value += '\t'; break;
              case '\\': value += '\\'; break;
              case '"': value += '"'; break;
              case '\'': value += '\''; break;
              default: throw ParseError(pos, std::string("unknown escape \\") + e);
            }
          } else {
            value += d;
          }
        }
        toks.push_back({TokKind::Str, value, 0, 0, pos});
        continue;
      }

      auto two = [&](const char* op) {
        return i + 1 < src_.size() && src_[i] == op[0] && src_[i + 1] == op[1];
      };
      if (two("==") || two("!=") || two("<=") || two(">=")) {
        toks.push_back({TokKind::Op, src_.substr(i, 2), 0, 0, pos});
        i += 2;
        continue;
      }
      if (std::string("+-*/<>=&|()[]{},:").find(c) != std::string::npos) {
        if (c == '(' || c == '[' || c == '{') ++bracket_depth;
        if (c == ')' || c == ']' || c == '}') bracket_depth = std::max(0, bracket_depth - 1);
        toks.push_back({TokKind::Op, std::string(1, c), 0, 0, pos});
        ++i;
        continue;
      }
      throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }

    if (!toks.empty() && toks.back().kind != TokKind::Newline)
      toks.push_back({TokKind::Newline, "", 0, 0, {line, 0}});
    while (indents.size() > 1) {
      indents.pop_back();
      toks.push_back({TokKind::Dedent, "", 0, 0, {line, 0}});
    }
    toks.push_back({TokKind::End, "", 0, 0, {line, 0}});
    return toks;
  }

 private:
  const std::string& src_;
  std::size_t line_start_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& options)
      : toks_(std::move(toks)), options_(options) {}

  SnippetProgram run() {
    SnippetProgram program;
    skip_newlines();
    while (!at(TokKind::End)) {
      program.statements.push_back(statement());
      skip_newlines();
    }
    if (program.statements.empty())
      throw ParseError({1, 1}, "empty program");
    return program;
  }

 private:
  const Token& peek(int ahead = 0) const {
    std::size_t idx = std::min(pos_ + static_cast<std::size_t>(ahead), toks_.size() - 1);
    return toks_[idx];
  }
  const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at(TokKind k) const { return peek().kind == k; }
  bool at_op(const char* op) const { return peek().kind == TokKind::Op && peek().text == op; }
  bool at_kw(const char* kw) const { return peek().kind == TokKind::Keyword && peek().text == kw; }

  void expect_op(const char* op) {
    if (!at_op(op)) throw ParseError(peek().pos, std::string("expected '") + op + "'");
    advance();
  }
  void expect_newline() {
    if (!at(TokKind::Newline)) throw ParseError(peek().pos, "expected end of line");
    advance();
  }
  void skip_newlines() {
    while (at(TokKind::Newline)) advance();
  }

  StmtPtr statement() {
    if (at_kw("for")) return for_stmt();
    if (at_kw("if")) return if_stmt();
    return simple_stmt();
  }

  StmtPtr simple_stmt() {
    SourcePos pos = peek().pos;
    if (at(TokKind::Ident) && peek().text == "print" && peek(1).kind == TokKind::Op &&
        peek(1).text == "(") {
      advance();
      advance();
      PrintStmt print;
      if (!at_op(")")) {
        print.args.push_back(expression());
        while (at_op(",")) {
          advance();
          print.args.push_back(expression());
        }
      }
      expect_op(")");
      expect_newline();
      auto s = std::make_unique<Stmt>();
      s->pos = pos;
      s->node = std::move(print);
      return s;
    }
    if (at(TokKind::Ident) && peek(1).kind == TokKind::Op && peek(1).text == "=") {
      std::string name = advance().text;
      if (is_builtin(name))
        throw ParseError(pos, "cannot assign to builtin '" + name + "'");
      advance();
      AssignStmt assign{name, expression()};
      expect_newline();
      auto s = std::make_unique<Stmt>();
      s->pos = pos;
      s->node = std::move(assign);
      return s;
    }
    ExprStmt es{expression()};
    expect_newline();
    auto s = std::make_unique<Stmt>();
    s->pos = pos;
    s->node = std::move(es);
    return s;
  }

  StmtPtr for_stmt() {
    SourcePos pos = peek().pos;
    advance();
    if (++loop_depth_ > options_.max_loop_depth)
      throw ParseError(pos, "loop nesting exceeds depth " + std::to_string(options_.max_loop_depth));
    if (!at(TokKind::Ident)) throw ParseError(peek().pos, "expected loop variable");
    std::string var = advance().text;
    if (is_builtin(var)) throw ParseError(pos, "cannot assign to builtin '" + var + "'");
    if (!at_kw("in")) throw ParseError(peek().pos, "expected 'in'");
    advance();
    ForStmt fs;
    fs.var = std::move(var);
    fs.iterable = expression();
    expect_op(":");
    fs.body = block();
    --loop_depth_;
    auto s = std::make_unique<Stmt>();
    s->pos = pos;
    s->node = std::move(fs);
    return s;
  }

  StmtPtr if_stmt() {
    SourcePos pos = peek().pos;
    advance();
    IfStmt is;
    IfArm first;
    first.cond = expression();
    expect_op(":");
    first.body = block();
    is.arms.push_back(std::move(first));
    while (at_kw("elif")) {
      advance();
      IfArm arm;
      arm.cond = expression();
      expect_op(":");
      arm.body = block();
      is.arms.push_back(std::move(arm));
    }
    if (at_kw("else")) {
      advance();
      expect_op(":");
      IfArm arm;
      arm.body = block();
      is.arms.push_back(std::move(arm));
    }
    auto s = std::make_unique<Stmt>();
    s->pos = pos;
    s->node = std::move(is);
    return s;
  }

  Block block() {
    expect_newline();
    if (!at(TokKind::Indent)) throw ParseError(peek().pos, "expected an indented block");
    advance();
    Block body;
    while (!at(TokKind::Dedent) && !at(TokKind::End)) {
      body.push_back(statement());
      skip_newlines();
    }
    if (at(TokKind::Dedent)) advance();
    return body;
  }

  // comparison := bitor (compop bitor)?
  ExprPtr expression() {
    ExprPtr lhs = bit_or();
    std::optional<BinOp> op;
    if (at_op("==")) op = BinOp::Eq;
    else if (at_op("!=")) op = BinOp::Ne;
    else if (at_op("<")) op = BinOp::Lt;
    else if (at_op("<=")) op = BinOp::Le;
    else if (at_op(">")) op = BinOp::Gt;
    else if (at_op(">=")) op = BinOp::Ge;
    else if (at_kw("in")) op = BinOp::In;
    if (!op) return lhs;
    SourcePos pos = peek().pos;
    advance();
    ExprPtr rhs = bit_or();
    return make_bin(*op, std::move(lhs), std::move(rhs), pos);
  }

  ExprPtr bit_or() {
    ExprPtr lhs = bit_and();
    while (at_op("|")) {
      SourcePos pos = advance().pos;
      lhs = make_bin(BinOp::BitOr, std::move(lhs), bit_and(), pos);
    }
    return lhs;
  }

  ExprPtr bit_and() {
    ExprPtr lhs = additive();
    while (at_op("&")) {
      SourcePos pos = advance().pos;
      lhs = make_bin(BinOp::BitAnd, std::move(lhs), additive(), pos);
    }
    return lhs;
  }

  ExprPtr additive() {
    ExprPtr lhs = term();
    while (at_op("+") || at_op("-")) {
      BinOp op = peek().text == "+" ? BinOp::Add : BinOp::Sub;
      SourcePos pos = advance().pos;
      lhs = make_bin(op, std::move(lhs), term(), pos);
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (at_op("*") || at_op("/")) {
      BinOp op = peek().text == "*" ? BinOp::Mul : BinOp::Div;
      SourcePos pos = advance().pos;
      lhs = make_bin(op, std::move(lhs), unary(), pos);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at_op("-")) {
      SourcePos pos = advance().pos;
      auto e = std::make_unique<Expr>();
      e->pos = pos;
      e->node = NegExpr{unary()};
      return e;
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr base = atom();
    while (true) {
      if (at_op("(")) {
        SourcePos pos = peek().pos;
        const auto* name = std::get_if<NameRef>(&base->node);
        if (name == nullptr) throw ParseError(pos, "only builtin functions can be called");
        if (!is_builtin(name->name))
          throw ParseError(base->pos, "unknown function '" + name->name + "'");
        if (name->name == "print")
          throw ParseError(base->pos, "print is a statement, not an expression");
        advance();
        CallExpr call;
        call.callee = name->name;
        if (!at_op(")")) {
          call.args.push_back(expression());
          while (at_op(",")) {
            advance();
            call.args.push_back(expression());
          }
        }
        expect_op(")");
        auto e = std::make_unique<Expr>();
        e->pos = base->pos;
        e->node = std::move(call);
        base = std::move(e);
      } else if (at_op("[")) {
        SourcePos pos = advance().pos;
        IndexExpr idx;
        idx.base = std::move(base);
        idx.index = expression();
        expect_op("]");
        auto e = std::make_unique<Expr>();
        e->pos = pos;
        e->node = std::move(idx);
        base = std::move(e);
      } else {
        return base;
      }
    }
  }

  ExprPtr atom() {
    const Token& t = peek();
    auto e = std::make_unique<Expr>();
    e->pos = t.pos;
    switch (t.kind) {
      case TokKind::Int:
        e->node = IntLit{t.int_value};
        advance();
        return e;
      case TokKind::Float:
        e->node = FloatLit{t.float_value};
        advance();
        return e;
      case TokKind::Str:
        e->node = StringLit{t.text};
        advance();
        return e;
      case TokKind::Keyword:
        if (t.text == "True" || t.text == "False") {
          e->node = BoolLit{t.text == "True"};
          advance();
          return e;
        }
        throw ParseError(t.pos, "unexpected keyword '" + t.text + "'");
      case TokKind::Ident:
        e->node = NameRef{t.text};
        advance();
        return e;
      case TokKind::Op:
        if (t.text == "(") {
          advance();
          ExprPtr inner = expression();
          expect_op(")");
          return inner;
        }
        if (t.text == "[") {
          advance();
          ListExpr list;
          if (!at_op("]")) {
            list.items.push_back(expression());
            while (at_op(",")) {
              advance();
              if (at_op("]")) break;  // trailing comma
              list.items.push_back(expression());
            }
          }
          expect_op("]");
          e->node = std::move(list);
          return e;
        }
        if (t.text == "{") {
          advance();
          if (at_op("}")) {  // {} is an empty dict
            advance();
            e->node = DictExpr{};
            return e;
          }
          ExprPtr first = expression();
          if (at_op(":")) {
            advance();
            DictExpr dict;
            dict.items.emplace_back(std::move(first), expression());
            while (at_op(",")) {
              advance();
              ExprPtr k = expression();
              expect_op(":");
              dict.items.emplace_back(std::move(k), expression());
            }
            expect_op("}");
            e->node = std::move(dict);
            return e;
          }
          SetExpr set;
          set.items.push_back(std::move(first));
          while (at_op(",")) {
            advance();
            set.items.push_back(expression());
          }
          expect_op("}");
          e->node = std::move(set);
          return e;
        }
        break;
      default:
        break;
    }
    throw ParseError(t.pos, "expected an expression");
  }

  static ExprPtr make_bin(BinOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
    auto e = std::make_unique<Expr>();
    e->pos = pos;
    e->node = BinExpr{op, std::move(lhs), std::move(rhs)};
    return e;
  }

  std::vector<Token> toks_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  int loop_depth_ = 0;
};

const char* kBuiltins[] = {"RetrieveNode", "NodeInfo", "NodeFeature", "NodeDegree",
                           "NeighbourCheck", "len", "set", "list", "sorted",
                           "sum", "min", "max", "print"};

const char* kRetrievalBuiltins[] = {"RetrieveNode", "NodeInfo", "NodeFeature", "NodeDegree",
                                    "NeighbourCheck"};

}  // namespace

bool is_builtin(const std::string& name) {
  return std::find(std::begin(kBuiltins), std::end(kBuiltins), name) != std::end(kBuiltins);
}

bool is_retrieval_builtin(const std::string& name) {
  return std::find(std::begin(kRetrievalBuiltins), std::end(kRetrievalBuiltins), name) !=
         std::end(kRetrievalBuiltins);
}

SnippetProgram parse(const std::string& source, const ParseOptions& options) {
  Lexer lexer(source);
  Parser parser(lexer.run(), options);
  return parser.run();
}

}  // namespace glm::snippet
