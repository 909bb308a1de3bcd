#include "glm/snippet/interp.hpp"

#include <algorithm>
#include <map>

namespace glm::snippet {

namespace {

struct Interrupt {
  ExecError error;
};

[[noreturn]] void fail(SourcePos pos, const std::string& msg,
                       ErrorKind kind = ErrorKind::CodeExecutionError) {
  throw Interrupt{{kind, msg, pos}};
}

class Interp {
 public:
  Interp(SnippetGraphApi& api, const ExecOptions& opts) : api_(api), opts_(opts) {}

  ExecutionResult run(const SnippetProgram& program) {
    try {
      exec_block(program.statements);
    } catch (const Interrupt& i) {
      result_.error = i.error;
    }
    return std::move(result_);
  }

 private:
  void step(SourcePos pos) {
    if (++result_.steps_used > opts_.step_budget)
      fail(pos, "step budget exceeded (" + std::to_string(opts_.step_budget) + ")");
  }

  void exec_block(const Block& block) {
    for (const auto& stmt : block) exec(*stmt);
  }

  void exec(const Stmt& stmt) {
    step(stmt.pos);
    std::visit([&](const auto& node) { exec_node(stmt.pos, node); }, stmt.node);
  }

  void exec_node(SourcePos, const AssignStmt& s) { env_[s.name] = eval(*s.value); }

  void exec_node(SourcePos pos, const ForStmt& s) {
    Value iterable = eval(*s.iterable);
    std::vector<Value> items = iterate(iterable, pos);
    for (auto& item : items) {
      step(pos);
      env_[s.var] = std::move(item);
      exec_block(s.body);
    }
  }

  void exec_node(SourcePos, const IfStmt& s) {
    for (const auto& arm : s.arms) {
      if (!arm.cond || truthy(eval(*arm.cond))) {
        exec_block(arm.body);
        return;
      }
    }
  }

  void exec_node(SourcePos, const PrintStmt& s) {
    std::vector<Value> vals;
    vals.reserve(s.args.size());
    for (const auto& a : s.args) vals.push_back(eval(*a));
    result_.stdout_text += render_values(vals, " ");
    result_.stdout_text += "\n";
  }

  void exec_node(SourcePos, const ExprStmt& s) { eval(*s.expr); }

  std::vector<Value> iterate(const Value& v, SourcePos pos) {
    if (const auto* l = std::get_if<List>(&v.repr())) return *l;
    if (const auto* s = std::get_if<SetV>(&v.repr())) {
      std::vector<Value> out;
      for (const auto& m : s->members) out.push_back(m.to_value());
      return out;
    }
    fail(pos, "value is not iterable");
  }

  static bool truthy(const Value& v) {
    struct V {
      bool operator()(const std::string& s) const { return !s.empty(); }
      bool operator()(std::int64_t i) const { return i != 0; }
      bool operator()(double d) const { return d != 0.0; }
      bool operator()(bool b) const { return b; }
      bool operator()(const MissingV&) const { return false; }
      bool operator()(const NodeIdV&) const { return true; }
      bool operator()(const List& l) const { return !l.empty(); }
      bool operator()(const SetV& s) const { return !s.members.empty(); }
      bool operator()(const DictV& d) const { return !d.entries.empty(); }
    };
    return std::visit(V{}, v.repr());
  }

  Value eval(const Expr& e) {
    step(e.pos);
    return std::visit([&](const auto& node) { return eval_node(e.pos, node); }, e.node);
  }

  Value eval_node(SourcePos, const StringLit& n) { return Value::str(n.value); }
  Value eval_node(SourcePos, const IntLit& n) { return Value::integer(n.value); }
  Value eval_node(SourcePos, const FloatLit& n) { return Value::real(n.value); }
  Value eval_node(SourcePos, const BoolLit& n) { return Value::boolean(n.value); }

  Value eval_node(SourcePos pos, const NameRef& n) {
    auto it = env_.find(n.name);
    if (it == env_.end()) fail(pos, "name '" + n.name + "' is not defined");
    return it->second;
  }

  Value eval_node(SourcePos pos, const NegExpr& n) {
    Value v = eval(*n.operand);
    if (const auto* i = std::get_if<std::int64_t>(&v.repr())) return Value::integer(-*i);
    if (const auto* d = std::get_if<double>(&v.repr())) return Value::real(-*d);
    if (v.is_missing()) fail(pos, "arithmetic with Missing");
    fail(pos, "unary minus needs a number");
  }

  Value eval_node(SourcePos, const ListExpr& n) {
    List items;
    items.reserve(n.items.size());
    for (const auto& it : n.items) items.push_back(eval(*it));
    return Value::list(std::move(items));
  }

  Value eval_node(SourcePos pos, const SetExpr& n) {
    SetV s;
    for (const auto& it : n.items) s.members.insert(to_key(eval(*it), pos));
    return Value::set(std::move(s));
  }

  Value eval_node(SourcePos pos, const DictExpr& n) {
    DictV d;
    for (const auto& [k, v] : n.items) d.entries[to_key(eval(*k), pos)] = eval(*v);
    return Value::dict(std::move(d));
  }

  Value eval_node(SourcePos pos, const IndexExpr& n) {
    Value base = eval(*n.base);
    Value idx = eval(*n.index);
    if (const auto* l = std::get_if<List>(&base.repr())) {
      const auto* i = std::get_if<std::int64_t>(&idx.repr());
      if (i == nullptr) fail(pos, "list index must be an integer");
      std::int64_t k = *i < 0 ? *i + static_cast<std::int64_t>(l->size()) : *i;
      if (k < 0 || k >= static_cast<std::int64_t>(l->size())) fail(pos, "list index out of range");
      return (*l)[static_cast<std::size_t>(k)];
    }
    if (const auto* d = std::get_if<DictV>(&base.repr())) {
      auto it = d->entries.find(to_key(idx, pos));
      if (it == d->entries.end()) fail(pos, "dict key not found: " + idx.render());
      return it->second;
    }
    if (base.is_text()) {
      const auto* i = std::get_if<std::int64_t>(&idx.repr());
      if (i == nullptr) fail(pos, "string index must be an integer");
      const std::string& s = base.text();
      std::int64_t k = *i < 0 ? *i + static_cast<std::int64_t>(s.size()) : *i;
      if (k < 0 || k >= static_cast<std::int64_t>(s.size())) fail(pos, "string index out of range");
      return Value::str(std::string(1, s[static_cast<std::size_t>(k)]));
    }
    fail(pos, "value is not indexable");
  }

  Value eval_node(SourcePos pos, const BinExpr& n) {
    Value lhs = eval(*n.lhs);
    Value rhs = eval(*n.rhs);
    switch (n.op) {
      case BinOp::Add:
      case BinOp::Sub:
      case BinOp::Mul:
      case BinOp::Div:
        return arith(n.op, lhs, rhs, pos);
      case BinOp::Eq:
      case BinOp::Ne:
      case BinOp::Lt:
      case BinOp::Le:
      case BinOp::Gt:
      case BinOp::Ge:
      case BinOp::In:
        return compare(n.op, lhs, rhs, pos);
      case BinOp::BitAnd:
      case BinOp::BitOr:
        return set_or_bool_op(n.op, lhs, rhs, pos);
    }
    fail(pos, "unknown operator");
  }

  Value arith(BinOp op, const Value& a, const Value& b, SourcePos pos) {
    if (a.is_missing() || b.is_missing()) fail(pos, "arithmetic with Missing");
    if (op == BinOp::Add) {
      if (a.is_text() && b.is_text()) return Value::str(a.text() + b.text());
      const auto* al = std::get_if<List>(&a.repr());
      const auto* bl = std::get_if<List>(&b.repr());
      if (al && bl) {
        List out = *al;
        out.insert(out.end(), bl->begin(), bl->end());
        return Value::list(std::move(out));
      }
    }
    if (!a.is_number() || !b.is_number()) fail(pos, "arithmetic needs numbers");
    const auto* ai = std::get_if<std::int64_t>(&a.repr());
    const auto* bi = std::get_if<std::int64_t>(&b.repr());
    if (op == BinOp::Div) {
      double denom = b.as_double();
      if (denom == 0.0) fail(pos, "division by zero");
      return Value::real(a.as_double() / denom);
    }
    if (ai && bi) {
      switch (op) {
        case BinOp::Add: return Value::integer(*ai + *bi);
        case BinOp::Sub: return Value::integer(*ai - *bi);
        case BinOp::Mul: return Value::integer(*ai * *bi);
        default: break;
      }
    }
    double x = a.as_double(), y = b.as_double();
    switch (op) {
      case BinOp::Add: return Value::real(x + y);
      case BinOp::Sub: return Value::real(x - y);
      case BinOp::Mul: return Value::real(x * y);
      default: break;
    }
    fail(pos, "unknown arithmetic operator");
  }

  Value compare(BinOp op, const Value& a, const Value& b, SourcePos pos) {
    // Any comparison touching Missing is false, != included.
    if (a.is_missing() || b.is_missing()) return Value::boolean(false);
    switch (op) {
      case BinOp::Eq: return Value::boolean(values_equal(a, b));
      case BinOp::Ne: return Value::boolean(!values_equal(a, b));
      case BinOp::In: return contains(a, b, pos);
      default: break;
    }
    int cmp;
    if (a.is_number() && b.is_number()) {
      double x = a.as_double(), y = b.as_double();
      cmp = x < y ? -1 : (x > y ? 1 : 0);
    } else if (a.is_text() && b.is_text()) {
      cmp = a.text().compare(b.text());
      cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
    } else {
      fail(pos, "unorderable types");
    }
    switch (op) {
      case BinOp::Lt: return Value::boolean(cmp < 0);
      case BinOp::Le: return Value::boolean(cmp <= 0);
      case BinOp::Gt: return Value::boolean(cmp > 0);
      case BinOp::Ge: return Value::boolean(cmp >= 0);
      default: break;
    }
    fail(pos, "unknown comparison");
  }

  Value contains(const Value& needle, const Value& haystack, SourcePos pos) {
    if (const auto* l = std::get_if<List>(&haystack.repr())) {
      for (const auto& v : *l)
        if (values_equal(needle, v)) return Value::boolean(true);
      return Value::boolean(false);
    }
    if (const auto* s = std::get_if<SetV>(&haystack.repr()))
      return Value::boolean(s->members.count(to_key(needle, pos)) > 0);
    if (const auto* d = std::get_if<DictV>(&haystack.repr()))
      return Value::boolean(d->entries.count(to_key(needle, pos)) > 0);
    if (haystack.is_text()) {
      if (!needle.is_text()) fail(pos, "'in <string>' needs a string operand");
      return Value::boolean(haystack.text().find(needle.text()) != std::string::npos);
    }
    fail(pos, "'in' needs a list, set, dict or string");
  }

  Value set_or_bool_op(BinOp op, const Value& a, const Value& b, SourcePos pos) {
    const auto* as = std::get_if<SetV>(&a.repr());
    const auto* bs = std::get_if<SetV>(&b.repr());
    if (as && bs) {
      SetV out;
      if (op == BinOp::BitAnd) {
        std::set_intersection(as->members.begin(), as->members.end(), bs->members.begin(),
                              bs->members.end(), std::inserter(out.members, out.members.end()));
      } else {
        std::set_union(as->members.begin(), as->members.end(), bs->members.begin(),
                       bs->members.end(), std::inserter(out.members, out.members.end()));
      }
      return Value::set(std::move(out));
    }
    const auto* ab = std::get_if<bool>(&a.repr());
    const auto* bb = std::get_if<bool>(&b.repr());
    if (ab && bb) return Value::boolean(op == BinOp::BitAnd ? (*ab && *bb) : (*ab || *bb));
    fail(pos, op == BinOp::BitAnd ? "'&' needs two sets or two booleans"
                                  : "'|' needs two sets or two booleans");
  }

  static ScalarKey to_key(const Value& v, SourcePos pos) {
    if (const auto* b = std::get_if<bool>(&v.repr())) return ScalarKey::of_bool(*b);
    if (const auto* i = std::get_if<std::int64_t>(&v.repr())) return ScalarKey::of_int(*i);
    if (const auto* d = std::get_if<double>(&v.repr())) return ScalarKey::of_double(*d);
    if (const auto* s = std::get_if<std::string>(&v.repr()))
      return ScalarKey::of_text(*s, false);
    if (const auto* n = std::get_if<NodeIdV>(&v.repr())) return ScalarKey::of_text(n->id, true);
    fail(pos, "value is not a scalar (sets and dict keys hold scalars only)");
  }

  // ---- builtins ----

  Value eval_node(SourcePos pos, const CallExpr& call) {
    std::vector<Value> args;
    args.reserve(call.args.size());
    for (const auto& a : call.args) args.push_back(eval(*a));
    if (is_retrieval_builtin(call.callee)) return retrieval_call(call.callee, args, pos);
    return helper_call(call.callee, args, pos);
  }

  std::string text_arg(const std::vector<Value>& args, std::size_t i, const char* fn,
                       SourcePos pos) {
    if (i >= args.size() || !args[i].is_text())
      fail(pos, std::string(fn) + ": expected a string argument");
    return args[i].text();
  }

  std::vector<std::string> id_list_arg(const std::vector<Value>& args, std::size_t i,
                                       const char* fn, SourcePos pos) {
    if (i >= args.size()) fail(pos, std::string(fn) + ": missing node id list");
    if (args[i].is_text()) return {args[i].text()};
    const auto* l = std::get_if<List>(&args[i].repr());
    if (l == nullptr) fail(pos, std::string(fn) + ": expected a list of node ids");
    std::vector<std::string> ids;
    for (const auto& v : *l) {
      if (!v.is_text()) fail(pos, std::string(fn) + ": node ids must be strings");
      ids.push_back(v.text());
    }
    return ids;
  }

  Value retrieval_call(const std::string& fn, const std::vector<Value>& args, SourcePos pos) {
    Value result;
    try {
      if (fn == "RetrieveNode") {
        if (args.size() != 1) fail(pos, "RetrieveNode(text) takes one argument");
        result = Value::node_id(api_.retrieve_node(text_arg(args, 0, "RetrieveNode", pos)));
      } else if (fn == "NodeInfo") {
        if (!api_.node_info_enabled()) fail(pos, "NodeInfo is not available");
        if (args.size() != 1) fail(pos, "NodeInfo(nodeID) takes one argument");
        result = Value::str(api_.node_info(text_arg(args, 0, "NodeInfo", pos)));
      } else if (fn == "NodeFeature") {
        if (args.size() != 2) fail(pos, "NodeFeature(nodeIDs, featureName) takes two arguments");
        auto ids = id_list_arg(args, 0, "NodeFeature", pos);
        auto values = api_.node_feature(ids, text_arg(args, 1, "NodeFeature", pos));
        List out;
        for (const auto& v : values)
          out.push_back(v.has_value() ? Value::from_attr(*v) : Value::missing());
        result = Value::list(std::move(out));
      } else if (fn == "NodeDegree") {
        if (args.size() != 2) fail(pos, "NodeDegree(nodeID, neighbourType) takes two arguments");
        result = Value::integer(api_.node_degree(text_arg(args, 0, "NodeDegree", pos),
                                                 text_arg(args, 1, "NodeDegree", pos)));
      } else {  // NeighbourCheck
        if (args.size() != 2)
          fail(pos, "NeighbourCheck(nodeID, neighbourType) takes two arguments");
        auto ids = api_.neighbour_check(text_arg(args, 0, "NeighbourCheck", pos),
                                        text_arg(args, 1, "NeighbourCheck", pos));
        List out;
        for (auto& id : ids) out.push_back(Value::node_id(std::move(id)));
        result = Value::list(std::move(out));
      }
    } catch (const RetrievalError& e) {
      fail(pos, e.what(), ErrorKind::RetrievalProcessError);
    }
    result_.retrieval_calls.push_back({fn, render_values(args, ", "), result.render()});
    return result;
  }

  Value helper_call(const std::string& fn, const std::vector<Value>& args, SourcePos pos) {
    if (fn == "len") {
      if (args.size() != 1) fail(pos, "len takes one argument");
      const Value& v = args[0];
      if (const auto* l = std::get_if<List>(&v.repr()))
        return Value::integer(static_cast<std::int64_t>(l->size()));
      if (const auto* s = std::get_if<SetV>(&v.repr()))
        return Value::integer(static_cast<std::int64_t>(s->members.size()));
      if (const auto* d = std::get_if<DictV>(&v.repr()))
        return Value::integer(static_cast<std::int64_t>(d->entries.size()));
      if (v.is_text()) return Value::integer(static_cast<std::int64_t>(v.text().size()));
      fail(pos, "len needs a list, set, dict or string");
    }
    if (fn == "set") {
      if (args.empty()) return Value::set(SetV{});
      if (args.size() != 1) fail(pos, "set takes at most one argument");
      if (const auto* s = std::get_if<SetV>(&args[0].repr())) return Value::set(*s);
      SetV out;
      for (const auto& v : iterate(args[0], pos)) out.members.insert(to_key(v, pos));
      return Value::set(std::move(out));
    }
    if (fn == "list") {
      if (args.empty()) return Value::list(List{});
      if (args.size() != 1) fail(pos, "list takes at most one argument");
      if (const auto* d = std::get_if<DictV>(&args[0].repr())) {
        List out;
        for (const auto& [k, v] : d->entries) out.push_back(k.to_value());
        return Value::list(std::move(out));
      }
      return Value::list(iterate(args[0], pos));
    }
    if (fn == "sorted") {
      if (args.size() != 1) fail(pos, "sorted takes one argument");
      std::vector<Value> items = iterate(args[0], pos);
      std::vector<ScalarKey> keys;
      keys.reserve(items.size());
      for (const auto& v : items) keys.push_back(to_key(v, pos));
      std::sort(keys.begin(), keys.end());
      List out;
      for (const auto& k : keys) out.push_back(k.to_value());
      return Value::list(std::move(out));
    }
    if (fn == "sum") {
      if (args.size() != 1) fail(pos, "sum takes one argument");
      std::int64_t isum = 0;
      double dsum = 0.0;
      bool any_double = false;
      for (const auto& v : iterate(args[0], pos)) {
        if (v.is_missing()) fail(pos, "arithmetic with Missing");
        if (const auto* i = std::get_if<std::int64_t>(&v.repr())) {
          isum += *i;
          dsum += static_cast<double>(*i);
        } else if (const auto* d = std::get_if<double>(&v.repr())) {
          any_double = true;
          dsum += *d;
        } else {
          fail(pos, "sum needs numbers");
        }
      }
      return any_double ? Value::real(dsum) : Value::integer(isum);
    }
    if (fn == "min" || fn == "max") {
      std::vector<Value> items = args.size() == 1 ? iterate(args[0], pos) : args;
      if (items.empty()) fail(pos, fn + " of an empty sequence");
      const Value* best = &items[0];
      for (const auto& v : items) {
        if (v.is_missing()) fail(pos, fn + " with Missing");
        bool numeric = v.is_number() && best->is_number();
        bool textual = v.is_text() && best->is_text();
        if (!numeric && !textual) fail(pos, fn + " needs comparable values");
        bool less = numeric ? v.as_double() < best->as_double() : v.text() < best->text();
        bool greater = numeric ? v.as_double() > best->as_double() : v.text() > best->text();
        if (fn == "min" ? less : greater) best = &v;  // first occurrence wins ties
      }
      return *best;
    }
    fail(pos, "unknown builtin '" + fn + "'");
  }

  SnippetGraphApi& api_;
  ExecOptions opts_;
  ExecutionResult result_;
  std::map<std::string, Value> env_;
};

}  // namespace

ExecutionResult execute(const SnippetProgram& program, SnippetGraphApi& api,
                        const ExecOptions& options) {
  return Interp(api, options).run(program);
}

}  // namespace glm::snippet
