#include "initsem/value.hpp"

#include <algorithm>

#include "initsem/error.hpp"

namespace initsem {

namespace detail {
struct ValueNode {
  Value::Kind kind;
  std::size_t context = 0;
  std::size_t level = 0;
  Term term;
  std::string constructor;
  std::vector<Value> args;
  std::vector<std::size_t> levels;
};
}  // namespace detail

namespace {
std::shared_ptr<detail::ValueNode> node(Value::Kind kind, std::size_t context) {
  auto n = std::make_shared<detail::ValueNode>();
  n->kind = kind;
  n->context = context;
  return n;
}
}  // namespace

Value Value::unit(std::size_t context) { return Value(node(Kind::Unit, context)); }

Value Value::term(Term t) {
  auto n = node(Kind::Term, t.context());
  n->term = std::move(t);
  return Value(std::move(n));
}

Value Value::inl(std::size_t level, std::size_t context) {
  if (level >= context) {
    throw Error(ErrorKind::Scope, "inl(x" + std::to_string(level) + ") outside context " +
                                      std::to_string(context));
  }
  auto n = node(Kind::Inl, context);
  n->level = level;
  return Value(std::move(n));
}

Value Value::inr(std::string constructor, std::vector<Value> args, std::size_t context) {
  auto n = node(Kind::Inr, context);
  n->constructor = std::move(constructor);
  n->args = std::move(args);
  return Value(std::move(n));
}

Value Value::set(std::vector<std::size_t> levels, std::size_t context) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (!levels.empty() && levels.back() >= context) {
    throw Error(ErrorKind::Scope, "level set exceeds context " + std::to_string(context));
  }
  auto n = node(Kind::Set, context);
  n->levels = std::move(levels);
  return Value(std::move(n));
}

Value::Kind Value::kind() const { return node_->kind; }
std::size_t Value::context() const { return node_->context; }
const Term& Value::term() const { return node_->term; }
std::size_t Value::level() const { return node_->level; }
const std::string& Value::constructor() const { return node_->constructor; }
std::span<const Value> Value::args() const { return node_->args; }
std::span<const std::size_t> Value::levels() const { return node_->levels; }

bool operator==(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.context != y.context) return false;
  switch (x.kind) {
    case Value::Kind::Unit: return true;
    case Value::Kind::Term: return x.term == y.term;
    case Value::Kind::Inl: return x.level == y.level;
    case Value::Kind::Inr: return x.constructor == y.constructor && x.args == y.args;
    case Value::Kind::Set: return x.levels == y.levels;
  }
  return false;
}

std::string to_string(const Value& v) {
  if (!v.valid()) return "<none>";
  switch (v.kind()) {
    case Value::Kind::Unit: return "*";
    case Value::Kind::Term: return print_term(v.term());
    case Value::Kind::Inl: return "inl(x" + std::to_string(v.level()) + ")";
    case Value::Kind::Inr: {
      std::string out = "inr " + v.constructor() + "(";
      for (std::size_t j = 0; j < v.args().size(); ++j) {
        if (j) out += ", ";
        out += to_string(v.args()[j]);
      }
      return out + ")";
    }
    case Value::Kind::Set: {
      std::string out = "{";
      for (std::size_t j = 0; j < v.levels().size(); ++j) {
        if (j) out += ", ";
        out += "x" + std::to_string(v.levels()[j]);
      }
      return out + "}";
    }
  }
  return "";
}

}  // namespace initsem
