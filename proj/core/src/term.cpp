#include "initsem/term.hpp"

#include <algorithm>
#include <functional>

#include "initsem/error.hpp"
#include "scanner.hpp"

namespace initsem {

namespace detail {

struct TermNode {
  Term::Kind kind;
  std::size_t context;
  std::size_t level = 0;
  std::string name;
  std::vector<Term> args;
  std::size_t height = 1;
  std::size_t hash = 0;
};

}  // namespace detail

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::size_t level, std::size_t context) {
  if (level >= context) {
    throw Error(ErrorKind::Scope, "variable x" + std::to_string(level) +
                                      " is out of scope in context of size " +
                                      std::to_string(context));
  }
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::Var;
  node->context = context;
  node->level = level;
  node->hash = mix(mix(0x51, context), level);
  return Term(std::move(node));
}

Term Term::con(std::string name, std::vector<Term> args, std::size_t context) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::Con;
  node->context = context;
  std::size_t h = mix(mix(0xc0, context), std::hash<std::string>{}(name));
  std::size_t height = 0;
  for (const auto& a : args) {
    if (!a.valid() || a.context() < context) {
      throw Error(ErrorKind::Scope, "argument of '" + name + "' is scoped over a smaller context");
    }
    height = std::max(height, a.height());
    h = mix(h, a.hash());
  }
  node->name = std::move(name);
  node->args = std::move(args);
  node->height = 1 + height;
  node->hash = h;
  return Term(std::move(node));
}

Term::Kind Term::kind() const { return node_->kind; }
std::size_t Term::context() const { return node_->context; }
std::size_t Term::level() const { return node_->level; }
const std::string& Term::constructor() const { return node_->name; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::binders(std::size_t arg) const { return node_->args[arg].context() - node_->context; }
std::size_t Term::height() const { return node_->height; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.context != y.context) return false;
  if (x.kind == Term::Kind::Var) return x.level == y.level;
  return x.name == y.name && x.args == y.args;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.context <=> y.context; c != 0) return c;
  if (x.kind != y.kind) return x.kind == Term::Kind::Var ? std::strong_ordering::less
                                                          : std::strong_ordering::greater;
  if (x.kind == Term::Kind::Var) return x.level <=> y.level;
  if (auto c = x.name.compare(y.name); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::lexicographical_compare_three_way(x.args.begin(), x.args.end(), y.args.begin(),
                                                y.args.end());
}

Term make_var(std::size_t level, std::size_t context) { return Term::var(level, context); }

Term make_con(const Signature& sig, std::string_view name, std::vector<Term> args,
              std::size_t context) {
  const Constructor& c = sig.at(name);
  if (args.size() != c.arity.size()) {
    throw Error(ErrorKind::Arity, "constructor '" + c.name + "' expects " +
                                      std::to_string(c.arity.size()) + " argument(s), got " +
                                      std::to_string(args.size()));
  }
  for (std::size_t j = 0; j < args.size(); ++j) {
    std::size_t want = context + c.arity.binders[j];
    if (!args[j].valid() || args[j].context() != want) {
      throw Error(ErrorKind::Scope,
                  "argument " + std::to_string(j) + " of '" + c.name + "' must be scoped over " +
                      std::to_string(want) + ", not " +
                      (args[j].valid() ? std::to_string(args[j].context()) : "nothing"));
    }
  }
  return Term::con(c.name, std::move(args), context);
}

void scope_check(const Signature& sig, const Term& t) {
  if (!t.valid()) throw Error(ErrorKind::Scope, "empty term");
  if (t.is_var()) {
    if (t.level() >= t.context()) throw Error(ErrorKind::Scope, "variable out of scope");
    return;
  }
  const Constructor& c = sig.at(t.constructor());
  if (t.args().size() != c.arity.size()) {
    throw Error(ErrorKind::Arity, "wrong argument count for '" + c.name + "'");
  }
  for (std::size_t j = 0; j < t.args().size(); ++j) {
    if (t.args()[j].context() != t.context() + c.arity.binders[j]) {
      throw Error(ErrorKind::Scope, "argument scoped over the wrong context in '" + c.name + "'");
    }
    scope_check(sig, t.args()[j]);
  }
}

bool is_well_scoped(const Signature& sig, const Term& t) {
  try {
    scope_check(sig, t);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

bool is_var_name(const std::string& id) {
  return id.size() > 1 && id[0] == 'x' &&
         std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Term parse_term_at(const Signature& sig, std::size_t context, detail::Scanner& in) {
  std::size_t line = in.line(), col = in.column();
  std::string id = in.expect_ident("term");
  if (in.peek() != '(') {
    if (!is_var_name(id)) in.fail("expected variable x<level> or constructor application");
    std::size_t level = std::stoull(id.substr(1));
    if (level >= context) {
      throw Error(ErrorKind::Scope, std::to_string(line) + ":" + std::to_string(col) +
                                        ": variable " + id + " out of scope in context of size " +
                                        std::to_string(context));
    }
    return Term::var(level, context);
  }
  const Constructor* c = sig.find(id);
  if (!c) {
    throw Error(ErrorKind::UnknownConstructor, std::to_string(line) + ":" + std::to_string(col) +
                                                   ": unknown constructor '" + id + "'");
  }
  in.expect("(");
  std::vector<Term> args;
  if (!in.accept(")")) {
    do {
      std::size_t binders = 0;
      if (in.accept("{")) {
        binders = in.expect_nat("binder count");
        in.expect("}");
      }
      std::size_t j = args.size();
      if (j >= c->arity.size()) {
        throw Error(ErrorKind::Arity, "too many arguments for '" + c->name + "'");
      }
      if (binders != c->arity.binders[j]) {
        throw Error(ErrorKind::Scope, "argument " + std::to_string(j) + " of '" + c->name +
                                          "' binds " + std::to_string(c->arity.binders[j]) +
                                          " variable(s), marker says " + std::to_string(binders));
      }
      args.push_back(parse_term_at(sig, context + binders, in));
    } while (in.accept(","));
    in.expect(")");
  }
  return make_con(sig, c->name, std::move(args), context);
}

void print_into(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += "x";
    out += std::to_string(t.level());
    return;
  }
  out += t.constructor();
  out += "(";
  for (std::size_t j = 0; j < t.args().size(); ++j) {
    if (j) out += ", ";
    if (std::size_t m = t.binders(j)) {
      out += "{";
      out += std::to_string(m);
      out += "} ";
    }
    print_into(t.args()[j], out);
  }
  out += ")";
}

}  // namespace

Term parse_term(const Signature& sig, std::size_t context, std::string_view text) {
  detail::Scanner in(text);
  Term t = parse_term_at(sig, context, in);
  if (!in.at_end()) in.fail("trailing input" + in.found());
  return t;
}

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

}  // namespace initsem
