#include "initsem/typed.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "initsem/error.hpp"
#include "initsem/rng.hpp"
#include "initsem/subst.hpp"
#include "scanner.hpp"

namespace initsem {

namespace detail {

struct TypeNode {
  Type::Kind kind;
  std::string name;
  Type domain;
  Type codomain;
  std::size_t depth = 1;
};

struct TypedTermNode {
  TypedTerm::Kind kind;
  std::shared_ptr<const TypedContext> context;
  Type type;
  std::size_t level = 0;
  std::string schema;
  std::vector<Type> type_args;
  std::vector<TypedTerm> args;
  std::size_t height = 1;
};

struct TypedTermAccess {
  static TypedTerm make(TypedTermNode node) {
    return TypedTerm(std::make_shared<const TypedTermNode>(std::move(node)));
  }
  static const TypedTermNode& node(const TypedTerm& t) { return *t.node_; }
  static std::shared_ptr<const TypedContext> context_ptr(const TypedTerm& t) {
    return t.node_->context;
  }
};

}  // namespace detail

using detail::TypedTermAccess;

// ---- types

Type Type::base(std::string name) {
  return Type(std::make_shared<const detail::TypeNode>(
      detail::TypeNode{Kind::Base, std::move(name), {}, {}, 1}));
}

Type Type::param(std::string name) {
  return Type(std::make_shared<const detail::TypeNode>(
      detail::TypeNode{Kind::Param, std::move(name), {}, {}, 1}));
}

Type Type::arrow(Type domain, Type codomain) {
  std::size_t d = std::max(domain.depth(), codomain.depth()) + 1;
  return Type(std::make_shared<const detail::TypeNode>(
      detail::TypeNode{Kind::Arrow, "", std::move(domain), std::move(codomain), d}));
}

Type::Kind Type::kind() const { return node_->kind; }
const std::string& Type::name() const { return node_->name; }
const Type& Type::domain() const { return node_->domain; }
const Type& Type::codomain() const { return node_->codomain; }
std::size_t Type::depth() const { return node_->depth; }

bool operator==(const Type& a, const Type& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.valid() || !b.valid()) return a.valid() <=> b.valid();
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.kind() != Type::Kind::Arrow) return a.name() <=> b.name();
  if (auto c = a.domain() <=> b.domain(); c != 0) return c;
  return a.codomain() <=> b.codomain();
}

std::string print_type(const Type& t) {
  if (t.kind() != Type::Kind::Arrow) return t.name();
  std::string dom = print_type(t.domain());
  if (t.domain().kind() == Type::Kind::Arrow) dom = "(" + dom + ")";
  return dom + "->" + print_type(t.codomain());
}

Type instantiate_type(const Type& t, const std::map<std::string, Type>& binding) {
  switch (t.kind()) {
    case Type::Kind::Base:
      return t;
    case Type::Kind::Param: {
      auto it = binding.find(t.name());
      if (it == binding.end()) throw Error(ErrorKind::Type, "unbound type parameter " + t.name());
      return it->second;
    }
    case Type::Kind::Arrow:
      return Type::arrow(instantiate_type(t.domain(), binding),
                         instantiate_type(t.codomain(), binding));
  }
  return t;
}

std::string print_context(const TypedContext& ctx) {
  std::string out = "[";
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += print_type(ctx[i]);
  }
  return out + "]";
}

// ---- signatures

namespace {

void check_type(const Type& t, const std::set<std::string>& bases, bool arrows,
                const std::set<std::string>& params) {
  switch (t.kind()) {
    case Type::Kind::Base:
      if (!bases.contains(t.name())) throw Error(ErrorKind::Type, "undeclared base type " + t.name());
      return;
    case Type::Kind::Param:
      if (!params.contains(t.name())) {
        throw Error(ErrorKind::Type, "undeclared type parameter " + t.name());
      }
      return;
    case Type::Kind::Arrow:
      if (!arrows) throw Error(ErrorKind::Type, "arrow types are not enabled");
      check_type(t.domain(), bases, arrows, params);
      check_type(t.codomain(), bases, arrows, params);
      return;
  }
}

}  // namespace

TypedSignature::TypedSignature(std::string name, std::vector<std::string> bases, bool arrows,
                               std::vector<Schema> schemas)
    : name_(std::move(name)), bases_(std::move(bases)), arrows_(arrows),
      schemas_(std::move(schemas)) {
  std::set<std::string> base_set;
  for (const auto& b : bases_) {
    if (!base_set.insert(b).second) throw Error(ErrorKind::Duplicate, "duplicate base type " + b);
  }
  std::set<std::string> names;
  for (const auto& s : schemas_) {
    if (!names.insert(s.name).second) throw Error(ErrorKind::Duplicate, "duplicate schema " + s.name);
    std::set<std::string> params;
    for (const auto& p : s.params) {
      if (base_set.contains(p)) {
        throw Error(ErrorKind::Duplicate, "parameter " + p + " shadows a base type in " + s.name);
      }
      if (!params.insert(p).second) {
        throw Error(ErrorKind::Duplicate, "duplicate parameter " + p + " in " + s.name);
      }
    }
    for (const auto& a : s.args) {
      for (const auto& b : a.bound) check_type(b, base_set, arrows_, params);
      check_type(a.result, base_set, arrows_, params);
    }
    check_type(s.output, base_set, arrows_, params);
  }
}

const Schema* TypedSignature::find(std::string_view name) const {
  for (const auto& s : schemas_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const Schema& TypedSignature::at(std::string_view name) const {
  const Schema* s = find(name);
  if (!s) throw Error(ErrorKind::UnknownConstructor, "unknown schema " + std::string(name));
  return *s;
}

std::vector<Type> TypedSignature::types_up_to(std::size_t depth) const {
  std::vector<Type> out;
  if (depth == 0) return out;
  for (const auto& b : bases_) out.push_back(Type::base(b));
  if (!arrows_) return out;
  for (std::size_t d = 2; d <= depth; ++d) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::max(out[i].depth(), out[j].depth()) == d - 1) {
          out.push_back(Type::arrow(out[i], out[j]));
        }
      }
    }
  }
  return out;
}

Signature TypedSignature::erase() const {
  std::vector<Constructor> cons;
  for (const auto& s : schemas_) {
    Arity a;
    for (const auto& arg : s.args) a.binders.push_back(arg.bound.size());
    cons.push_back({s.name, std::move(a)});
  }
  return Signature(name_, std::move(cons));
}

// ---- parsing

namespace {

struct TypeScope {
  const std::set<std::string>* params = nullptr;
};

Type parse_type_from(detail::Scanner& s, const TypeScope& scope);

Type resolve_atom(const std::string& name, const TypeScope& scope) {
  if (scope.params && scope.params->contains(name)) return Type::param(name);
  return Type::base(name);
}

Type parse_type_rest(detail::Scanner& s, const TypeScope& scope, Type atom) {
  if (s.accept("->")) return Type::arrow(std::move(atom), parse_type_from(s, scope));
  return atom;
}

Type parse_atom(detail::Scanner& s, const TypeScope& scope) {
  if (s.accept("(")) {
    Type t = parse_type_from(s, scope);
    s.expect(")");
    return t;
  }
  return resolve_atom(s.expect_ident("type"), scope);
}

Type parse_type_from(detail::Scanner& s, const TypeScope& scope) {
  return parse_type_rest(s, scope, parse_atom(s, scope));
}

// Closed types must name declared bases; arrows only when enabled.
void check_closed(const TypedSignature& sig, const Type& t) {
  std::set<std::string> bases(sig.bases().begin(), sig.bases().end());
  check_type(t, bases, sig.arrows(), {});
}

}  // namespace

TypedSignature parse_typed_signature(std::string_view text, std::string default_name) {
  detail::Scanner s(text);
  std::string name = std::move(default_name);
  auto first = s.expect_ident("'typed' or 'types'");
  if (first == "typed") {
    name = s.expect_ident("signature name");
    s.expect_keyword("types");
  } else if (first != "types") {
    s.fail("expected 'types'");
  }
  s.expect_keyword("base");
  std::vector<std::string> bases;
  do {
    bases.push_back(s.expect_ident("base type name"));
  } while (s.accept(","));
  bool arrows = false;
  if (s.accept(";")) {
    s.expect_keyword("arrows");
    arrows = true;
  }
  std::vector<Schema> schemas;
  while (!s.at_end()) {
    s.expect_keyword("schema");
    Schema sc;
    sc.name = s.expect_ident("schema name");
    std::set<std::string> params;
    if (s.accept("<")) {
      if (!s.accept(">")) {
        do {
          sc.params.push_back(s.expect_ident("type parameter"));
          params.insert(sc.params.back());
        } while (s.accept(","));
        s.expect(">");
      }
    }
    TypeScope scope{&params};
    s.expect(":");
    s.expect("(");
    if (!s.accept(")")) {
      do {
        SchemaArg arg;
        s.expect("[");
        if (!s.accept("]")) {
          do {
            arg.bound.push_back(parse_type_from(s, scope));
          } while (s.accept(","));
          s.expect("]");
        }
        arg.result = parse_type_from(s, scope);
        sc.args.push_back(std::move(arg));
      } while (s.accept(","));
      s.expect(")");
    }
    s.expect("->");
    sc.output = parse_type_from(s, scope);
    schemas.push_back(std::move(sc));
  }
  return TypedSignature(std::move(name), std::move(bases), arrows, std::move(schemas));
}

std::string print_typed_signature(const TypedSignature& sig) {
  std::string out = "typed " + sig.name() + "\ntypes base ";
  for (std::size_t i = 0; i < sig.bases().size(); ++i) {
    if (i) out += ", ";
    out += sig.bases()[i];
  }
  if (sig.arrows()) out += "; arrows";
  out += "\n";
  for (const auto& sc : sig.schemas()) {
    out += "schema " + sc.name;
    if (!sc.params.empty()) {
      out += "<";
      for (std::size_t i = 0; i < sc.params.size(); ++i) {
        if (i) out += ",";
        out += sc.params[i];
      }
      out += ">";
    }
    out += " : (";
    for (std::size_t j = 0; j < sc.args.size(); ++j) {
      if (j) out += ", ";
      out += "[";
      for (std::size_t i = 0; i < sc.args[j].bound.size(); ++i) {
        if (i) out += ", ";
        out += print_type(sc.args[j].bound[i]);
      }
      out += "] " + print_type(sc.args[j].result);
    }
    out += ") -> " + print_type(sc.output) + "\n";
  }
  return out;
}

Type parse_type(const TypedSignature& sig, std::string_view text) {
  detail::Scanner s(text);
  Type t = parse_type_from(s, {});
  if (!s.at_end()) s.fail("unexpected input after type" + s.found());
  check_closed(sig, t);
  return t;
}

TypedContext parse_typed_context(const TypedSignature& sig, std::string_view text,
                                 std::vector<std::string>* names) {
  detail::Scanner s(text);
  TypedContext ctx;
  if (names) names->clear();
  if (s.at_end()) return ctx;
  do {
    std::string name;
    Type t;
    if (s.peek() == '(') {
      t = parse_type_from(s, {});
    } else {
      std::string id = s.expect_ident("type or name");
      if (s.accept(":")) {
        name = id;
        t = parse_type_from(s, {});
      } else {
        t = parse_type_rest(s, {}, Type::base(id));
      }
    }
    check_closed(sig, t);
    ctx.push_back(t);
    if (names) names->push_back(name);
  } while (s.accept(","));
  if (!s.at_end()) s.fail("expected ',' or end of context" + s.found());
  return ctx;
}

// ---- terms

namespace {

TypedContext extend(const TypedContext& ctx, const TypedContext& more) {
  TypedContext out = ctx;
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::map<std::string, Type> bind_params(const Schema& sc, std::span<const Type> type_args) {
  if (type_args.size() != sc.params.size()) {
    throw Error(ErrorKind::Type, sc.name + " expects " + std::to_string(sc.params.size()) +
                                     " type arguments, got " + std::to_string(type_args.size()));
  }
  std::map<std::string, Type> binding;
  for (std::size_t i = 0; i < type_args.size(); ++i) binding[sc.params[i]] = type_args[i];
  return binding;
}

TypedContext instantiate_all(const TypedContext& ts, const std::map<std::string, Type>& binding) {
  TypedContext out;
  for (const auto& t : ts) out.push_back(instantiate_type(t, binding));
  return out;
}

TypedTerm make_var_node(std::size_t level, std::shared_ptr<const TypedContext> ctx) {
  detail::TypedTermNode node;
  node.kind = TypedTerm::Kind::Var;
  node.type = (*ctx)[level];
  node.level = level;
  node.context = std::move(ctx);
  return TypedTermAccess::make(std::move(node));
}

TypedTerm make_con_node(const std::string& schema, std::vector<Type> type_args,
                        std::vector<TypedTerm> args, Type type,
                        std::shared_ptr<const TypedContext> ctx) {
  detail::TypedTermNode node;
  node.kind = TypedTerm::Kind::Con;
  node.context = std::move(ctx);
  node.type = std::move(type);
  node.schema = schema;
  node.type_args = std::move(type_args);
  std::size_t h = 0;
  for (const auto& a : args) h = std::max(h, a.height());
  node.height = h + 1;
  node.args = std::move(args);
  return TypedTermAccess::make(std::move(node));
}

bool same_shape(const TypedTerm& a, const TypedTerm& b) {
  if (a.kind() != b.kind() || !(a.type() == b.type())) return false;
  if (a.is_var()) return a.level() == b.level();
  if (a.schema() != b.schema() || a.args().size() != b.args().size()) return false;
  if (!std::equal(a.type_args().begin(), a.type_args().end(), b.type_args().begin(),
                  b.type_args().end())) {
    return false;
  }
  for (std::size_t j = 0; j < a.args().size(); ++j) {
    if (!same_shape(a.args()[j], b.args()[j])) return false;
  }
  return true;
}

}  // namespace

TypedTerm TypedTerm::var(std::size_t level, TypedContext ctx) {
  if (level >= ctx.size()) {
    throw Error(ErrorKind::Scope, "variable x" + std::to_string(level) + " out of scope in " +
                                      print_context(ctx));
  }
  return make_var_node(level, std::make_shared<const TypedContext>(std::move(ctx)));
}

TypedTerm TypedTerm::con(const TypedSignature& sig, std::string_view schema,
                         std::vector<Type> type_args, std::vector<TypedTerm> args,
                         TypedContext ctx) {
  const Schema& sc = sig.at(schema);
  for (const auto& t : type_args) check_closed(sig, t);
  auto binding = bind_params(sc, type_args);
  if (args.size() != sc.args.size()) {
    throw Error(ErrorKind::Arity, sc.name + " expects " + std::to_string(sc.args.size()) +
                                      " arguments, got " + std::to_string(args.size()));
  }
  for (std::size_t j = 0; j < args.size(); ++j) {
    TypedContext want_ctx = extend(ctx, instantiate_all(sc.args[j].bound, binding));
    Type want = instantiate_type(sc.args[j].result, binding);
    if (args[j].context() != want_ctx) {
      throw Error(ErrorKind::Type, sc.name + " argument " + std::to_string(j + 1) +
                                       " is over " + print_context(args[j].context()) +
                                       ", expected " + print_context(want_ctx));
    }
    if (!(args[j].type() == want)) {
      throw Error(ErrorKind::Type, sc.name + " argument " + std::to_string(j + 1) + " has type " +
                                       print_type(args[j].type()) + ", expected " +
                                       print_type(want));
    }
  }
  Type out = instantiate_type(sc.output, binding);
  return make_con_node(sc.name, std::move(type_args), std::move(args), std::move(out),
                       std::make_shared<const TypedContext>(std::move(ctx)));
}

TypedTerm::Kind TypedTerm::kind() const { return node_->kind; }
const TypedContext& TypedTerm::context() const { return *node_->context; }
const Type& TypedTerm::type() const { return node_->type; }
std::size_t TypedTerm::level() const { return node_->level; }
const std::string& TypedTerm::schema() const { return node_->schema; }
std::span<const Type> TypedTerm::type_args() const { return node_->type_args; }
std::span<const TypedTerm> TypedTerm::args() const { return node_->args; }
std::size_t TypedTerm::height() const { return node_->height; }

bool operator==(const TypedTerm& a, const TypedTerm& b) {
  if (a.node_ == b.node_) return true;
  if (!a.valid() || !b.valid()) return false;
  return a.context() == b.context() && same_shape(a, b);
}

namespace {

class TermParser {
 public:
  TermParser(const TypedSignature& sig, std::string_view text) : sig_(sig), s_(text) {}

  TypedTerm run(const TypedContext& ctx, std::span<const std::string> names) {
    std::vector<std::string> scope(ctx.size());
    for (std::size_t i = 0; i < names.size() && i < ctx.size(); ++i) scope[i] = names[i];
    TypedTerm t = term(std::make_shared<const TypedContext>(ctx), scope);
    if (!s_.at_end()) s_.fail("unexpected input after term" + s_.found());
    return t;
  }

 private:
  static std::optional<std::size_t> level_of(const std::string& id) {
    if (id.size() < 2 || id[0] != 'x') return std::nullopt;
    std::size_t v = 0;
    for (std::size_t i = 1; i < id.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(id[i]))) return std::nullopt;
      v = v * 10 + static_cast<std::size_t>(id[i] - '0');
    }
    return v;
  }

  TypedTerm term(std::shared_ptr<const TypedContext> ctx, std::vector<std::string>& scope) {
    std::string id = s_.expect_ident("term");
    char next = s_.peek();
    if (next == '<' || next == '(') return con(id, std::move(ctx), scope);
    std::optional<std::size_t> level = level_of(id);
    if (!level) {
      for (std::size_t i = scope.size(); i-- > 0;) {
        if (scope[i] == id) {
          level = i;
          break;
        }
      }
      if (!level) throw Error(ErrorKind::Scope, "unbound variable " + id);
    }
    if (*level >= ctx->size()) {
      throw Error(ErrorKind::Scope, "variable " + id + " out of scope in " + print_context(*ctx));
    }
    return make_var_node(*level, std::move(ctx));
  }

  TypedTerm con(const std::string& name, std::shared_ptr<const TypedContext> ctx,
                std::vector<std::string>& scope) {
    const Schema& sc = sig_.at(name);
    std::vector<Type> type_args;
    if (s_.accept("<")) {
      if (!s_.accept(">")) {
        do {
          type_args.push_back(parse_type_from(s_, {}));
          check_closed(sig_, type_args.back());
        } while (s_.accept(","));
        s_.expect(">");
      }
    }
    auto binding = bind_params(sc, type_args);
    s_.expect("(");
    std::vector<TypedTerm> args;
    if (!s_.accept(")")) {
      do {
        if (args.size() == sc.args.size()) {
          throw Error(ErrorKind::Arity, sc.name + " expects " + std::to_string(sc.args.size()) +
                                            " arguments");
        }
        args.push_back(argument(sc, args.size(), binding, ctx, scope));
      } while (s_.accept(","));
      s_.expect(")");
    }
    if (args.size() != sc.args.size()) {
      throw Error(ErrorKind::Arity, sc.name + " expects " + std::to_string(sc.args.size()) +
                                        " arguments, got " + std::to_string(args.size()));
    }
    Type out = instantiate_type(sc.output, binding);
    return make_con_node(sc.name, std::move(type_args), std::move(args), std::move(out),
                         std::move(ctx));
  }

  TypedTerm argument(const Schema& sc, std::size_t j, const std::map<std::string, Type>& binding,
                     const std::shared_ptr<const TypedContext>& ctx,
                     std::vector<std::string>& scope) {
    TypedContext bound = instantiate_all(sc.args[j].bound, binding);
    std::vector<std::string> marker_names;
    TypedContext marker;
    bool has_marker = s_.accept("{");
    if (has_marker && !s_.accept("}")) {
      do {
        std::string name;
        Type t;
        if (s_.peek() == '(') {
          t = parse_type_from(s_, {});
        } else {
          std::string id = s_.expect_ident("binder type");
          if (s_.accept(":")) {
            name = id;
            t = parse_type_from(s_, {});
          } else {
            t = parse_type_rest(s_, {}, Type::base(id));
          }
        }
        check_closed(sig_, t);
        marker.push_back(t);
        marker_names.push_back(name);
      } while (s_.accept(","));
      s_.expect("}");
    }
    std::string where = sc.name + " argument " + std::to_string(j + 1);
    if (!has_marker && !bound.empty()) {
      throw Error(ErrorKind::Type, where + " binds " + print_context(bound) + " but has no marker");
    }
    if (has_marker && marker != bound) {
      throw Error(ErrorKind::Type, where + " binds " + print_context(bound) + ", marker says " +
                                       print_context(marker));
    }
    auto inner = ctx;
    if (!bound.empty()) inner = std::make_shared<const TypedContext>(extend(*ctx, bound));
    std::size_t mark = scope.size();
    scope.insert(scope.end(), marker_names.begin(), marker_names.end());
    scope.resize(mark + bound.size());
    TypedTerm a = term(inner, scope);
    scope.resize(mark);
    Type want = instantiate_type(sc.args[j].result, binding);
    if (!(a.type() == want)) {
      throw Error(ErrorKind::Type, where + " has type " + print_type(a.type()) + ", expected " +
                                       print_type(want));
    }
    return a;
  }

  const TypedSignature& sig_;
  detail::Scanner s_;
};

void print_into(const TypedTerm& t, std::string& out) {
  if (t.is_var()) {
    out += "x" + std::to_string(t.level());
    return;
  }
  out += t.schema();
  if (!t.type_args().empty()) {
    out += "<";
    for (std::size_t i = 0; i < t.type_args().size(); ++i) {
      if (i) out += ",";
      out += print_type(t.type_args()[i]);
    }
    out += ">";
  }
  out += "(";
  std::size_t n = t.context().size();
  for (std::size_t j = 0; j < t.args().size(); ++j) {
    if (j) out += ", ";
    const TypedTerm& a = t.args()[j];
    const TypedContext& inner = a.context();
    if (inner.size() > n) {
      out += "{";
      for (std::size_t i = n; i < inner.size(); ++i) {
        if (i > n) out += ", ";
        out += print_type(inner[i]);
      }
      out += "} ";
    }
    print_into(a, out);
  }
  out += ")";
}

}  // namespace

TypedTerm typecheck_term(const TypedSignature& sig, const TypedContext& ctx, std::string_view text,
                         std::span<const std::string> names) {
  for (const auto& t : ctx) check_closed(sig, t);
  return TermParser(sig, text).run(ctx, names);
}

std::string print_typed_term(const TypedTerm& t) {
  std::string out;
  print_into(t, out);
  return out;
}

Term erase(const TypedTerm& t) {
  std::size_t n = t.context().size();
  if (t.is_var()) return Term::var(t.level(), n);
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(erase(a));
  return Term::con(t.schema(), std::move(args), n);
}

// ---- renaming and substitution

void validate(const TypedRenaming& r) {
  if (r.map.size() != r.source.size()) {
    throw Error(ErrorKind::Type, "renaming has " + std::to_string(r.map.size()) +
                                     " entries for a context of " +
                                     std::to_string(r.source.size()));
  }
  for (std::size_t i = 0; i < r.map.size(); ++i) {
    if (r.map[i] >= r.target.size()) {
      throw Error(ErrorKind::Scope, "renaming sends x" + std::to_string(i) + " out of " +
                                        print_context(r.target));
    }
    if (!(r.target[r.map[i]] == r.source[i])) {
      throw Error(ErrorKind::Type, "renaming sends x" + std::to_string(i) + " : " +
                                       print_type(r.source[i]) + " to x" +
                                       std::to_string(r.map[i]) + " : " +
                                       print_type(r.target[r.map[i]]));
    }
  }
}

void validate(const TypedSubstitution& c) {
  if (c.images.size() != c.source.size()) {
    throw Error(ErrorKind::Type, "substitution has " + std::to_string(c.images.size()) +
                                     " images for a context of " +
                                     std::to_string(c.source.size()));
  }
  for (std::size_t i = 0; i < c.images.size(); ++i) {
    const TypedTerm& img = c.images[i];
    if (img.context() != c.target) {
      throw Error(ErrorKind::Type, "image of x" + std::to_string(i) + " is over " +
                                       print_context(img.context()) + ", expected " +
                                       print_context(c.target));
    }
    if (!(img.type() == c.source[i])) {
      throw Error(ErrorKind::Type, "image of x" + std::to_string(i) + " has type " +
                                       print_type(img.type()) + ", expected " +
                                       print_type(c.source[i]));
    }
  }
}

namespace {

TypedTerm rename_rec(const TypedTerm& t, const TypedRenaming& r,
                     std::map<std::size_t, std::shared_ptr<const TypedContext>>& contexts) {
  std::size_t src = r.source.size();
  std::size_t extra = t.context().size() - src;
  auto& ctx = contexts[extra];
  if (!ctx) {
    TypedContext c = r.target;
    c.insert(c.end(), t.context().begin() + static_cast<std::ptrdiff_t>(src), t.context().end());
    ctx = std::make_shared<const TypedContext>(std::move(c));
  }
  if (t.is_var()) {
    std::size_t l = t.level();
    return make_var_node(l < src ? r.map[l] : l - src + r.target.size(), ctx);
  }
  std::vector<TypedTerm> args;
  for (const auto& a : t.args()) args.push_back(rename_rec(a, r, contexts));
  return make_con_node(t.schema(), {t.type_args().begin(), t.type_args().end()}, std::move(args),
                       t.type(), ctx);
}

TypedTerm rename_unchecked(const TypedTerm& t, const TypedRenaming& r) {
  std::map<std::size_t, std::shared_ptr<const TypedContext>> contexts;
  return rename_rec(t, r, contexts);
}

TypedSubstitution weaken_by(const TypedSubstitution& c, const TypedContext& bound) {
  TypedSubstitution out;
  out.source = extend(c.source, bound);
  out.target = extend(c.target, bound);
  TypedRenaming inc{c.target, out.target, {}};
  for (std::size_t i = 0; i < c.target.size(); ++i) inc.map.push_back(i);
  for (const auto& img : c.images) out.images.push_back(rename_unchecked(img, inc));
  auto ctx = std::make_shared<const TypedContext>(out.target);
  for (std::size_t p = 0; p < bound.size(); ++p) {
    out.images.push_back(make_var_node(c.target.size() + p, ctx));
  }
  return out;
}

TypedTerm subst_rec(const TypedTerm& t, const TypedSubstitution& c,
                    const std::shared_ptr<const TypedContext>& target) {
  if (t.is_var()) return c.images[t.level()];
  std::size_t n = t.context().size();
  std::vector<TypedTerm> args;
  for (const auto& a : t.args()) {
    if (a.context().size() == n) {
      args.push_back(subst_rec(a, c, target));
      continue;
    }
    TypedContext bound(a.context().begin() + static_cast<std::ptrdiff_t>(n), a.context().end());
    TypedSubstitution w = weaken_by(c, bound);
    auto inner = std::make_shared<const TypedContext>(w.target);
    args.push_back(subst_rec(a, w, inner));
  }
  return make_con_node(t.schema(), {t.type_args().begin(), t.type_args().end()}, std::move(args),
                       t.type(), target);
}

}  // namespace

TypedTerm typed_rename(const TypedTerm& t, const TypedRenaming& r) {
  validate(r);
  if (t.context() != r.source) {
    throw Error(ErrorKind::Type, "term is over " + print_context(t.context()) +
                                     ", renaming expects " + print_context(r.source));
  }
  return rename_unchecked(t, r);
}

TypedTerm typed_subst(const TypedTerm& t, const TypedSubstitution& c) {
  validate(c);
  if (t.context() != c.source) {
    throw Error(ErrorKind::Type, "term is over " + print_context(t.context()) +
                                     ", substitution expects " + print_context(c.source));
  }
  return subst_rec(t, c, std::make_shared<const TypedContext>(c.target));
}

TypedSubstitution typed_identity(const TypedContext& ctx) {
  TypedSubstitution out{ctx, ctx, {}};
  auto shared = std::make_shared<const TypedContext>(ctx);
  for (std::size_t i = 0; i < ctx.size(); ++i) out.images.push_back(make_var_node(i, shared));
  return out;
}

TypedSubstitution typed_compose(const TypedSubstitution& c, const TypedSubstitution& d) {
  if (c.target != d.source) {
    throw Error(ErrorKind::Type, "cannot compose: " + print_context(c.target) + " vs " +
                                     print_context(d.source));
  }
  TypedSubstitution out{c.source, d.target, {}};
  for (const auto& img : c.images) out.images.push_back(typed_subst(img, d));
  return out;
}

TypedSubstitution parse_typed_substitution(const TypedSignature& sig, const TypedContext& source,
                                           const TypedContext& target, std::string_view text) {
  std::vector<std::optional<TypedTerm>> images(source.size());
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(start, end - start);
    start = end + 1;
    if (part.find_first_not_of(" \t\n") == std::string_view::npos) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) throw SyntaxError(1, 1, "expected xN=TERM in substitution");
    detail::Scanner key(part.substr(0, eq));
    std::string id = key.expect_ident("variable");
    if (!key.at_end() || id.size() < 2 || id[0] != 'x' ||
        id.find_first_not_of("0123456789", 1) != std::string::npos) {
      throw SyntaxError(1, 1, "expected xN before '='");
    }
    std::size_t level = std::stoul(id.substr(1));
    if (level >= source.size()) {
      throw Error(ErrorKind::Scope, id + " is not in " + print_context(source));
    }
    if (images[level]) throw Error(ErrorKind::Duplicate, id + " assigned twice");
    images[level] = typecheck_term(sig, target, part.substr(eq + 1));
  }
  TypedSubstitution out{source, target, {}};
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) throw Error(ErrorKind::Usage, "x" + std::to_string(i) + " is not assigned");
    out.images.push_back(*images[i]);
  }
  validate(out);
  return out;
}

std::string print_typed_substitution(const TypedSubstitution& c) {
  std::string out;
  for (std::size_t i = 0; i < c.images.size(); ++i) {
    if (i) out += ";";
    out += "x" + std::to_string(i) + "=" + print_typed_term(c.images[i]);
  }
  return out;
}

// ---- enumeration

TypedUniverse::TypedUniverse(TypedSignature sig, std::size_t type_depth, std::uint64_t cap)
    : sig_(std::move(sig)), types_(sig_.types_up_to(type_depth)), cap_(cap) {}

const std::vector<TypedTerm>& TypedUniverse::terms(const TypedContext& ctx, std::size_t height) {
  return stage(ctx, height).all;
}

const std::vector<TypedTerm>& TypedUniverse::terms_of(const TypedContext& ctx, std::size_t height,
                                                      const Type& type) {
  static const std::vector<TypedTerm> kEmpty;
  const Stage& st = stage(ctx, height);
  auto it = st.by_type.find(type);
  return it == st.by_type.end() ? kEmpty : it->second;
}

const TypedUniverse::Stage& TypedUniverse::stage(const TypedContext& ctx, std::size_t height) {
  auto key = std::make_pair(ctx, height);
  if (auto it = stages_.find(key); it != stages_.end()) return it->second;
  Stage st;
  if (height > 0) {
    auto shared = std::make_shared<const TypedContext>(ctx);
    std::uint64_t total = ctx.size();
    struct Block {
      const Schema* schema;
      std::vector<Type> type_args;
      Type output;
      std::vector<const std::vector<TypedTerm>*> pools;
    };
    std::vector<Block> blocks;
    for (const auto& sc : sig_.schemas()) {
      std::vector<std::size_t> digit(sc.params.size(), 0);
      if (!sc.params.empty() && types_.empty()) continue;
      for (;;) {
        Block b{&sc, {}, {}, {}};
        for (std::size_t d : digit) b.type_args.push_back(types_[d]);
        auto binding = bind_params(sc, b.type_args);
        std::uint64_t size = 1;
        for (const auto& arg : sc.args) {
          TypedContext inner = extend(ctx, instantiate_all(arg.bound, binding));
          b.pools.push_back(&terms_of(inner, height - 1, instantiate_type(arg.result, binding)));
          size = checked_mul(size, b.pools.back()->size());
        }
        if (size > 0) {
          total = checked_add(total, size);
          if (total > cap_) {
            throw Error(ErrorKind::Resource, "typed universe over " + print_context(ctx) +
                                                 " at height " + std::to_string(height) +
                                                 " exceeds the cap of " + std::to_string(cap_));
          }
          b.output = instantiate_type(sc.output, binding);
          blocks.push_back(std::move(b));
        }
        std::size_t j = digit.size();
        while (j > 0 && ++digit[j - 1] == types_.size()) digit[--j] = 0;
        if (j == 0) break;
      }
    }
    for (std::size_t i = 0; i < ctx.size(); ++i) st.all.push_back(make_var_node(i, shared));
    for (const auto& b : blocks) {
      std::vector<std::size_t> digit(b.pools.size(), 0);
      for (;;) {
        std::vector<TypedTerm> args;
        for (std::size_t j = 0; j < b.pools.size(); ++j) args.push_back((*b.pools[j])[digit[j]]);
        st.all.push_back(make_con_node(b.schema->name, b.type_args, std::move(args), b.output, shared));
        std::size_t j = digit.size();
        while (j > 0 && ++digit[j - 1] == b.pools[j - 1]->size()) digit[--j] = 0;
        if (j == 0) break;
      }
    }
    for (const auto& t : st.all) st.by_type[t.type()].push_back(t);
  }
  return stages_.emplace(std::move(key), std::move(st)).first->second;
}

std::vector<TypedTerm> typed_enumerate(const TypedSignature& sig, const TypedContext& ctx,
                                       std::size_t height, std::size_t type_depth,
                                       std::uint64_t cap) {
  for (const auto& t : ctx) check_closed(sig, t);
  TypedUniverse u(sig, type_depth, cap);
  return u.terms(ctx, height);
}

std::vector<TypedContext> contexts_up_to(const TypedSignature& sig, std::size_t max_length,
                                         std::size_t type_depth) {
  std::vector<Type> types = sig.types_up_to(type_depth);
  std::vector<TypedContext> out{{}};
  std::size_t layer = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = layer; i < end; ++i) {
      for (const auto& t : types) {
        TypedContext c = out[i];
        c.push_back(t);
        out.push_back(std::move(c));
      }
    }
    layer = end;
  }
  return out;
}

// ---- laws

namespace {

class TypedSuite {
 public:
  TypedSuite(const TypedSignature& sig, const LawBounds& bounds, std::size_t type_depth)
      : sig_(sig), bounds_(bounds), universe_(sig, type_depth, bounds.cap),
        contexts_(contexts_up_to(sig, bounds.max_context, type_depth)), rng_(bounds.seed),
        report_("typed-laws", sig.name()) {
    bounds.describe(report_);
    report_.set_parameter("type_depth", std::to_string(type_depth));
  }

  LawReport run() {
    std::uint64_t universe = 0;
    for (const auto& g : contexts_) universe += universe_.terms(g, bounds_.max_height).size();
    report_.set_stat("contexts", contexts_.size());
    report_.set_stat("universe", universe);
    for (const char* name : {"type-preservation", "erasure-agreement", "right-unit", "left-unit",
                             "associativity", "rename-type-preservation",
                             "naturality-rename-then-subst", "naturality-subst-then-rename"}) {
      report_.law(name);
    }
    for (const auto& g : contexts_) {
      const auto& ts = universe_.terms(g, bounds_.max_height);
      right_unit(g, ts);
      for (const auto& d : contexts_) {
        pair_laws(g, d, ts);
        naturality_sr(g, d, ts);
        for (const auto& e : contexts_) associativity(g, d, e, ts);
      }
    }
    return std::move(report_);
  }

 private:
  const std::vector<TypedSubstitution>& pool(const TypedContext& src, const TypedContext& tgt) {
    auto key = std::make_pair(src, tgt);
    if (auto it = pools_.find(key); it != pools_.end()) return it->second.first;
    std::vector<const std::vector<TypedTerm>*> choices;
    std::vector<std::size_t> sizes;
    bool empty = false;
    for (const auto& t : src) {
      choices.push_back(&universe_.terms_of(tgt, bounds_.subst_height, t));
      sizes.push_back(choices.back()->size());
      empty = empty || sizes.back() == 0;
    }
    std::vector<TypedSubstitution> out;
    bool complete = true;
    if (!empty) {
      SplitMix64 rng(bounds_.seed ^ (src.size() * 1000003u + tgt.size()));
      complete = for_each_tuple(sizes, bounds_.pool_cap, rng, [&](std::span<const std::size_t> ix) {
        TypedSubstitution c{src, tgt, {}};
        for (std::size_t i = 0; i < ix.size(); ++i) c.images.push_back((*choices[i])[ix[i]]);
        out.push_back(std::move(c));
      });
    }
    return pools_.emplace(key, std::make_pair(std::move(out), complete)).first->second.first;
  }

  bool pool_complete(const TypedContext& src, const TypedContext& tgt) {
    pool(src, tgt);
    return pools_.at({src, tgt}).second;
  }

  std::vector<TypedRenaming> renamings(const TypedContext& src, const TypedContext& tgt) {
    std::vector<TypedRenaming> out;
    std::vector<std::vector<std::size_t>> options;
    std::vector<std::size_t> sizes;
    for (const auto& t : src) {
      options.emplace_back();
      for (std::size_t j = 0; j < tgt.size(); ++j) {
        if (tgt[j] == t) options.back().push_back(j);
      }
      if (options.back().empty()) return out;
      sizes.push_back(options.back().size());
    }
    SplitMix64 rng(bounds_.seed);
    for_each_tuple(sizes, ~std::uint64_t{0}, rng, [&](std::span<const std::size_t> ix) {
      TypedRenaming r{src, tgt, {}};
      for (std::size_t i = 0; i < ix.size(); ++i) r.map.push_back(options[i][ix[i]]);
      out.push_back(std::move(r));
    });
    return out;
  }

  std::uint64_t per_term(std::size_t terms) const {
    std::uint64_t b = terms ? bounds_.case_budget / terms : bounds_.case_budget;
    return std::max<std::uint64_t>(1, std::min(bounds_.per_term_budget, b));
  }

  static Counterexample ce(std::vector<std::pair<std::string, std::string>> in,
                           const std::string& lhs, const std::string& rhs) {
    return Counterexample{std::move(in), lhs, rhs};
  }

  void right_unit(const TypedContext& g, const std::vector<TypedTerm>& ts) {
    TypedSubstitution id = typed_identity(g);
    for (const auto& t : ts) {
      report_.law("right-unit").check([&]() -> std::optional<Counterexample> {
        TypedTerm r = typed_subst(t, id);
        if (r == t) return std::nullopt;
        return ce({{"t", print_typed_term(t)}, {"context", print_context(g)}},
                  print_typed_term(r), print_typed_term(t));
      });
    }
  }

  void pair_laws(const TypedContext& g, const TypedContext& d, const std::vector<TypedTerm>& ts) {
    const auto& cs = pool(g, d);
    bool pooled = pool_complete(g, d);
    if (!cs.empty()) {
      LawResult& left = report_.law("left-unit");
      if (!pooled) left.mark_sampled();
      for (const auto& c : cs) {
        for (std::size_t i = 0; i < g.size(); ++i) {
          left.check([&]() -> std::optional<Counterexample> {
            TypedTerm r = typed_subst(TypedTerm::var(i, g), c);
            if (r == c.images[i]) return std::nullopt;
            return ce({{"x", "x" + std::to_string(i)}, {"c", print_typed_substitution(c)}},
                      print_typed_term(r), print_typed_term(c.images[i]));
          });
        }
      }
      std::size_t sizes[] = {ts.size(), cs.size()};
      LawResult& pres = report_.law("type-preservation");
      LawResult& erasure = report_.law("erasure-agreement");
      std::uint64_t budget = per_term(ts.size()) * std::max<std::size_t>(ts.size(), 1);
      bool all = for_each_tuple(sizes, budget, rng_, [&](std::span<const std::size_t> ix) {
        const TypedTerm& t = ts[ix[0]];
        const TypedSubstitution& c = cs[ix[1]];
        TypedTerm r;
        pres.check([&]() -> std::optional<Counterexample> {
          r = typed_subst(t, c);
          if (r.type() == t.type() && r.context() == d) return std::nullopt;
          return ce({{"t", print_typed_term(t)}, {"c", print_typed_substitution(c)}},
                    print_type(r.type()) + " over " + print_context(r.context()),
                    print_type(t.type()) + " over " + print_context(d));
        });
        erasure.check([&]() -> std::optional<Counterexample> {
          std::vector<Term> images;
          for (const auto& img : c.images) images.push_back(erase(img));
          Term lhs = erase(typed_subst(t, c));
          Term rhs = subst_oracle(erase(t), Substitution(g.size(), d.size(), std::move(images)));
          if (lhs == rhs) return std::nullopt;
          return ce({{"t", print_typed_term(t)}, {"c", print_typed_substitution(c)}},
                    print_term(lhs), print_term(rhs));
        });
      });
      if (!all || !pooled) {
        pres.mark_sampled();
        erasure.mark_sampled();
      }
    }

    auto rs = renamings(g, d);
    if (rs.empty()) return;
    LawResult& rp = report_.law("rename-type-preservation");
    for (const auto& r : rs) {
      for (const auto& t : ts) {
        rp.check([&]() -> std::optional<Counterexample> {
          TypedTerm u = typed_rename(t, r);
          if (u.type() == t.type() && u.context() == d) return std::nullopt;
          return ce({{"t", print_typed_term(t)}, {"context", print_context(d)}},
                    print_type(u.type()), print_type(t.type()));
        });
      }
    }
    // Naturality against substitutions out of the renaming's target.
    for (const auto& e : contexts_) {
      const auto& after = pool(d, e);
      if (!after.empty()) natural_rs(g, d, e, ts, rs, after);
    }
  }

  void naturality_sr(const TypedContext& g, const TypedContext& d,
                     const std::vector<TypedTerm>& ts) {
    const auto& cs = pool(g, d);
    for (const auto& e : contexts_) natural_sr(g, d, e, ts, cs);
  }

  // subst(rename(t, r), c) == subst(t, r;c)
  void natural_rs(const TypedContext& g, const TypedContext& d, const TypedContext& e,
                  const std::vector<TypedTerm>& ts, const std::vector<TypedRenaming>& rs,
                  const std::vector<TypedSubstitution>& cs) {
    LawResult& law = report_.law("naturality-rename-then-subst");
    std::size_t sizes[] = {ts.size(), rs.size(), cs.size()};
    std::uint64_t budget = per_term(ts.size()) * std::max<std::size_t>(ts.size(), 1);
    bool all = for_each_tuple(sizes, budget, rng_, [&](std::span<const std::size_t> ix) {
      const TypedTerm& t = ts[ix[0]];
      const TypedRenaming& r = rs[ix[1]];
      const TypedSubstitution& c = cs[ix[2]];
      law.check([&]() -> std::optional<Counterexample> {
        TypedSubstitution rc{g, e, {}};
        for (std::size_t i = 0; i < g.size(); ++i) rc.images.push_back(c.images[r.map[i]]);
        TypedTerm lhs = typed_subst(typed_rename(t, r), c);
        TypedTerm rhs = typed_subst(t, rc);
        if (lhs == rhs) return std::nullopt;
        return ce({{"t", print_typed_term(t)}, {"c", print_typed_substitution(c)}},
                  print_typed_term(lhs), print_typed_term(rhs));
      });
    });
    if (!all || !pool_complete(d, e)) law.mark_sampled();
  }

  // rename(subst(t, c), r) == subst(t, c;r) for c : g -> d and r : d -> e.
  void natural_sr(const TypedContext& g, const TypedContext& d, const TypedContext& e,
                  const std::vector<TypedTerm>& ts, const std::vector<TypedSubstitution>& cs) {
    auto rs = renamings(d, e);
    if (rs.empty() || cs.empty()) return;
    LawResult& law = report_.law("naturality-subst-then-rename");
    std::size_t sizes[] = {ts.size(), cs.size(), rs.size()};
    std::uint64_t budget = per_term(ts.size()) * std::max<std::size_t>(ts.size(), 1);
    bool all = for_each_tuple(sizes, budget, rng_, [&](std::span<const std::size_t> ix) {
      const TypedTerm& t = ts[ix[0]];
      const TypedSubstitution& c = cs[ix[1]];
      const TypedRenaming& r = rs[ix[2]];
      law.check([&]() -> std::optional<Counterexample> {
        TypedSubstitution cr{g, e, {}};
        for (const auto& img : c.images) cr.images.push_back(typed_rename(img, r));
        TypedTerm lhs = typed_rename(typed_subst(t, c), r);
        TypedTerm rhs = typed_subst(t, cr);
        if (lhs == rhs) return std::nullopt;
        return ce({{"t", print_typed_term(t)}, {"c", print_typed_substitution(c)}},
                  print_typed_term(lhs), print_typed_term(rhs));
      });
    });
    if (!all || !pool_complete(g, d)) law.mark_sampled();
  }

  void associativity(const TypedContext& g, const TypedContext& d, const TypedContext& e,
                     const std::vector<TypedTerm>& ts) {
    const auto& cs = pool(g, d);
    const auto& ds = pool(d, e);
    if (ts.empty() || cs.empty() || ds.empty()) return;
    LawResult& law = report_.law("associativity");
    std::size_t sizes[] = {ts.size(), cs.size(), ds.size()};
    std::uint64_t budget = per_term(ts.size()) * ts.size();
    bool all = for_each_tuple(sizes, budget, rng_, [&](std::span<const std::size_t> ix) {
      const TypedTerm& t = ts[ix[0]];
      const TypedSubstitution& c = cs[ix[1]];
      const TypedSubstitution& dd = ds[ix[2]];
      law.check([&]() -> std::optional<Counterexample> {
        TypedTerm lhs = typed_subst(typed_subst(t, c), dd);
        TypedTerm rhs = typed_subst(t, typed_compose(c, dd));
        if (lhs == rhs) return std::nullopt;
        return ce({{"t", print_typed_term(t)},
                   {"c", print_typed_substitution(c)},
                   {"d", print_typed_substitution(dd)}},
                  print_typed_term(lhs), print_typed_term(rhs));
      });
    });
    if (!all || !pool_complete(g, d) || !pool_complete(d, e)) law.mark_sampled();
  }

  const TypedSignature& sig_;
  LawBounds bounds_;
  TypedUniverse universe_;
  std::vector<TypedContext> contexts_;
  SplitMix64 rng_;
  LawReport report_;
  std::map<std::pair<TypedContext, TypedContext>, std::pair<std::vector<TypedSubstitution>, bool>>
      pools_;
};

}  // namespace

LawReport run_typed_law_suite(const TypedSignature& sig, const LawBounds& bounds,
                              std::size_t type_depth) {
  return TypedSuite(sig, bounds, type_depth).run();
}

}  // namespace initsem
