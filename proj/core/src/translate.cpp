#include "initsem/translate.hpp"

#include <algorithm>
#include <sstream>

#include "initsem/error.hpp"
#include "scanner.hpp"

namespace initsem {

namespace {

std::string at_pos(std::size_t line, std::size_t col) {
  return std::to_string(line) + ":" + std::to_string(col) + ": ";
}

void print_template_into(const Template& t, std::string& out) {
  if (t.is_hole) {
    out += "$" + std::to_string(t.hole);
    return;
  }
  out += t.constructor + "(";
  for (std::size_t j = 0; j < t.args.size(); ++j) {
    if (j) out += ", ";
    if (t.args[j].first) out += "{" + std::to_string(t.args[j].first) + "} ";
    print_template_into(t.args[j].second, out);
  }
  out += ")";
}

struct TemplateParser {
  const Signature& target;
  const Constructor& source;
  bool allow_wrong_depth;
  detail::Scanner& in;
  bool wrong_depth_seen = false;

  Template parse(std::size_t depth) {
    std::size_t line = in.line(), col = in.column();
    Template out;
    if (in.accept("$")) {
      std::size_t j = in.expect_nat("hole number");
      if (j == 0 || j > source.arity.size()) {
        throw Error(ErrorKind::Interpretation,
                    at_pos(line, col) + "hole $" + std::to_string(j) + " out of range for '" +
                        source.name + "' with " + std::to_string(source.arity.size()) +
                        " argument(s)");
      }
      std::size_t m = source.arity.binders[j - 1];
      if (depth != m) {
        if (!allow_wrong_depth) {
          throw Error(ErrorKind::Interpretation,
                      at_pos(line, col) + "hole $" + std::to_string(j) + " sits under " +
                          std::to_string(depth) + " binder(s) but argument " + std::to_string(j) +
                          " of '" + source.name + "' binds " + std::to_string(m));
        }
        wrong_depth_seen = true;
      }
      out.is_hole = true;
      out.hole = j;
      return out;
    }
    std::string id = in.expect_ident("template");
    if (in.peek() != '(') {
      throw Error(ErrorKind::Interpretation,
                  at_pos(line, col) + "templates may not mention variables ('" + id + "')");
    }
    const Constructor* c = target.find(id);
    if (!c) {
      throw Error(ErrorKind::UnknownConstructor,
                  at_pos(line, col) + "unknown target constructor '" + id + "'");
    }
    out.constructor = c->name;
    in.expect("(");
    if (!in.accept(")")) {
      do {
        std::size_t binders = 0;
        if (in.accept("{")) {
          binders = in.expect_nat("binder count");
          in.expect("}");
        }
        std::size_t j = out.args.size();
        if (j >= c->arity.size()) {
          throw Error(ErrorKind::Arity, at_pos(line, col) + "too many arguments for '" + c->name + "'");
        }
        if (binders != c->arity.binders[j]) {
          throw Error(ErrorKind::Arity,
                      at_pos(line, col) + "argument " + std::to_string(j) + " of '" + c->name +
                          "' binds " + std::to_string(c->arity.binders[j]) +
                          " variable(s), marker says " + std::to_string(binders));
        }
        out.args.emplace_back(binders, parse(depth + binders));
      } while (in.accept(","));
      in.expect(")");
    }
    if (out.args.size() != c->arity.size()) {
      throw Error(ErrorKind::Arity, at_pos(line, col) + "'" + c->name + "' expects " +
                                        std::to_string(c->arity.size()) + " argument(s)");
    }
    return out;
  }
};

std::vector<std::pair<std::size_t, std::string_view>> logical_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line = 1, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(start, end - start);
    std::string_view trimmed = l.substr(std::min(l.size(), l.find_first_not_of(" \t\r")));
    if (!trimmed.empty() && !trimmed.starts_with("--")) out.emplace_back(line, l);
    start = end + 1;
    ++line;
  }
  return out;
}

InterpretationHeader read_header(detail::Scanner& in) {
  InterpretationHeader h;
  in.expect_keyword("interp");
  h.name = in.expect_ident("interpretation name");
  in.expect(":");
  h.source = in.expect_ident("source signature");
  in.expect("->");
  h.target = in.expect_ident("target signature");
  if (!in.at_end()) in.fail("trailing input after header" + in.found());
  return h;
}

Term place(const Term& arg, std::size_t hole, std::size_t context, std::size_t depth,
           std::size_t binders) {
  std::size_t have = context + binders;
  std::size_t want = context + depth;
  if (have == want) return arg;
  if (want > have) return weaken(arg, want);
  if (want == 0) {
    throw Error(ErrorKind::Scope, "hole $" + std::to_string(hole) + " has no level to land on");
  }
  std::vector<std::size_t> map(have);
  for (std::size_t l = 0; l < have; ++l) map[l] = std::min(l, want - 1);
  return rename(arg, Renaming(have, want, std::move(map)));
}

Term instantiate_at(const Interpretation& interp, const Constructor& source, const Template& t,
                    std::span<const Term> args, std::size_t context, std::size_t depth) {
  if (t.is_hole) {
    return place(args[t.hole - 1], t.hole, context, depth, source.arity.binders[t.hole - 1]);
  }
  std::vector<Term> children;
  children.reserve(t.args.size());
  for (const auto& [m, child] : t.args) {
    children.push_back(instantiate_at(interp, source, child, args, context, depth + m));
  }
  return make_con(interp.target, t.constructor, std::move(children), context + depth);
}

class InducedModel final : public Model {
 public:
  InducedModel(Interpretation interp, SubstEngineOptions options)
      : interp_(std::move(interp)), options_(options) {}
  std::string name() const override { return "interp:" + interp_.name; }
  const Signature& signature() const override { return interp_.source; }
  Value var(std::size_t i, std::size_t n) const override { return Value::term(Term::var(i, n)); }
  Value op(std::string_view c, std::span<const Value> args, std::size_t n) const override {
    std::vector<Term> ts;
    ts.reserve(args.size());
    for (const auto& a : args) ts.push_back(a.term());
    return Value::term(instantiate(interp_, c, ts, n));
  }
  Value rename(const Value& v, const Renaming& r) const override {
    return Value::term(initsem::rename(v.term(), r));
  }
  Value subst(const Value& v, std::span<const Value> images, std::size_t target) const override {
    std::vector<Term> ts;
    ts.reserve(images.size());
    for (const auto& a : images) ts.push_back(a.term());
    return Value::term(
        substitute(options_.engine, v.term(), Substitution(images.size(), target, std::move(ts)),
                   options_.faults));
  }
  Value parse_element(std::string_view text, std::size_t n) const override {
    return Value::term(parse_term(interp_.target, n, text));
  }

 private:
  Interpretation interp_;
  SubstEngineOptions options_;
};

std::vector<Term> translate_all(const Interpretation& interp, std::span<const Term> ts) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(translate_term(interp, t));
  return out;
}

}  // namespace

std::string print_template(const Template& t) {
  std::string out;
  print_template_into(t, out);
  return out;
}

const Template& Interpretation::at(std::string_view constructor) const {
  auto it = templates.find(std::string(constructor));
  if (it == templates.end()) {
    throw Error(ErrorKind::Interpretation, "no template for '" + std::string(constructor) + "'");
  }
  return it->second;
}

InterpretationHeader parse_interpretation_header(std::string_view text) {
  auto lines = logical_lines(text);
  if (lines.empty()) throw SyntaxError(1, 1, "expected 'interp NAME : SRC -> TGT'");
  detail::Scanner in(lines[0].second, lines[0].first);
  return read_header(in);
}

Interpretation parse_interpretation(std::string_view text, const Signature& source,
                                    const Signature& target, const Faults& faults) {
  auto lines = logical_lines(text);
  if (lines.empty()) throw SyntaxError(1, 1, "expected 'interp NAME : SRC -> TGT'");
  detail::Scanner head(lines[0].second, lines[0].first);
  InterpretationHeader h = read_header(head);
  if (h.source != source.name() || h.target != target.name()) {
    throw Error(ErrorKind::Interpretation,
                "interpretation " + h.name + " is " + h.source + " -> " + h.target + ", not " +
                    source.name() + " -> " + target.name());
  }
  Interpretation out{h.name, source, target, {}, false};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    detail::Scanner in(lines[i].second, lines[i].first);
    std::size_t line = in.line(), col = in.column();
    std::string name = in.expect_ident("source constructor");
    const Constructor* c = source.find(name);
    if (!c) {
      throw Error(ErrorKind::UnknownConstructor,
                  at_pos(line, col) + "unknown source constructor '" + name + "'");
    }
    if (out.templates.contains(name)) {
      throw Error(ErrorKind::Duplicate, at_pos(line, col) + "second template for '" + name + "'");
    }
    in.expect("(");
    std::size_t j = 0;
    if (!in.accept(")")) {
      do {
        std::size_t m = 0;
        if (in.accept("{")) {
          m = in.expect_nat("binder count");
          in.expect("}");
        }
        in.expect("$");
        std::size_t hole = in.expect_nat("hole number");
        if (j >= c->arity.size()) in.fail("too many pattern arguments for '" + name + "'");
        if (hole != j + 1) in.fail("pattern argument " + std::to_string(j + 1) + " must be $" + std::to_string(j + 1));
        if (m != c->arity.binders[j]) {
          throw Error(ErrorKind::Arity, at_pos(line, col) + "pattern argument $" +
                                            std::to_string(j + 1) + " of '" + name + "' binds " +
                                            std::to_string(c->arity.binders[j]) +
                                            " variable(s), marker says " + std::to_string(m));
        }
        ++j;
      } while (in.accept(","));
      in.expect(")");
    }
    if (j != c->arity.size()) {
      throw Error(ErrorKind::Arity, at_pos(line, col) + "pattern for '" + name + "' has " +
                                        std::to_string(j) + " argument(s), arity is " +
                                        to_string(c->arity));
    }
    in.expect("=");
    TemplateParser parser{target, *c, faults.template_depth, in};
    Template t = parser.parse(0);
    if (!in.at_end()) in.fail("trailing input" + in.found());
    out.depth_override = out.depth_override || parser.wrong_depth_seen;
    out.templates.emplace(name, std::move(t));
  }
  for (const auto& c : source.constructors()) {
    if (!out.templates.contains(c.name)) {
      throw Error(ErrorKind::Interpretation, "missing template for '" + c.name + "'");
    }
  }
  return out;
}

std::string print_interpretation(const Interpretation& interp) {
  std::string out = "interp " + interp.name + " : " + interp.source.name() + " -> " +
                    interp.target.name() + "\n";
  for (const auto& c : interp.source.constructors()) {
    out += c.name + "(";
    for (std::size_t j = 0; j < c.arity.size(); ++j) {
      if (j) out += ", ";
      if (c.arity.binders[j]) out += "{" + std::to_string(c.arity.binders[j]) + "} ";
      out += "$" + std::to_string(j + 1);
    }
    out += ") = " + print_template(interp.at(c.name)) + "\n";
  }
  return out;
}

Term instantiate(const Interpretation& interp, std::string_view constructor,
                 std::span<const Term> args, std::size_t context) {
  const Constructor& c = interp.source.at(constructor);
  if (args.size() != c.arity.size()) {
    throw Error(ErrorKind::Arity, "'" + c.name + "' expects " + std::to_string(c.arity.size()) +
                                      " argument(s)");
  }
  return instantiate_at(interp, c, interp.at(constructor), args, context, 0);
}

Term translate_term(const Interpretation& interp, const Term& t) {
  if (t.is_var()) return t;
  return instantiate(interp, t.constructor(), translate_all(interp, t.args()), t.context());
}

ModelPtr induced_model(const Interpretation& interp, SubstEngineOptions options) {
  return std::make_shared<InducedModel>(interp, options);
}

LawReport check_substitution_safety(const Interpretation& interp, const LawBounds& bounds) {
  LawReport report("substitution-safety", interp.name);
  bounds.describe(report);
  report.set_parameter("source", interp.source.name());
  report.set_parameter("target", interp.target.name());

  TermUniverse universe(interp.source, bounds.cap);
  SubstitutionPool pool(universe, bounds.subst_height, bounds.pool_cap, bounds.seed ^ 0x5eed);
  SplitMix64 rng(bounds.seed);
  ModelPtr model = induced_model(interp);

  LawResult& square = report.law("square");
  LawResult& random = report.law("square-random");
  LawResult& ren = report.law("rename");
  LawResult& scope = report.law("context-preserved");
  LawResult& agree = report.law("fold-agreement");
  random.mark_sampled();

  auto square_case = [&](LawResult& law, const Term& t, const Term& tt, const Substitution& c) {
    law.check([&]() -> std::optional<Counterexample> {
      Term lhs = translate_term(interp, subst_oracle(t, c));
      Substitution tc(c.source(), c.target(), translate_all(interp, c.images()));
      Term rhs = subst_oracle(tt, tc);
      if (lhs == rhs) return std::nullopt;
      return Counterexample{{{"t", print_term(t)}, {"context", std::to_string(t.context())},
                             {"c", print_substitution(c)}, {"c.target", std::to_string(c.target())}},
                            print_term(lhs), print_term(rhs)};
    });
  };

  auto budget = [&](std::size_t subjects) {
    std::uint64_t b = bounds.per_term_budget;
    if (subjects > 0) b = std::min<std::uint64_t>(b, bounds.case_budget / subjects);
    return std::max<std::uint64_t>(b, 1);
  };

  for (std::size_t n = 0; n <= bounds.max_context; ++n) {
    std::vector<Term> ts;
    if (bounds.exhaustive) {
      ts = universe.terms(n, bounds.max_height);
    } else if (universe.count(n, bounds.max_height) > 0) {
      for (LawResult* l : {&square, &ren, &scope, &agree}) l->mark_sampled();
      for (std::uint64_t s = 0; s < bounds.samples; ++s) {
        ts.push_back(universe.sample(n, bounds.max_height, rng));
      }
    }
    for (const auto& t : ts) {
      Term tt;
      scope.check([&]() -> std::optional<Counterexample> {
        tt = translate_term(interp, t);
        if (tt.context() == t.context() && is_well_scoped(interp.target, tt)) return std::nullopt;
        return Counterexample{{{"t", print_term(t)}}, print_term(tt),
                              "a target term over " + std::to_string(t.context())};
      });
      if (!tt.valid()) continue;
      agree.check([&]() -> std::optional<Counterexample> {
        Value v = fold(*model, t);
        if (v.term() == tt) return std::nullopt;
        return Counterexample{{{"t", print_term(t)}}, print_term(tt), to_string(v)};
      });
      for (std::size_t n1 = 0; n1 <= bounds.max_context; ++n1) {
        if (!pool.complete(n, n1)) square.mark_sampled();
        const auto& cs = pool.get(n, n1);
        std::vector<std::size_t> size{cs.size()};
        if (!for_each_tuple(size, budget(ts.size()), rng, [&](std::span<const std::size_t> ix) {
              square_case(square, t, tt, cs[ix[0]]);
            })) {
          square.mark_sampled();
        }
        auto rs = all_renamings(n, n1);
        std::vector<std::size_t> rsize{rs.size()};
        if (!for_each_tuple(rsize, budget(ts.size()), rng, [&](std::span<const std::size_t> ix) {
              const Renaming& r = rs[ix[0]];
              ren.check([&]() -> std::optional<Counterexample> {
                Term lhs = translate_term(interp, rename(t, r));
                Term rhs = rename(tt, r);
                if (lhs == rhs) return std::nullopt;
                return Counterexample{{{"t", print_term(t)}, {"r", print_renaming(r)}},
                                      print_term(lhs), print_term(rhs)};
              });
            })) {
          ren.mark_sampled();
        }
      }
    }
  }

  // Random larger cases: contexts up to max_context + 1, heights up to
  // max_height + 1.
  std::size_t rc = bounds.max_context + 1, rh = bounds.max_height + 1;
  std::vector<std::size_t> contexts;
  for (std::size_t n = 0; n <= rc; ++n) {
    if (universe.count(n, rh) > 0) contexts.push_back(n);
  }
  std::vector<std::size_t> targets;
  for (std::size_t n = 0; n <= rc; ++n) {
    if (universe.count(n, bounds.subst_height + 1) > 0) targets.push_back(n);
  }
  for (std::uint64_t s = 0; s < bounds.samples && !contexts.empty() && !targets.empty(); ++s) {
    std::size_t n = contexts[rng.below(contexts.size())];
    std::size_t n1 = targets[rng.below(targets.size())];
    Term t = universe.sample(n, rh, rng);
    std::vector<Term> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(universe.sample(n1, bounds.subst_height + 1, rng));
    Substitution c(n, n1, std::move(images));
    Term tt;
    try {
      tt = translate_term(interp, t);
    } catch (const std::exception& e) {
      random.check([&]() -> std::optional<Counterexample> {
        return Counterexample{{{"t", print_term(t)}}, std::string("error: ") + e.what(), "a term"};
      });
      continue;
    }
    square_case(random, t, tt, c);
  }
  return report;
}

}  // namespace initsem
