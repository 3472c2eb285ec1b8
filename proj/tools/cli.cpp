#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "initsem/builtin.hpp"
#include "initsem/enumerate.hpp"
#include "initsem/error.hpp"
#include "initsem/free.hpp"
#include "initsem/lambek.hpp"
#include "initsem/laws.hpp"
#include "initsem/model.hpp"
#include "initsem/modularity.hpp"
#include "initsem/report.hpp"
#include "initsem/signature.hpp"
#include "initsem/subst.hpp"
#include "initsem/term.hpp"
#include "initsem/translate.hpp"
#include "initsem/typed.hpp"

namespace initsem::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path to a .sig file or the name of a built-in signature.
Signature load_signature(const std::string& spec) {
  if (fs::is_regular_file(spec)) return parse_signature(read_file(spec));
  if (auto b = builtin::find(spec)) return *b;
  throw Error(ErrorKind::Usage, "no signature file or built-in named " + spec);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// SRC and TGT of an interpretation: `<dir>/<lower name>.sig` next to the
// file, else a built-in.
Signature resolve_named(const fs::path& dir, const std::string& name) {
  fs::path candidate = dir / (lower(name) + ".sig");
  if (fs::is_regular_file(candidate)) {
    Signature s = parse_signature(read_file(candidate.string()));
    if (s.name() != name) {
      throw Error(ErrorKind::Interpretation,
                  candidate.string() + " declares " + s.name() + ", expected " + name);
    }
    return s;
  }
  if (auto b = builtin::find(name)) return *b;
  throw Error(ErrorKind::Usage, "cannot resolve signature " + name + " for interpretation");
}

Interpretation load_interpretation(const std::string& path, const Faults& faults) {
  std::string text = read_file(path);
  InterpretationHeader h = parse_interpretation_header(text);
  fs::path dir = fs::path(path).parent_path();
  return parse_interpretation(text, resolve_named(dir, h.source), resolve_named(dir, h.target),
                              faults);
}

TypedSignature load_typed(const std::string& path) {
  std::string stem = fs::path(path).stem().string();
  return parse_typed_signature(read_file(path), stem);
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  RunConfig cfg;

  LawBounds bounds(std::uint64_t default_samples = 0) const {
    LawBounds b;
    b.max_context = cfg.max_context;
    b.max_height = cfg.max_height;
    b.subst_height = cfg.subst_height;
    b.samples = cfg.samples_given ? cfg.samples : default_samples;
    b.exhaustive = cfg.exhaustive || !cfg.samples_given;
    b.seed = cfg.seed;
    b.cap = cfg.cap;
    return b;
  }

  int report(const LawReport& r, json extra = json::object()) {
    if (cfg.format == Format::Json) {
      json j = to_json(r);
      for (auto& [k, v] : extra.items()) j[k] = v;
      out_ << j.dump(2) << "\n";
    } else {
      for (auto& [k, v] : extra.items()) {
        out_ << k << ":\n" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
      out_ << render_text(r);
    }
    return r.passed() ? kOk : kLawFailure;
  }

  // One value in text mode; `j` in JSON mode.
  int emit(const std::string& text, const json& j) {
    if (cfg.format == Format::Json) {
      json wrapped = {{"schema", kReportSchema}};
      for (auto& [k, v] : j.items()) wrapped[k] = v;
      out_ << wrapped.dump(2) << "\n";
    } else {
      out_ << text;
      if (!text.empty() && text.back() != '\n') out_ << "\n";
    }
    return kOk;
  }

  ModelPtr model(const Signature& sig, const std::string& name) {
    ModelPtr m = base_model(sig, name);
    return apply_model_faults(std::move(m), cfg.faults);
  }

  ModelPtr base_model(const Signature& sig, const std::string& name) {
    if (name == "terminal") return terminal_model(sig);
    if (name == "initial") return initial_model(sig);
    if (name == "support") return support_model(sig);
    if (name.rfind("fixpoint:", 0) == 0) return fixpoint_model(base_model(sig, name.substr(9)));
    if (name.rfind("free:", 0) == 0) {
      return free_model(sig, parse_generators(name.substr(5))).as_sig_model;
    }
    if (name.rfind("interp:", 0) == 0) {
      Interpretation i = load_interpretation(name.substr(7), cfg.faults);
      if (!(i.source == sig)) {
        throw Error(ErrorKind::Morphism,
                    "interpretation source " + i.source.name() + " is not " + sig.name());
      }
      return induced_model(i);
    }
    throw Error(ErrorKind::Usage, "unknown model " + name +
                                      " (terminal, initial, support, fixpoint:M, free:GENS, "
                                      "interp:FILE)");
  }

  std::ostream& out_;
  std::ostream& err_;
};

json term_list(const std::vector<Term>& ts) {
  json a = json::array();
  for (const auto& t : ts) a.push_back(print_term(t));
  return a;
}

json term_tree(const Term& t) {
  if (t.is_var()) return {{"var", t.level()}};
  json args = json::array();
  for (std::size_t j = 0; j < t.args().size(); ++j) {
    args.push_back({{"binders", t.binders(j)}, {"body", term_tree(t.args()[j])}});
  }
  return {{"con", t.constructor()}, {"args", args}};
}

std::string lines(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += x + "\n";
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  RunConfig& cfg = r.cfg;
  std::function<int()> action;

  CLI::App app{"initsem: binding signatures, substitution and initial semantics"};
  app.name("initsem");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::vector<std::string> faults;
  app.add_option("--seed", cfg.seed, "Seed for every random choice");
  app.add_option("--max-context", cfg.max_context, "Largest context in law suites");
  app.add_option("--max-height", cfg.max_height, "Largest term height in law suites");
  app.add_option("--subst-height", cfg.subst_height, "Height of substitution images");
  app.add_option("--samples", cfg.samples, "Random cases (sampled mode unless --exhaustive)");
  app.add_flag("--exhaustive", cfg.exhaustive, "Visit the whole bounded universe");
  app.add_option("--cap", cfg.cap, "Largest universe materialized")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--allow-uncertified", cfg.allow_uncertified, "Fold into models that fail laws");
  app.add_option("--fault-inject", faults, "Enable a deliberate defect (testing only)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  std::string file, file2, file3, term_text, map_text, gens_text, model_name, assign_text,
      out_path, left_map, right_map, ctx_text, target_text;
  std::size_t context = 0, height = 0, type_depth = 1;
  std::optional<std::size_t> target;
  bool count = false, enumerate = false;
  std::string engine_name = "hss";

  auto* sig = app.add_subcommand("sig", "Signature tools");
  sig->require_subcommand(1);
  auto* sig_check = sig->add_subcommand("check", "Parse and print a signature");
  sig_check->add_option("FILE", file)->required();
  sig_check->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      json cons = json::array();
      for (const auto& c : s.constructors()) {
        cons.push_back({{"name", c.name}, {"arity", c.arity.binders}});
      }
      return r.emit(print_signature(s), {{"signature", s.name()}, {"constructors", cons}});
    };
  });

  auto* en = app.add_subcommand("enum", "Enumerate terms by height");
  en->add_option("FILE", file)->required();
  en->add_option("--context", context)->required();
  en->add_option("--height", height)->required();
  en->add_flag("--count", count, "Print only the count");
  en->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      if (count) {
        std::uint64_t n = count_terms(s, context, height);
        return r.emit(std::to_string(n), {{"signature", s.name()}, {"count", n}});
      }
      auto ts = enumerate_terms(s, context, height, cfg.cap);
      std::vector<std::string> printed;
      for (const auto& t : ts) printed.push_back(print_term(t));
      return r.emit(lines(printed), {{"signature", s.name()}, {"count", ts.size()},
                                     {"terms", term_list(ts)}});
    };
  });

  auto* term = app.add_subcommand("term", "Parse or print a term");
  term->require_subcommand(1);
  for (const char* mode : {"parse", "print"}) {
    auto* sub = term->add_subcommand(mode, std::string(mode) + " a term");
    sub->add_option("FILE", file)->required();
    sub->add_option("--context", context)->required();
    sub->add_option("--term", term_text)->required();
    bool tree = std::string(mode) == "parse";
    sub->callback([&, tree] {
      action = [&, tree] {
        Signature s = load_signature(file);
        Term t = parse_term(s, context, term_text);
        std::string text = print_term(t);
        json j = {{"signature", s.name()}, {"context", context}, {"term", text},
                  {"height", t.height()}};
        if (tree) {
          j["tree"] = term_tree(t);
          text += "\ncontext " + std::to_string(context) + ", height " + std::to_string(t.height());
        }
        return r.emit(text, j);
      };
    });
  }

  auto* sub = app.add_subcommand("subst", "Substitute with both engines");
  sub->add_option("FILE", file)->required();
  sub->add_option("--context", context)->required();
  sub->add_option("--target", target, "Target context (default: --context)");
  sub->add_option("--term", term_text)->required();
  sub->add_option("--map", map_text)->required();
  sub->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      Term t = parse_term(s, context, term_text);
      Substitution c = parse_substitution(s, context, target.value_or(context), map_text);
      Term a = subst_oracle(t, c, cfg.faults);
      Term b = subst_hss(t, c, cfg.faults);
      bool same = a == b;
      std::string text = print_term(b);
      if (!same) text = "engines diverge\n  oracle: " + print_term(a) + "\n  hss:    " + text;
      r.emit(text, {{"signature", s.name()},
                    {"oracle", print_term(a)},
                    {"hss", print_term(b)},
                    {"agree", same}});
      return same ? kOk : kLawFailure;
    };
  });

  auto* laws = app.add_subcommand("laws", "Monoid, module and strength law suite");
  laws->add_option("FILE", file)->required();
  laws->add_option("--engine", engine_name)->check(CLI::IsMember({"hss", "oracle"}));
  laws->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      SubstEngineOptions o{engine_name == "hss" ? Engine::Hss : Engine::Oracle, cfg.faults};
      return r.report(run_monoid_law_suite(s, r.bounds(), o));
    };
  });

  auto* lambek = app.add_subcommand("lambek", "Check I + Sigma(T_k) = T_{k+1}");
  lambek->add_option("FILE", file)->required();
  lambek->add_option("--context", context)->required();
  lambek->add_option("--height", height)->required();
  lambek->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      LambekOptions o;
      o.cap = cfg.cap;
      if (cfg.samples_given) o.samples = cfg.samples;
      o.seed = cfg.seed;
      return r.report(check_lambek(s, context, height, o));
    };
  });

  auto* model = app.add_subcommand("model", "Model laws, morphism checks and folds");
  model->require_subcommand(1);
  auto* model_laws = model->add_subcommand("laws", "Monoid and module laws of a model");
  auto* model_check = model->add_subcommand("check", "Check the fold is a model morphism");
  auto* model_fold = model->add_subcommand("fold", "Fold a term into a model");
  for (auto* m : {model_laws, model_check, model_fold}) {
    m->add_option("FILE", file)->required();
    m->add_option("--model", model_name)->required();
  }
  model_fold->add_option("--context", context)->required();
  model_fold->add_option("--term", term_text)->required();
  model_laws->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      return r.report(run_model_law_suite(*r.model(s, model_name), r.bounds()));
    };
  });
  model_check->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      return r.report(check_model_morphism(*r.model(s, model_name), r.bounds(),
                                           SubstEngineOptions{Engine::Hss, cfg.faults}));
    };
  });
  model_fold->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      Term t = parse_term(s, context, term_text);
      CertifiedFold f(r.model(s, model_name), r.bounds(), cfg.allow_uncertified);
      if (!f.certified()) r.err_ << "warning: " << model_name << " fails its law suite\n";
      Value v = f(t);
      return r.emit(to_string(v), {{"model", f.model().name()},
                                   {"term", print_term(t)},
                                   {"value", to_string(v)},
                                   {"certified", f.certified()}});
    };
  });

  auto* fr = app.add_subcommand("free", "Free model on generators");
  fr->add_option("FILE", file)->required();
  fr->add_option("--generators", gens_text)->required();
  fr->add_flag("--enum", enumerate, "Enumerate the free model's terms");
  fr->add_option("--context", context);
  fr->add_option("--height", height);
  fr->add_flag("--count", count);
  fr->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      FreeModel fm = free_model(s, parse_generators(gens_text));
      json j = {{"signature", print_signature(fm.extended)}};
      std::string text = print_signature(fm.extended);
      if (enumerate || count) {
        std::uint64_t n = count_terms(fm.extended, context, height);
        j["count"] = n;
        if (count) {
          text = std::to_string(n);
        } else {
          auto ts = enumerate_terms(fm.extended, context, height, cfg.cap);
          j["terms"] = term_list(ts);
          std::vector<std::string> printed;
          for (const auto& t : ts) printed.push_back(print_term(t));
          text = lines(printed);
        }
      }
      return r.emit(text, j);
    };
  });

  auto* adj = app.add_subcommand("adjoint", "Free/forgetful adjunction round trip");
  adj->add_option("FILE", file)->required();
  adj->add_option("--generators", gens_text)->required();
  adj->add_option("--model", model_name)->required();
  adj->add_option("--assign", assign_text)->required();
  adj->callback([&] {
    action = [&] {
      Signature s = load_signature(file);
      GeneratorSet gens = parse_generators(gens_text);
      ModelPtr m = r.model(s, model_name);
      Assignment f = parse_assignment(*m, gens, assign_text);
      return r.report(adjunction_roundtrip(s, gens, m, f, r.bounds(), cfg.faults));
    };
  });

  auto* po = app.add_subcommand("pushout", "Amalgamated union and its models");
  po->add_option("BASE", file)->required();
  po->add_option("LEFT", file2)->required();
  po->add_option("RIGHT", file3)->required();
  po->add_option("--left-map", left_map);
  po->add_option("--right-map", right_map);
  po->add_option("-o,--output", out_path, "Write the apex signature here");
  po->callback([&] {
    action = [&] {
      Signature base = load_signature(file);
      SignatureMorphism lm = make_morphism(base, load_signature(file2), parse_constructor_map(left_map));
      SignatureMorphism rm = make_morphism(base, load_signature(file3), parse_constructor_map(right_map));
      SignaturePushout p = pushout_signatures(base, lm, rm);
      std::string apex = print_signature(p.apex);
      if (!out_path.empty()) {
        std::ofstream o(out_path, std::ios::binary);
        if (!o) throw Error(ErrorKind::Usage, "cannot write " + out_path);
        o << apex;
      }
      json extra = json::object();
      if (out_path.empty()) extra["apex"] = apex;
      return r.report(pushout_models(base, lm, rm, r.bounds()), extra);
    };
  });

  auto* tr = app.add_subcommand("translate", "Translate a term along an interpretation");
  tr->add_option("INTERP", file)->required();
  tr->add_option("--context", context)->required();
  tr->add_option("--term", term_text)->required();
  tr->callback([&] {
    action = [&] {
      Interpretation i = load_interpretation(file, cfg.faults);
      Term t = translate_term(i, parse_term(i.source, context, term_text));
      return r.emit(print_term(t), {{"interpretation", i.name}, {"term", print_term(t)}});
    };
  });

  auto* safety = app.add_subcommand("safety", "Substitution-safety square of an interpretation");
  safety->add_option("INTERP", file)->required();
  safety->callback([&] {
    action = [&] {
      Interpretation i = load_interpretation(file, cfg.faults);
      return r.report(check_substitution_safety(i, r.bounds(10'000)));
    };
  });

  auto* typed = app.add_subcommand("typed", "Simply-typed signatures");
  typed->require_subcommand(1);
  auto* t_check = typed->add_subcommand("check", "Parse a typed signature, optionally a term");
  auto* t_enum = typed->add_subcommand("enum", "Enumerate typed terms");
  auto* t_laws = typed->add_subcommand("laws", "Typed substitution laws");
  auto* t_subst = typed->add_subcommand("subst", "Typed substitution");
  for (auto* t : {t_check, t_enum, t_laws, t_subst}) t->add_option("FILE", file)->required();
  for (auto* t : {t_check, t_enum, t_subst}) {
    t->add_option("--context", ctx_text, "Comma-separated types, optionally name:type");
  }
  t_check->add_option("--term", term_text);
  t_subst->add_option("--term", term_text)->required();
  t_subst->add_option("--target", target_text)->required();
  t_subst->add_option("--map", map_text)->required();
  t_enum->add_option("--height", height)->required();
  for (auto* t : {t_enum, t_laws}) t->add_option("--type-depth", type_depth);
  t_enum->add_flag("--count", count);
  t_check->callback([&] {
    action = [&] {
      TypedSignature s = load_typed(file);
      if (term_text.empty()) {
        return r.emit(print_typed_signature(s), {{"signature", s.name()},
                                                 {"schemas", s.schemas().size()}});
      }
      std::vector<std::string> names;
      TypedContext g = parse_typed_context(s, ctx_text, &names);
      TypedTerm t = typecheck_term(s, g, term_text, names);
      return r.emit(print_typed_term(t) + " : " + print_type(t.type()),
                    {{"term", print_typed_term(t)}, {"type", print_type(t.type())},
                     {"context", print_context(g)}});
    };
  });
  t_enum->callback([&] {
    action = [&] {
      TypedSignature s = load_typed(file);
      TypedContext g = parse_typed_context(s, ctx_text);
      auto ts = typed_enumerate(s, g, height, type_depth, cfg.cap);
      if (count) {
        return r.emit(std::to_string(ts.size()), {{"signature", s.name()}, {"count", ts.size()}});
      }
      std::vector<std::string> printed;
      json a = json::array();
      for (const auto& t : ts) {
        printed.push_back(print_typed_term(t) + " : " + print_type(t.type()));
        a.push_back({{"term", print_typed_term(t)}, {"type", print_type(t.type())}});
      }
      return r.emit(lines(printed), {{"signature", s.name()}, {"count", ts.size()}, {"terms", a}});
    };
  });
  t_laws->callback([&] {
    action = [&] { return r.report(run_typed_law_suite(load_typed(file), r.bounds(), type_depth)); };
  });
  t_subst->callback([&] {
    action = [&] {
      TypedSignature s = load_typed(file);
      TypedContext g = parse_typed_context(s, ctx_text);
      TypedContext d = parse_typed_context(s, target_text);
      TypedTerm t = typecheck_term(s, g, term_text);
      TypedTerm res = typed_subst(t, parse_typed_substitution(s, g, d, map_text));
      return r.emit(print_typed_term(res) + " : " + print_type(res.type()),
                    {{"term", print_typed_term(res)}, {"type", print_type(res.type())}});
    };
  });

  std::vector<std::string> argv_store = {"initsem"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    cfg.samples_given = app.count("--samples") > 0;
    cfg.format = format == "json" ? Format::Json : Format::Text;
    for (const auto& f : faults) enable_fault(cfg.faults, f);
    if (!action) throw Error(ErrorKind::Usage, "no command");
    return action();
  } catch (const SyntaxError& e) {
    err << "error: syntax: line " << e.line() << ", column " << e.column() << ": " << e.what()
        << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Resource:
        return kResource;
      case ErrorKind::Uncertified:
        return kLawFailure;
      default:
        return kUsage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace initsem::cli
