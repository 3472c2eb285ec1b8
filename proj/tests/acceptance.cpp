// Runs the acceptance criteria end to end and prints one line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "cli.hpp"
#include "initsem/builtin.hpp"
#include "initsem/enumerate.hpp"
#include "initsem/free.hpp"
#include "initsem/lambek.hpp"
#include "initsem/laws.hpp"
#include "initsem/model.hpp"
#include "initsem/modularity.hpp"
#include "initsem/subst.hpp"
#include "initsem/translate.hpp"
#include "initsem/typed.hpp"
#include "oracle.hpp"

using namespace initsem;

namespace {

std::string fixture(const std::string& name) {
  return std::string(INITSEM_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& name) {
  std::ifstream in(fixture(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(1);
  o << std::fixed << s << " s";
  return o.str();
}

void require_report(Outcome& o, const LawReport& r, const std::string& label,
                    bool all_exhaustive = false) {
  o.require(r.passed(), label + ": " + std::to_string(r.failure_count()) + " failures");
  for (const auto& [name, law] : r.laws()) {
    if (all_exhaustive) o.require(law.coverage == "exhaustive", label + ": " + name + " sampled");
  }
}

bool has_law_prefix(const LawReport& r, const std::string& prefix) {
  for (const auto& [name, law] : r.laws()) {
    if (name.rfind(prefix, 0) == 0 && law.cases > 0) return true;
  }
  return false;
}

// ---- 1

Outcome monoid_laws() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t cases = 0;
  const auto& lc = builtin::lambda_calculus();
  o.require(oracle::brute_terms(lc, 0, 3).size() == 5, "T3(0) != 5");
  o.require(oracle::brute_terms(lc, 1, 3).size() == 26, "T3(1) != 26");
  o.require(count_terms(lc, 0, 3) == 5 && count_terms(lc, 1, 3) == 26, "LC counts");
  for (const Signature& sig : builtin::law_fixtures()) {
    LawBounds b;
    bool full = sig.name() == "LC";
    if (full) {
      // Every partner combination too.
      b.per_term_budget = b.case_budget = ~std::uint64_t{0} / 4;
      b.pool_cap = 1'000'000;
    }
    LawReport r = run_monoid_law_suite(sig, b);
    require_report(o, r, sig.name(), full);
    for (const char* law : {"right-unit", "left-unit", "associativity", "functor-identity",
                            "functor-composition", "naturality-rename-then-subst",
                            "naturality-subst-then-rename", "module-binders"}) {
      o.require(has_law_prefix(r, law), sig.name() + " lacks " + law);
    }
    // Each term of the universe is a left operand at least once.
    std::uint64_t universe = 0;
    for (std::size_t n = 0; n <= b.max_context; ++n) universe += count_terms(sig, n, b.max_height);
    o.require(r.laws().at("right-unit").cases == universe, sig.name() + " right-unit coverage");
    o.require(r.laws().at("associativity").cases >= universe, sig.name() + " associativity coverage");
    cases += r.case_count();
  }
  double s = seconds_since(t0);
  o.require(s < 60.0, "runtime " + fmt(s));
  o.detail = "LC (all combinations), FOL, LL: " + std::to_string(cases) + " cases, " + fmt(s);
  return o;
}

// ---- 2

Outcome engine_equivalence() {
  Outcome o;
  oracle::NamedSubst named;
  std::uint64_t exhaustive = 0;
  const auto& lc = builtin::lambda_calculus();
  TermUniverse u(lc);
  for (std::size_t n = 0; n <= 2; ++n) {
    for (std::size_t m = 0; m <= 2; ++m) {
      const auto& imgs = u.terms(m, 2);
      std::uint64_t subs = 1;
      for (std::size_t i = 0; i < n; ++i) subs *= imgs.size();
      for (std::uint64_t code = 0; code < subs; ++code) {
        std::vector<Term> images;
        for (std::uint64_t c = code, i = 0; i < n; ++i, c /= imgs.size()) {
          images.push_back(imgs[c % imgs.size()]);
        }
        Substitution s(n, m, images);
        for (const auto& t : u.terms(n, 3)) {
          Term a = subst_hss(t, s);
          Term b = subst_oracle(t, s);
          if (!(a == b) || print_term(a) != named.apply(t, images, m)) {
            o.require(false, "LC: " + print_term(t) + " / " + print_substitution(s));
          }
          ++exhaustive;
        }
      }
    }
  }
  std::uint64_t random = 0;
  for (const Signature& sig : {builtin::first_order_logic(), builtin::linear_logic()}) {
    TermUniverse su(sig);
    SplitMix64 rng(2024);
    for (int i = 0; i < 10'000; ++i) {
      std::size_t n = rng.below(3), m = rng.below(3);
      Term t = su.sample(n, 3, rng);
      std::vector<Term> images;
      for (std::size_t j = 0; j < n; ++j) images.push_back(su.sample(m, 2, rng));
      Substitution s(n, m, images);
      Term a = subst_hss(t, s);
      Term b = subst_oracle(t, s);
      if (!(a == b) || print_term(a) != named.apply(t, images, m)) {
        o.require(false, sig.name() + ": " + print_term(t) + " / " + print_substitution(s));
      }
      ++random;
    }
  }
  o.detail = std::to_string(exhaustive) + " exhaustive LC cases, " + std::to_string(random) +
             " seeded FOL/LL cases, both engines and a named-variable reference";
  return o;
}

// ---- 3

using Big = unsigned __int128;

Big reference_count(const Signature& sig, std::size_t n, std::size_t k,
                    std::map<std::pair<std::size_t, std::size_t>, Big>& memo) {
  if (k == 0) return 0;
  auto key = std::make_pair(n, k);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Big total = n;
  for (const auto& c : sig.constructors()) {
    Big p = 1;
    for (std::size_t m : c.arity.binders) p *= reference_count(sig, n + m, k - 1, memo);
    total += p;
  }
  return memo[key] = total;
}

Outcome adamek_lambek() {
  Outcome o;
  const auto& lc = builtin::lambda_calculus();
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> golden = {
      {{0, 2}, 1}, {{1, 2}, 4}, {{2, 2}, 9}, {{0, 3}, 5}, {{1, 3}, 26}};
  for (const auto& [cell, want] : golden) {
    o.require(count_terms(lc, cell.first, cell.second) == want, "LC golden");
    o.require(oracle::brute_terms(lc, cell.first, cell.second).size() == want, "LC brute golden");
  }
  std::vector<Signature> sigs = {lc,
                                 builtin::first_order_logic(),
                                 builtin::linear_logic(),
                                 builtin::empty(),
                                 builtin::unary(),
                                 builtin::pair()};
  std::size_t cells = 0, brute = 0, listed = 0, streamed = 0, factored = 0;
  for (const auto& sig : sigs) {
    std::map<std::pair<std::size_t, std::size_t>, Big> memo;
    TermUniverse u(sig);
    for (std::size_t n = 0; n <= 3; ++n) {
      for (std::size_t k = 0; k <= 4; ++k) {
        Big want = reference_count(sig, n, k, memo);
        std::uint64_t got = count_terms(sig, n, k);
        o.require(Big(got) == want, sig.name() + " count at " + std::to_string(n) + "," +
                                         std::to_string(k));
        ++cells;
        if (want <= 20'000) {
          o.require(oracle::brute_terms(sig, n, k).size() == got, sig.name() + " brute force");
          ++brute;
        }
        if (want <= kDefaultCountCap) {
          const auto& ts = u.terms(n, k);
          std::unordered_set<Term, TermHash> distinct(ts.begin(), ts.end());
          bool ok = distinct.size() == got;
          for (const auto& t : ts) ok = ok && t.height() <= k && is_well_scoped(sig, t);
          o.require(ok, sig.name() + " listing");
          ++listed;
        }
      }
    }
    for (std::size_t n = 0; n <= 2; ++n) {
      for (std::size_t k = 0; k <= 3; ++k) {
        LawReport r = check_lambek(sig, n, k);
        require_report(o, r, "lambek " + sig.name());
        o.require(r.laws().at("bijection").coverage == "exhaustive",
                  "lambek " + sig.name() + " bijection not exact");
        (r.laws().contains("rank-roundtrip") ? factored : streamed) += 1;
      }
    }
  }
  o.detail = std::to_string(cells) + " count cells (" + std::to_string(brute) +
             " brute-forced, " + std::to_string(listed) + " listed); Lambek bijection exact on " +
             std::to_string(streamed) + " streamed and " + std::to_string(factored) +
             " factorized cells";
  return o;
}

// ---- 4

Outcome initiality() {
  Outcome o;
  LawBounds b;
  std::size_t models = 0;
  for (const Signature& sig : builtin::law_fixtures()) {
    for (ModelPtr m : {terminal_model(sig), fixpoint_model(terminal_model(sig))}) {
      require_report(o, check_model_morphism(*m, b), m->name() + " on " + sig.name());
      ++models;
    }
  }
  const Signature& fol = builtin::first_order_logic();
  const Signature& ll = builtin::linear_logic();
  const Signature& lc = builtin::lambda_calculus();
  for (const auto& i : {parse_interpretation(slurp("fol2ll.interp"), fol, ll),
                        parse_interpretation(slurp("lc_id.interp"), lc, lc)}) {
    ModelPtr m = induced_model(i);
    require_report(o, check_model_morphism(*m, b), m->name());
    ++models;
  }
  Faults weak;
  weak.weaken_off_by_one = true;
  LawReport w = check_model_morphism(*support_model(lc), b, SubstEngineOptions{Engine::Hss, weak});
  LawReport wo = check_model_morphism(*support_model(lc), b, SubstEngineOptions{Engine::Oracle, weak});
  LawReport op = check_model_morphism(*faulty_model(initial_model(lc)), b);
  o.require(w.failure_count() >= 1 && wo.failure_count() >= 1, "weakening fault not caught");
  o.require(op.failure_count() >= 1, "model op fault not caught");
  o.detail = std::to_string(models) + " models are morphism targets; weakening fault gives " +
             std::to_string(w.failure_count()) + "+" + std::to_string(wo.failure_count()) +
             " counterexamples, op fault gives " + std::to_string(op.failure_count());
  return o;
}

// ---- 5

Outcome translation() {
  Outcome o;
  const Signature& fol = builtin::first_order_logic();
  Interpretation i = parse_interpretation(slurp("fol2ll.interp"), fol, builtin::linear_logic());
  auto tr = [&](std::size_t n, const char* t) {
    return print_term(translate_term(i, parse_term(fol, n, t)));
  };
  o.require(tr(1, "neg(x0)") == "lollipop(bang(x0), zero())", "neg golden");
  o.require(tr(2, "or(x0, x1)") == "oplus(bang(x0), bang(x1))", "or golden");
  LawBounds b;
  b.max_context = 1;
  b.max_height = 3;
  b.samples = 10'000;
  b.per_term_budget = 1'000'000;
  b.case_budget = 100'000'000;
  LawReport r = check_substitution_safety(i, b);
  require_report(o, r, "safety");
  const auto& square = r.laws().at("square");
  const auto& random = r.laws().at("square-random");
  o.require(square.coverage == "exhaustive", "square not exhaustive");
  o.require(random.cases >= 10'000, "too few random cases");
  o.detail = "goldens match; square " + std::to_string(square.cases) + " exhaustive + " +
             std::to_string(random.cases) + " random cases";
  return o;
}

// ---- 6

Outcome modularity() {
  Outcome o;
  LawBounds b;
  b.max_context = 1;
  b.max_height = 3;
  const Signature& e = builtin::empty();
  const Signature& u = builtin::unary();
  const Signature& lc = builtin::lambda_calculus();
  const Signature& fol = builtin::first_order_logic();
  const Signature& ll = builtin::linear_logic();
  LawReport co = pushout_models(e, make_morphism(e, lc, {}), make_morphism(e, fol, {}), b);
  LawReport am = pushout_models(u, make_morphism(u, fol, {{"u", "neg"}}),
                                make_morphism(u, ll, {{"u", "bang"}}), b);
  std::uint64_t cases = 0;
  for (const auto* r : {&co, &am}) {
    require_report(o, *r, r->subject());
    for (const char* law : {"square-commutes", "diagonal"}) {
      const auto& l = r->laws().at(law);
      o.require(l.coverage == "exhaustive" && l.cases > 0, std::string(law) + " coverage");
      cases += l.cases;
    }
  }
  o.detail = "E coproduct and {u:[0]} amalgamation commute on " + std::to_string(cases) +
             " base-term cases";
  return o;
}

// ---- 7

Outcome adjunction() {
  Outcome o;
  const Signature& lc = builtin::lambda_calculus();
  std::uint64_t kl = 0;
  std::size_t runs = 0;
  for (const char* g : {"k:0", "m:2"}) {
    GeneratorSet gens = parse_generators(g);
    for (ModelPtr m : {terminal_model(lc), initial_model(lc)}) {
      std::string assign = m->name() == "terminal"
                               ? (std::string(g) == "k:0" ? "k=*" : "m=*")
                               : (std::string(g) == "k:0" ? "k=abs({1} x0)" : "m=app(x0, x1)");
      Assignment f = parse_assignment(*m, gens, assign);
      LawReport r = adjunction_roundtrip(lc, gens, m, f, LawBounds{});
      require_report(o, r, std::string(g) + " " + m->name());
      o.require(r.laws().at("L-after-K").coverage == "exhaustive", "L-after-K sampled");
      o.require(r.laws().at("K-after-L").cases >= 1000, "K-after-L below 1000 cases");
      kl += r.laws().at("K-after-L").cases;
      ++runs;
    }
  }
  o.detail = std::to_string(runs) + " round trips; K-after-L on " + std::to_string(kl) +
             " sampled terms";
  return o;
}

// ---- 8

Outcome typed() {
  Outcome o;
  TypedSignature stlc = parse_typed_signature(slurp("stlc.tsig"), "STLC");
  LawReport r = run_typed_law_suite(stlc, LawBounds{}, 1);
  require_report(o, r, "STLC", true);
  for (const char* law : {"type-preservation", "rename-type-preservation", "right-unit",
                          "left-unit", "associativity", "naturality-rename-then-subst",
                          "naturality-subst-then-rename"}) {
    o.require(r.laws().at(law).cases > 0, std::string("no cases for ") + law);
  }
  TypedSignature uni = parse_typed_signature(slurp("unityped_lc.tsig"), "ULC");
  const Signature& lc = builtin::lambda_calculus();
  Type ty = parse_type(uni, "o");
  std::uint64_t terms = 0, substs = 0;
  oracle::NamedSubst named;
  for (std::size_t n = 0; n <= 2; ++n) {
    TypedContext g(n, ty);
    for (std::size_t k = 0; k <= 3; ++k) {
      auto typed = typed_enumerate(uni, g, k, 1);
      auto plain = enumerate_terms(lc, n, k);
      bool same = typed.size() == plain.size();
      for (std::size_t i = 0; same && i < typed.size(); ++i) same = erase(typed[i]) == plain[i];
      o.require(same, "degenerate enumeration differs at " + std::to_string(n) + "," +
                          std::to_string(k));
      terms += typed.size();
    }
    for (std::size_t m = 0; m <= 2; ++m) {
      TypedContext d(m, ty);
      auto ts = typed_enumerate(uni, g, 3, 1);
      auto imgs = typed_enumerate(uni, d, 2, 1);
      if (n > 0 && imgs.empty()) continue;
      std::uint64_t subs = 1;
      for (std::size_t i = 0; i < n; ++i) subs *= imgs.size();
      for (std::uint64_t code = 0; code < subs; ++code) {
        TypedSubstitution c{g, d, {}};
        std::vector<Term> plain_images;
        for (std::uint64_t x = code, i = 0; i < n; ++i, x /= imgs.size()) {
          c.images.push_back(imgs[x % imgs.size()]);
          plain_images.push_back(erase(c.images.back()));
        }
        for (const auto& t : ts) {
          std::string got = print_term(erase(typed_subst(t, c)));
          if (got != named.apply(erase(t), plain_images, m)) {
            o.require(false, "degenerate substitution differs on " + print_typed_term(t));
          }
          ++substs;
        }
      }
    }
  }
  o.detail = "STLC typed laws " + std::to_string(r.case_count()) +
             " exhaustive cases; degenerate signature matches LC on " + std::to_string(terms) +
             " terms and " + std::to_string(substs) + " substitutions";
  return o;
}

// ---- 9

Outcome determinism() {
  Outcome o;
  std::vector<std::vector<std::string>> suite = {
      {"laws", fixture("lc.sig")},
      {"--samples", "2000", "laws", fixture("fol.sig"), "--max-height", "2"},
      {"lambek", fixture("ll.sig"), "--context", "2", "--height", "3", "--samples", "500"},
      {"safety", fixture("fol2ll.interp"), "--max-height", "2", "--samples", "2000"},
      {"adjoint", fixture("lc.sig"), "--generators", "m:2", "--model", "initial", "--assign",
       "m=app(x0, x1)"},
      {"pushout", fixture("u.sig"), fixture("fol.sig"), fixture("ll.sig"), "--left-map", "u=neg",
       "--right-map", "u=bang", "--max-context", "1"},
      {"model", "check", fixture("lc.sig"), "--model", "fixpoint:terminal"},
      {"typed", "laws", fixture("stlc.tsig")},
      {"enum", fixture("fol.sig"), "--context", "1", "--height", "2"},
      {"translate", fixture("fol2ll.interp"), "--context", "1", "--term", "exists({1} neg(x1))"},
  };
  std::size_t bytes = 0;
  for (auto args : suite) {
    args.insert(args.begin(), {"--format", "json", "--seed", "42"});
    std::ostringstream out1, err1, out2, err2;
    int s1 = cli::run(args, out1, err1);
    int s2 = cli::run(args, out2, err2);
    std::string cmd = args[4];
    o.require(s1 == 0 && s2 == 0, cmd + " exited " + std::to_string(s1) + ": " + err1.str());
    o.require(out1.str() == out2.str(), cmd + " output differs between runs");
    o.require(out1.str().find("\"schema\": \"initsem/1\"") != std::string::npos,
              cmd + " lacks the schema tag");
    bytes += out1.str().size();
  }
  o.detail = std::to_string(suite.size()) + " commands run twice, " + std::to_string(bytes) +
             " identical JSON bytes";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1", monoid_laws}, {"AC2", engine_equivalence}, {"AC3", adamek_lambek},
      {"AC4", initiality},  {"AC5", translation},        {"AC6", modularity},
      {"AC7", adjunction},  {"AC8", typed},              {"AC9", determinism},
  };
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    std::cout << id << (o.pass ? " PASS " : " FAIL ") << o.detail << " [" << fmt(seconds_since(t0))
              << "]\n";
    for (std::size_t i = 0; i < o.problems.size() && i < 5; ++i) {
      std::cout << "    " << o.problems[i] << "\n";
    }
    std::cout.flush();
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
