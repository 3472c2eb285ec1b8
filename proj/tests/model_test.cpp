#include <gtest/gtest.h>

#include <set>

#include "initsem/builtin.hpp"
#include "initsem/enumerate.hpp"
#include "initsem/error.hpp"
#include "initsem/free.hpp"
#include "initsem/lambek.hpp"
#include "initsem/model.hpp"
#include "initsem/modularity.hpp"
#include "oracle.hpp"

using namespace initsem;

namespace {

const Signature& LC = builtin::lambda_calculus();

LawBounds small() {
  LawBounds b;
  b.max_context = 2;
  b.max_height = 2;
  b.subst_height = 2;
  return b;
}

TEST(Fold, TerminalSendsEverythingToTheSingleton) {
  auto m = terminal_model(LC);
  for (const auto& t : enumerate_terms(LC, 1, 3)) EXPECT_EQ(to_string(fold(*m, t)), "*");
}

TEST(Fold, InitialIsIdentity) {
  auto m = initial_model(LC);
  for (std::size_t n = 0; n <= 2; ++n) {
    for (const auto& t : enumerate_terms(LC, n, 3)) EXPECT_EQ(fold(*m, t).term(), t);
  }
}

TEST(Fold, SupportComputesFreeVariables) {
  auto m = support_model(LC);
  oracle::NamedSubst named;
  for (std::size_t n = 0; n <= 2; ++n) {
    for (const auto& t : enumerate_terms(LC, n, 3)) {
      Value v = fold(*m, t);
      std::set<std::size_t> got(v.levels().begin(), v.levels().end());
      EXPECT_EQ(got, named.free_levels(t)) << print_term(t);
    }
  }
}

TEST(Fold, IterativeAgreesWithRecursive) {
  auto m = fixpoint_model(support_model(builtin::linear_logic()));
  for (const auto& t : enumerate_terms(builtin::linear_logic(), 1, 2)) {
    EXPECT_EQ(fold(*m, t), fold_iterative(*m, t));
  }
}

TEST(Fold, PullbackRenamesConstructors) {
  auto h = make_morphism(builtin::unary(), builtin::first_order_logic(), {{"u", "neg"}});
  auto m = pullback_model(h, initial_model(builtin::first_order_logic()));
  Term t = parse_term(builtin::unary(), 1, "u(u(x0))");
  EXPECT_EQ(print_term(fold(*m, t).term()), "neg(neg(x0))");
}

TEST(ModelLaws, BuiltinModelsPass) {
  for (const Signature& sig : {LC, builtin::first_order_logic(), builtin::empty()}) {
    for (const auto& m : {terminal_model(sig), initial_model(sig), support_model(sig),
                          fixpoint_model(terminal_model(sig)), fixpoint_model(initial_model(sig))}) {
      LawReport r = run_model_law_suite(*m, small());
      EXPECT_TRUE(r.passed()) << m->name() << "\n" << render_text(r);
    }
  }
}

TEST(ModelLaws, FaultyOpIsCaught) {
  auto m = faulty_model(initial_model(LC));
  LawReport r = run_model_law_suite(*m, small());
  EXPECT_FALSE(r.passed());
}

TEST(ModelMorphism, PassesForLawfulModels) {
  for (const auto& m : {terminal_model(LC), initial_model(LC), support_model(LC),
                        fixpoint_model(terminal_model(LC)), fixpoint_model(support_model(LC))}) {
    LawReport r = check_model_morphism(*m, LawBounds{});
    EXPECT_TRUE(r.passed()) << m->name() << "\n" << render_text(r);
    EXPECT_TRUE(r.laws().contains("fold-subst"));
  }
}

TEST(ModelMorphism, OpFaultGivesSubstitutionCounterexample) {
  Faults f;
  f.model_op_ignore_arg = true;
  auto m = apply_model_faults(initial_model(LC), f);
  LawReport r = check_model_morphism(*m, LawBounds{});
  EXPECT_GT(r.laws().at("fold-subst").failure_count, 0u);
}

TEST(ModelMorphism, WeakeningFaultIsCaughtByTheSupportModel) {
  SubstEngineOptions syntax;
  syntax.faults.weaken_off_by_one = true;
  LawReport r = check_model_morphism(*support_model(LC), LawBounds{}, syntax);
  const LawResult& law = r.laws().at("fold-subst");
  EXPECT_GT(law.failure_count, 0u);
  ASSERT_FALSE(law.failures.empty());
}

TEST(Fixpoint, TerminalCarrierHasOneNodePerConstructor) {
  auto m = fixpoint_model(terminal_model(LC));
  for (std::size_t n = 0; n <= 2; ++n) {
    std::set<std::string> distinct;
    for (const auto& t : enumerate_terms(LC, n, 3)) distinct.insert(to_string(fold(*m, t)));
    EXPECT_EQ(distinct.size(), n + 2) << n;
  }
}

TEST(Fixpoint, EmptySignatureCarrierIsTheContext) {
  auto m = fixpoint_model(terminal_model(builtin::empty()));
  EXPECT_EQ(to_string(m->var(1, 3)), "inl(x1)");
  EXPECT_EQ(enumerate_terms(builtin::empty(), 3, 4).size(), 3u);
}

TEST(Fixpoint, CollapseInvertsTheFoldOnTheInitialModel) {
  auto init = initial_model(LC);
  auto fix = fixpoint_model(init);
  for (const auto& t : enumerate_terms(LC, 2, 3)) {
    EXPECT_EQ(fixpoint_collapse(*init, fold(*fix, t)).term(), t);
  }
}

TEST(Certification, RefusesUnlawfulModels) {
  auto bad = faulty_model(initial_model(LC));
  try {
    CertifiedFold f(bad, small());
    FAIL() << "expected Uncertified";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Uncertified);
  }
  CertifiedFold waived(bad, small(), true);
  EXPECT_FALSE(waived.certified());
  CertifiedFold good(support_model(LC), small());
  EXPECT_TRUE(good.certified());
  EXPECT_EQ(to_string(good(parse_term(LC, 2, "app(x1, abs({1} x2))"))), "{x1}");
}

TEST(Lambek, SmallCellsMatchTheDerivedCounts) {
  LawReport a = check_lambek(LC, 0, 2);
  EXPECT_TRUE(a.passed()) << render_text(a);
  EXPECT_EQ(a.stats().at("lhs_cardinality"), 5u);
  EXPECT_EQ(a.stats().at("rhs_cardinality"), 5u);
  LawReport b = check_lambek(LC, 1, 1);
  EXPECT_TRUE(b.passed());
  EXPECT_EQ(b.stats().at("rhs_cardinality"), 4u);
  for (std::size_t n = 0; n <= 3; ++n) {
    LawReport e = check_lambek(builtin::empty(), n, 2);
    EXPECT_TRUE(e.passed());
    EXPECT_EQ(e.stats().at("rhs_cardinality"), n);
  }
}

TEST(Lambek, CardinalitiesAgreeWithBruteForce) {
  for (const Signature& sig : {LC, builtin::first_order_logic(), builtin::linear_logic()}) {
    for (std::size_t n = 0; n <= 1; ++n) {
      for (std::size_t k = 0; k <= 1; ++k) {
        LawReport r = check_lambek(sig, n, k);
        EXPECT_TRUE(r.passed()) << render_text(r);
        EXPECT_EQ(r.stats().at("rhs_cardinality"), oracle::brute_terms(sig, n, k + 1).size());
      }
    }
  }
}

TEST(Lambek, SampledAboveTheCap) {
  LambekOptions o;
  o.cap = 50;
  o.samples = 500;
  LawReport r = check_lambek(LC, 2, 2, o);
  EXPECT_TRUE(r.passed()) << render_text(r);
  // T_2(2) = 9 and T_2(3) = 16 are listed, so the factor check is complete.
  EXPECT_EQ(r.laws().at("bijection").coverage, "exhaustive");
  EXPECT_EQ(r.laws().at("bijection").cases, 2u + 9 + 9 + 16);
  EXPECT_EQ(r.laws().at("rank-roundtrip").coverage, "sampled");
  EXPECT_EQ(r.laws().at("rank-roundtrip").cases, 500u);

  o.cap = 5;
  LawReport tiny = check_lambek(LC, 2, 2, o);
  EXPECT_TRUE(tiny.passed()) << render_text(tiny);
  EXPECT_EQ(tiny.laws().at("bijection").coverage, "sampled");
}

TEST(Lambek, LargeCellIsExactByFactors) {
  LawReport r = check_lambek(builtin::first_order_logic(), 2, 3);
  EXPECT_TRUE(r.passed()) << render_text(r);
  EXPECT_EQ(r.laws().at("bijection").coverage, "exhaustive");
  EXPECT_GT(r.stats().at("rhs_cardinality"), kDefaultCountCap);
}

TEST(Lambek, RollAndUnroll) {
  Term t = parse_term(LC, 1, "abs({1} app(x0, x1))");
  Layer x = unroll(t);
  EXPECT_FALSE(x.variable);
  EXPECT_EQ(x.constructor, "abs");
  EXPECT_EQ(roll(LC, x, 1), t);
  EXPECT_EQ(*unroll(Term::var(0, 1)).variable, 0u);
}

TEST(Generators, ParseAndPrint) {
  GeneratorSet g = parse_generators("k:0, m:2");
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(print_generators(g), "k:0,m:2");
  EXPECT_TRUE(parse_generators("").empty());
  EXPECT_THROW(parse_generators("k:0,k:1"), Error);
  EXPECT_THROW(parse_generators("k:"), SyntaxError);
  EXPECT_THROW(parse_generators("k:-1"), SyntaxError);
}

TEST(FreeModel, ConstantGeneratorAtHeightOne) {
  FreeModel f = free_model(LC, parse_generators("k:0"));
  auto ts = enumerate_terms(f.extended, 0, 1);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(print_term(ts[0]), "k()");
  EXPECT_EQ(print_term(f.unit("k")), "k()");
}

TEST(FreeModel, EmptyGeneratorsGiveTheInitialModel) {
  FreeModel f = free_model(LC, GeneratorSet{});
  EXPECT_EQ(f.extended.constructors().size(), LC.constructors().size());
  for (const auto& t : enumerate_terms(LC, 1, 3)) EXPECT_EQ(fold(*f.as_sig_model, t).term(), t);
}

TEST(FreeModel, BinaryGeneratorOverEmptyGivesTrees) {
  FreeModel f = free_model(builtin::empty(), parse_generators("m:2"));
  // height-bounded binary trees over one leaf: t(k) = 1 + t(k-1)^2
  std::vector<std::uint64_t> expect{0, 1, 2, 5, 26, 677};
  for (std::size_t k = 0; k < expect.size(); ++k) {
    EXPECT_EQ(count_terms(f.extended, 1, k), expect[k]);
  }
  EXPECT_EQ(print_term(f.unit("m")), "m(x0, x1)");
}

TEST(FreeModel, ClashingGeneratorIsQualified) {
  FreeModel f = free_model(LC, parse_generators("app:1"));
  EXPECT_EQ(f.shape_constructor.at("app"), "gens.app");
  EXPECT_EQ(print_term(f.unit("app")), "gens.app(x0)");
}

TEST(Adjunction, TerminalModelRoundTrips) {
  GeneratorSet g = parse_generators("k:0,m:2");
  auto m = terminal_model(LC);
  Assignment f = parse_assignment(*m, g, "k=*; m=*");
  LawReport r = adjunction_roundtrip(LC, g, m, f, small());
  EXPECT_TRUE(r.passed()) << render_text(r);
  EXPECT_GE(r.laws().at("K-after-L").cases, 1000u);
}

TEST(Adjunction, InitialModelConstant) {
  GeneratorSet g = parse_generators("k:0");
  auto m = initial_model(LC);
  Assignment f = parse_assignment(*m, g, "k=abs({1} x0)");
  FreeModel free = free_model(LC, g);
  auto k = transpose_model(free, m, f);
  EXPECT_EQ(print_term(fold(*k, free.unit("k")).term()), "abs({1} x0)");
  Term t = parse_term(free.extended, 1, "app(k(), x0)");
  EXPECT_EQ(print_term(fold(*k, t).term()), "app(abs({1} x1), x0)");
  LawReport r = adjunction_roundtrip(LC, g, m, f, small());
  EXPECT_TRUE(r.passed()) << render_text(r);
}

TEST(Adjunction, CollapsedArgumentsAreCaught) {
  GeneratorSet g = parse_generators("m:2");
  auto m = initial_model(LC);
  Assignment f = parse_assignment(*m, g, "m=app(x0, x1)");
  EXPECT_TRUE(adjunction_roundtrip(LC, g, m, f, small()).passed());
  Faults faults;
  faults.adjunction_collapse_args = true;
  LawReport r = adjunction_roundtrip(LC, g, m, f, small(), faults);
  EXPECT_GT(r.laws().at("L-after-K").failure_count, 0u);
  EXPECT_EQ(r.laws().at("L-after-K").failures[0].lhs, "app(x0, x0)");
}

TEST(Adjunction, AssignmentErrors) {
  GeneratorSet g = parse_generators("k:0,m:2");
  auto m = initial_model(LC);
  EXPECT_THROW(parse_assignment(*m, g, "k=abs({1} x0)"), Error);
  EXPECT_THROW(parse_assignment(*m, g, "k=x0;m=x0"), Error);
  EXPECT_THROW(parse_assignment(*m, g, "q=x0;k=abs({1} x0);m=x0"), Error);
  EXPECT_THROW(parse_assignment(*fixpoint_model(m), g, "k=x0;m=x0"), Error);
}

TEST(PushoutModels, CoproductOverEmpty) {
  const Signature& E = builtin::empty();
  auto l = make_morphism(E, LC, {});
  auto r = make_morphism(E, builtin::first_order_logic(), {});
  LawBounds b;
  b.max_context = 1;
  LawReport rep = pushout_models(E, l, r, b);
  EXPECT_TRUE(rep.passed()) << render_text(rep);
  EXPECT_EQ(rep.laws().at("square-commutes").cases, 1u);
}

TEST(PushoutModels, AmalgamationAlongU) {
  const Signature& U = builtin::unary();
  auto l = make_morphism(U, builtin::first_order_logic(), {{"u", "neg"}});
  auto r = make_morphism(U, builtin::linear_logic(), {{"u", "bang"}});
  LawBounds b;
  b.max_context = 1;
  LawReport rep = pushout_models(U, l, r, b);
  EXPECT_TRUE(rep.passed()) << render_text(rep);
  EXPECT_EQ(rep.laws().at("square-commutes").cases, 3u);  // x0, u(x0), u(u(x0))

  SignaturePushout p = pushout_signatures(U, l, r);
  auto via_left = pullback_model(compose(l, p.left), initial_model(p.apex));
  auto via_right = pullback_model(compose(r, p.right), initial_model(p.apex));
  Term t = parse_term(U, 1, "u(x0)");
  EXPECT_EQ(print_term(fold(*via_left, t).term()), "neg(x0)");
  EXPECT_EQ(print_term(fold(*via_right, t).term()), "neg(x0)");
}

}  // namespace
