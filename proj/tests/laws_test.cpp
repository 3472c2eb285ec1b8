#include <gtest/gtest.h>

#include <chrono>

#include "initsem/builtin.hpp"
#include "initsem/laws.hpp"

using namespace initsem;

namespace {

TEST(ForEachTuple, ExhaustiveWithinBudget) {
  SplitMix64 rng(0);
  std::vector<std::size_t> sizes{2, 3};
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  bool all = for_each_tuple(sizes, 6, rng, [&](std::span<const std::size_t> ix) {
    seen.emplace_back(ix[0], ix[1]);
  });
  EXPECT_TRUE(all);
  ASSERT_EQ(seen.size(), 6u);
  EXPECT_EQ(seen.front(), std::make_pair(std::size_t{0}, std::size_t{0}));
  EXPECT_EQ(seen.back(), std::make_pair(std::size_t{1}, std::size_t{2}));
}

TEST(ForEachTuple, SamplesOverBudget) {
  SplitMix64 rng(0);
  std::vector<std::size_t> sizes{10, 10};
  std::size_t calls = 0;
  EXPECT_FALSE(for_each_tuple(sizes, 7, rng, [&](std::span<const std::size_t> ix) {
    EXPECT_LT(ix[0], 10u);
    EXPECT_LT(ix[1], 10u);
    ++calls;
  }));
  EXPECT_EQ(calls, 7u);
}

TEST(AllRenamings, CountsAreTargetToTheSource) {
  EXPECT_EQ(all_renamings(0, 0).size(), 1u);
  EXPECT_EQ(all_renamings(2, 0).size(), 0u);
  EXPECT_EQ(all_renamings(2, 3).size(), 9u);
  EXPECT_EQ(all_renamings(3, 2).size(), 8u);
}

TEST(SubstitutionPool, CompleteWhenSmall) {
  TermUniverse u(builtin::lambda_calculus());
  SubstitutionPool pool(u, 2, 256, 0);
  // |T_2(1)| = 4, so 16 substitutions 2 -> 1.
  EXPECT_EQ(pool.get(2, 1).size(), 16u);
  EXPECT_TRUE(pool.complete(2, 1));
  // |T_2(2)|^2 = 81.
  EXPECT_EQ(pool.get(2, 2).size(), 81u);
  EXPECT_EQ(pool.get(0, 2).size(), 1u);
  EXPECT_EQ(pool.get(1, 0).size(), 1u);
}

TEST(SubstitutionPool, SampledWhenLarge) {
  TermUniverse u(builtin::lambda_calculus());
  SubstitutionPool pool(u, 3, 50, 0);
  EXPECT_EQ(pool.get(2, 2).size(), 50u);
  EXPECT_FALSE(pool.complete(2, 2));
}

TEST(MonoidLaws, HoldOnEveryBuiltinAtDefaultBounds) {
  for (const Signature& sig : builtin::law_fixtures()) {
    auto start = std::chrono::steady_clock::now();
    LawReport r = run_monoid_law_suite(sig, LawBounds{});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(r.passed()) << render_text(r);
    EXPECT_GT(r.case_count(), 1000u);
    EXPECT_LT(secs, 60.0) << sig.name();
    for (const char* name : {"associativity", "left-unit", "right-unit", "functor-identity",
                             "functor-composition", "engine-equivalence",
                             "strength-associativity"}) {
      EXPECT_TRUE(r.laws().contains(name)) << name;
    }
  }
}

TEST(MonoidLaws, BothEnginesPass) {
  for (Engine e : {Engine::Oracle, Engine::Hss}) {
    LawReport r = run_monoid_law_suite(builtin::lambda_calculus(), LawBounds{}, {e, {}});
    EXPECT_TRUE(r.passed()) << render_text(r);
  }
}

TEST(MonoidLaws, VacuousOnTheEmptySignature) {
  LawReport r = run_monoid_law_suite(builtin::empty(), LawBounds{});
  EXPECT_TRUE(r.passed());
}

TEST(MonoidLaws, WeakeningFaultBreaksAssociativity) {
  SubstEngineOptions opts;
  opts.faults.weaken_off_by_one = true;
  LawReport r = run_monoid_law_suite(builtin::lambda_calculus(), LawBounds{}, opts);
  EXPECT_FALSE(r.passed());
  const LawResult& assoc = r.laws().at("associativity");
  EXPECT_GT(assoc.failure_count, 0u);
  ASSERT_FALSE(assoc.failures.empty());
  EXPECT_NE(assoc.failures[0].lhs, assoc.failures[0].rhs);
}

TEST(MonoidLaws, SampledModeIsDeterministic) {
  LawBounds b;
  b.exhaustive = false;
  b.samples = 30;
  b.seed = 7;
  auto a = to_json(run_monoid_law_suite(builtin::linear_logic(), b)).dump();
  auto c = to_json(run_monoid_law_suite(builtin::linear_logic(), b)).dump();
  EXPECT_EQ(a, c);
  EXPECT_NE(a.find("\"sampled\""), std::string::npos);
}

TEST(LawReport, JsonShape) {
  LawReport r = run_monoid_law_suite(builtin::unary(), LawBounds{});
  auto j = to_json(r);
  EXPECT_EQ(j["schema"], "initsem/1");
  EXPECT_EQ(j["report"], "monoid-laws");
  EXPECT_EQ(j["signature"], "U");
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_TRUE(j["laws"].is_array());
  EXPECT_NE(render_text(r).find("result: pass"), std::string::npos);
}

}  // namespace
