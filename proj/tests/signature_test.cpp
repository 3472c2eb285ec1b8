#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "initsem/builtin.hpp"
#include "initsem/error.hpp"
#include "initsem/signature.hpp"

using namespace initsem;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(INITSEM_FIXTURE_DIR) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> names(const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& c : sig.constructors()) out.push_back(c.name);
  return out;
}

}  // namespace

TEST(Signature, ParsesLambdaCalculus) {
  Signature lc = parse_signature("signature LC\ncon app : [0,0]\ncon abs : [1]");
  EXPECT_EQ(lc.name(), "LC");
  ASSERT_EQ(lc.size(), 2u);
  EXPECT_EQ(lc.at("app").arity, (Arity{{0, 0}}));
  EXPECT_EQ(lc.at("abs").arity, (Arity{{1}}));
}

TEST(Signature, EmptySignature) {
  Signature e = parse_signature("signature E");
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(e.name(), "E");
}

TEST(Signature, FirstOrderLogicShape) {
  Signature fol = parse_signature(
      "signature FOL\ncon top:[]\ncon bot:[]\ncon neg:[0]\ncon and:[0,0]\ncon or:[0,0]\n"
      "con imp:[0,0]\ncon exists:[1]\ncon forall:[1]");
  ASSERT_EQ(fol.size(), 8u);
  // 2 constants + 1 unary + 3 binary + 2 single binders
  int constants = 0, unary = 0, binary = 0, binders = 0;
  for (const auto& c : fol.constructors()) {
    if (c.arity.binders.empty()) ++constants;
    else if (c.arity.binders == std::vector<std::size_t>{0}) ++unary;
    else if (c.arity.binders == std::vector<std::size_t>{0, 0}) ++binary;
    else if (c.arity.binders == std::vector<std::size_t>{1}) ++binders;
  }
  EXPECT_EQ(constants, 2);
  EXPECT_EQ(unary, 1);
  EXPECT_EQ(binary, 3);
  EXPECT_EQ(binders, 2);
  EXPECT_EQ(fol, builtin::first_order_logic());
}

TEST(Signature, LinearLogicHasElevenConstructors) {
  const Signature& ll = builtin::linear_logic();
  EXPECT_EQ(ll.size(), 11u);
  int binary = 0;
  for (const auto& c : ll.constructors()) binary += c.arity.binders == std::vector<std::size_t>{0, 0};
  EXPECT_EQ(binary, 5);
}

TEST(Signature, ParseErrors) {
  EXPECT_THROW(parse_signature("signature X\ncon a : [0]\ncon a : [1]"), SyntaxError);
  EXPECT_THROW(parse_signature("signature X\ncon a : [-1]"), SyntaxError);
  EXPECT_THROW(parse_signature("sig X"), SyntaxError);
  EXPECT_THROW(parse_signature("signature X\ncon a [0]"), SyntaxError);
  try {
    parse_signature("signature X\n\ncon a : [0,]");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Signature, CommentsAndWhitespace) {
  Signature s = parse_signature("-- leading\nsignature  S -- trailing\n  con   k:[ ]\n");
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.at("k").arity.binders.empty());
}

TEST(Signature, PrintParseRoundTrip) {
  for (const Signature* s : {&builtin::lambda_calculus(), &builtin::first_order_logic(),
                             &builtin::linear_logic(), &builtin::empty()}) {
    EXPECT_EQ(parse_signature(print_signature(*s)), *s);
  }
  EXPECT_EQ(print_signature(builtin::lambda_calculus()),
            "signature LC\ncon app : [0,0]\ncon abs : [1]\n");
}

TEST(Signature, FixtureFilesMatchBuiltins) {
  EXPECT_EQ(parse_signature(slurp("lc.sig")), builtin::lambda_calculus());
  EXPECT_EQ(parse_signature(slurp("fol.sig")), builtin::first_order_logic());
  EXPECT_EQ(parse_signature(slurp("ll.sig")), builtin::linear_logic());
  EXPECT_EQ(parse_signature(slurp("e.sig")), builtin::empty());
  EXPECT_EQ(parse_signature(slurp("u.sig")), builtin::unary());
  EXPECT_EQ(parse_signature(slurp("pair.sig")), builtin::pair());
}

TEST(Signature, SumDisjoint) {
  auto s = sum_signatures(builtin::lambda_calculus(), builtin::pair());
  EXPECT_EQ(names(s.sum), (std::vector<std::string>{"app", "abs", "pair"}));
  EXPECT_NO_THROW(s.left.validate());
  EXPECT_NO_THROW(s.right.validate());
}

TEST(Signature, SumWithEmptyIsUnit) {
  auto s = sum_signatures(builtin::empty(), builtin::lambda_calculus());
  EXPECT_EQ(names(s.sum), (std::vector<std::string>{"app", "abs"}));
  EXPECT_TRUE(s.left.mapping.empty());
  EXPECT_EQ(s.right.apply("abs"), "abs");
}

TEST(Signature, SumQualifiesCollisions) {
  auto s = sum_signatures(builtin::lambda_calculus(), builtin::lambda_calculus());
  EXPECT_EQ(names(s.sum), (std::vector<std::string>{"app", "abs", "LC.app", "LC.abs"}));
  EXPECT_EQ(s.right.apply("app"), "LC.app");
  // injections are jointly surjective
  std::set<std::string> hit;
  for (const auto& [a, b] : s.left.mapping) hit.insert(b);
  for (const auto& [a, b] : s.right.mapping) hit.insert(b);
  EXPECT_EQ(hit.size(), s.sum.size());
}

TEST(Signature, MorphismValidation) {
  EXPECT_THROW(make_morphism(builtin::unary(), builtin::lambda_calculus(), {{"u", "app"}}), Error);
  try {
    make_morphism(builtin::unary(), builtin::lambda_calculus(), {{"u", "app"}});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Arity);
  }
  EXPECT_THROW(make_morphism(builtin::unary(), builtin::lambda_calculus(), {}), Error);
  EXPECT_THROW(make_morphism(builtin::pair(), builtin::lambda_calculus(), {{"pair", "nope"}}),
               Error);
  Signature two = parse_signature("signature T\ncon a:[0]\ncon b:[0]");
  try {
    make_morphism(two, builtin::first_order_logic(), {{"a", "neg"}, {"b", "neg"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Morphism);
  }
}

TEST(Signature, PushoutOverEmptyIsCoproduct) {
  auto left = make_morphism(builtin::empty(), builtin::lambda_calculus(), {});
  auto right = make_morphism(builtin::empty(), builtin::pair(), {});
  auto p = pushout_signatures(builtin::empty(), left, right);
  EXPECT_EQ(names(p.apex), (std::vector<std::string>{"app", "abs", "pair"}));
}

TEST(Signature, PushoutAmalgamatesSharedConstructor) {
  auto left = make_morphism(builtin::unary(), builtin::first_order_logic(), {{"u", "neg"}});
  auto right = make_morphism(builtin::unary(), builtin::linear_logic(), {{"u", "bang"}});
  auto p = pushout_signatures(builtin::unary(), left, right);
  // 8 + 11 - 1 identified
  EXPECT_EQ(p.apex.size(), 18u);
  EXPECT_EQ(p.left.apply("neg"), "neg");
  EXPECT_EQ(p.right.apply("bang"), "neg");
  EXPECT_FALSE(p.apex.contains("bang"));
  // clashing but unrelated names are qualified
  EXPECT_EQ(p.right.apply("top"), "LL.top");
  EXPECT_EQ(p.right.apply("exists"), "LL.exists");
  // the square commutes on every base constructor
  for (const auto& c : builtin::unary().constructors()) {
    EXPECT_EQ(p.left.apply(left.apply(c.name)), p.right.apply(right.apply(c.name)));
  }
  EXPECT_NO_THROW(p.left.validate());
  EXPECT_NO_THROW(p.right.validate());
}

TEST(Signature, PushoutRejectsArityMismatch) {
  SignatureMorphism bad{builtin::unary(), builtin::lambda_calculus(), {{"u", "app"}}};
  auto right = make_morphism(builtin::unary(), builtin::linear_logic(), {{"u", "bang"}});
  try {
    pushout_signatures(builtin::unary(), bad, right);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Arity);
  }
}

TEST(Signature, ConstructorMapLiteral) {
  auto m = parse_constructor_map("u=neg; v = bang");
  EXPECT_EQ(m.at("u"), "neg");
  EXPECT_EQ(m.at("v"), "bang");
  EXPECT_TRUE(parse_constructor_map("").empty());
  EXPECT_THROW(parse_constructor_map("u=neg;u=bang"), SyntaxError);
}
