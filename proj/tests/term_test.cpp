#include <gtest/gtest.h>

#include "initsem/builtin.hpp"
#include "initsem/error.hpp"
#include "initsem/term.hpp"

using namespace initsem;

namespace {
const Signature& LC = builtin::lambda_calculus();
}

TEST(Term, MakeVar) {
  EXPECT_EQ(print_term(make_var(0, 1)), "x0");
  Term x2 = make_var(2, 3);
  EXPECT_EQ(x2.context(), 3u);
  EXPECT_EQ(print_term(x2), "x2");
  try {
    make_var(1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Scope);
  }
}

TEST(Term, MakeCon) {
  Term app = make_con(LC, "app", {make_var(0, 1), make_var(0, 1)}, 1);
  EXPECT_EQ(print_term(app), "app(x0, x0)");
  Term id = make_con(LC, "abs", {make_var(0, 1)}, 0);
  EXPECT_EQ(print_term(id), "abs({1} x0)");
  EXPECT_EQ(id.binders(0), 1u);
}

TEST(Term, MakeConErrors) {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Usage;
  };
  EXPECT_EQ(kind_of([] { make_con(LC, "abs", {make_var(0, 1)}, 1); }), ErrorKind::Scope);
  EXPECT_EQ(kind_of([] { make_con(LC, "lam", {make_var(0, 1)}, 0); }),
            ErrorKind::UnknownConstructor);
  EXPECT_EQ(kind_of([] { make_con(LC, "app", {make_var(0, 1)}, 1); }), ErrorKind::Arity);
}

TEST(Term, Height) {
  EXPECT_EQ(height(make_var(0, 1)), 1u);
  Term id = parse_term(LC, 0, "abs({1} x0)");
  EXPECT_EQ(height(id), 2u);
  EXPECT_EQ(height(parse_term(LC, 0, "app(abs({1} x0), abs({1} x0))")), 3u);
  EXPECT_EQ(height(parse_term(builtin::first_order_logic(), 4, "top()")), 1u);
}

TEST(Term, ParseAndPrint) {
  Term id = parse_term(LC, 0, "abs({1} x0)");
  EXPECT_EQ(id, make_con(LC, "abs", {make_var(0, 1)}, 0));
  Term t = parse_term(LC, 1, "app(x0, abs({1} app(x1, x0)))");
  EXPECT_EQ(print_term(t), "app(x0, abs({1} app(x1, x0)))");
  EXPECT_EQ(t.args()[1].args()[0].context(), 2u);
  EXPECT_EQ(print_term(parse_term(builtin::first_order_logic(), 3, "  top (  ) ")), "top()");
  EXPECT_EQ(print_term(parse_term(LC, 3, "x2")), "x2");
}

TEST(Term, ParseErrors) {
  EXPECT_THROW(parse_term(LC, 2, "x3"), Error);
  EXPECT_THROW(parse_term(LC, 0, "abs(x0)"), Error);       // missing binder marker
  EXPECT_THROW(parse_term(LC, 1, "app(x0)"), Error);       // arity
  EXPECT_THROW(parse_term(LC, 1, "app(x0, x0"), SyntaxError);
  EXPECT_THROW(parse_term(LC, 1, "app(x0, x0) x0"), SyntaxError);
  EXPECT_THROW(parse_term(LC, 1, "y"), SyntaxError);
}

TEST(Term, EqualityAndOrderAreStructural) {
  Term a = parse_term(LC, 1, "app(x0, abs({1} x1))");
  Term b = parse_term(LC, 1, "app(x0, abs({1} x1))");
  Term c = parse_term(LC, 1, "app(x0, abs({1} x0))");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a, c);
  EXPECT_TRUE((a <=> c) != 0);
  // same text, different contexts: different terms
  EXPECT_NE(parse_term(LC, 1, "x0"), parse_term(LC, 2, "x0"));
}

TEST(Term, ScopeCheck) {
  Term t = parse_term(LC, 1, "app(x0, abs({1} app(x1, x0)))");
  EXPECT_TRUE(is_well_scoped(LC, t));
  Term foreign = parse_term(builtin::first_order_logic(), 0, "top()");
  EXPECT_FALSE(is_well_scoped(LC, foreign));
}
