#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "initsem/builtin.hpp"
#include "initsem/error.hpp"
#include "initsem/translate.hpp"

using namespace initsem;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(INITSEM_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Signature& FOL = builtin::first_order_logic();
const Signature& LL = builtin::linear_logic();
const Signature& LC = builtin::lambda_calculus();

Interpretation fol2ll() { return parse_interpretation(slurp("fol2ll.interp"), FOL, LL); }

std::string tr(const Interpretation& i, std::size_t n, const char* text) {
  return print_term(translate_term(i, parse_term(i.source, n, text)));
}

const char* kHeader = "interp t : FOL -> LL\n";
const char* kRest =
    "top() = top()\nbot() = zero()\nand($1, $2) = with($1, $2)\n"
    "or($1, $2) = oplus($1, $2)\nimp($1, $2) = lollipop($1, $2)\n"
    "forall({1} $1) = forall({1} $1)\n";

Interpretation with(const std::string& neg_and_exists, const Faults& faults = {}) {
  return parse_interpretation(std::string(kHeader) + kRest + neg_and_exists, FOL, LL, faults);
}

TEST(Interpretation, HeaderAndTemplates) {
  InterpretationHeader h = parse_interpretation_header(slurp("fol2ll.interp"));
  EXPECT_EQ(h.name, "fol2ll");
  EXPECT_EQ(h.source, "FOL");
  EXPECT_EQ(h.target, "LL");
  Interpretation i = fol2ll();
  EXPECT_EQ(print_template(i.at("neg")), "lollipop(bang($1), zero())");
  EXPECT_EQ(print_template(i.at("forall")), "forall({1} $1)");
  EXPECT_FALSE(i.depth_override);
}

TEST(Interpretation, PrintRoundTrips) {
  Interpretation i = fol2ll();
  Interpretation j = parse_interpretation(print_interpretation(i), FOL, LL);
  EXPECT_EQ(print_interpretation(i), print_interpretation(j));
}

TEST(Interpretation, Errors) {
  auto kind = [](const std::string& text) {
    try {
      parse_interpretation(text, FOL, LL);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Usage;
  };
  const std::string ok = "neg($1) = bang($1)\nexists({1} $1) = exists({1} $1)\n";
  EXPECT_EQ(kind(std::string(kHeader) + kRest + "neg($1) = bang($1)\n"), ErrorKind::Interpretation);
  EXPECT_EQ(kind(std::string(kHeader) + kRest + "neg($1) = bang($1)\nexists({1} $1) = bang($1)\n"),
            ErrorKind::Interpretation);
  EXPECT_EQ(kind(std::string(kHeader) + kRest + "neg($1) = nope($1)\nexists({1} $1) = exists({1} $1)\n"),
            ErrorKind::UnknownConstructor);
  EXPECT_EQ(kind(std::string(kHeader) + kRest + ok + "neg($1) = top()\n"), ErrorKind::Duplicate);
  EXPECT_EQ(kind(std::string(kHeader) + kRest + "neg($1) = bang(x0)\nexists({1} $1) = exists({1} $1)\n"),
            ErrorKind::Interpretation);
  EXPECT_EQ(kind(std::string(kHeader) + kRest + "neg($1) = bang($2)\nexists({1} $1) = exists({1} $1)\n"),
            ErrorKind::Interpretation);
  EXPECT_EQ(kind(std::string(kHeader) + kRest + "neg($1) = bang($1)\nexists($1) = exists({1} $1)\n"),
            ErrorKind::Arity);
  EXPECT_EQ(kind("interp t : LC -> LL\n"), ErrorKind::Interpretation);
  EXPECT_THROW(parse_interpretation("interp t FOL -> LL\n", FOL, LL), SyntaxError);
  EXPECT_NO_THROW(parse_interpretation(std::string(kHeader) + kRest + ok, FOL, LL));
}

TEST(Translate, Goldens) {
  Interpretation i = fol2ll();
  EXPECT_EQ(tr(i, 1, "neg(x0)"), "lollipop(bang(x0), zero())");
  EXPECT_EQ(tr(i, 2, "or(x0, x1)"), "oplus(bang(x0), bang(x1))");
  EXPECT_EQ(tr(i, 0, "forall({1} and(x0, x0))"), "forall({1} with(x0, x0))");
  EXPECT_EQ(tr(i, 1, "exists({1} imp(x1, x0))"), "exists({1} bang(lollipop(bang(x1), x0)))");
  EXPECT_EQ(tr(i, 0, "bot()"), "zero()");
}

TEST(Translate, IdentityInterpretation) {
  Interpretation i = parse_interpretation(slurp("lc_id.interp"), LC, LC);
  for (const auto& t : enumerate_terms(LC, 2, 3)) EXPECT_EQ(translate_term(i, t), t);
  LawBounds b;
  b.max_context = 1;
  EXPECT_TRUE(check_substitution_safety(i, b).passed());
}

TEST(Translate, AgreesWithTheFoldIntoTheInducedModel) {
  Interpretation i = fol2ll();
  auto m = induced_model(i);
  for (const auto& t : enumerate_terms(FOL, 1, 3)) {
    EXPECT_EQ(fold(*m, t).term(), translate_term(i, t));
  }
}

TEST(Translate, InducedModelIsLawful) {
  LawBounds b;
  b.max_context = 1;
  b.max_height = 2;
  EXPECT_TRUE(run_model_law_suite(*induced_model(fol2ll()), b).passed());
  EXPECT_TRUE(check_model_morphism(*induced_model(fol2ll()), b).passed());
}

TEST(Safety, FolToLlSquare) {
  LawBounds b;
  b.max_context = 1;
  b.max_height = 3;
  b.samples = 2000;
  b.per_term_budget = 1'000'000;
  b.case_budget = 100'000'000;
  LawReport r = check_substitution_safety(fol2ll(), b);
  EXPECT_TRUE(r.passed()) << render_text(r);
  EXPECT_EQ(r.laws().at("square").coverage, "exhaustive");
  EXPECT_EQ(r.laws().at("square-random").cases, 2000u);
}

TEST(Safety, ErasingInterpretationIsLawful) {
  std::string text = "interp erase : FOL -> LL\n"
                     "top() = top()\nbot() = top()\nneg($1) = top()\nand($1, $2) = top()\n"
                     "or($1, $2) = top()\nimp($1, $2) = top()\nexists({1} $1) = top()\n"
                     "forall({1} $1) = top()\n";
  Interpretation i = parse_interpretation(text, FOL, LL);
  LawBounds b;
  b.max_context = 1;
  b.samples = 200;
  EXPECT_TRUE(check_substitution_safety(i, b).passed());
  EXPECT_TRUE(run_model_law_suite(*induced_model(i), b).passed());
}

TEST(Safety, WrongDepthHoleIsCaught) {
  const std::string bad = "neg($1) = bang($1)\nexists({1} $1) = bang($1)\n";
  EXPECT_THROW(with(bad), Error);
  Faults f;
  f.template_depth = true;
  Interpretation i = with(bad, f);
  EXPECT_TRUE(i.depth_override);
  LawBounds b;
  b.max_context = 1;
  b.samples = 200;
  LawReport r = check_substitution_safety(i, b);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.laws().at("square").failure_count + r.laws().at("context-preserved").failure_count, 0u);
}

}  // namespace
