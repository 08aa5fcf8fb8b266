#include <gtest/gtest.h>

#include "support/gen.hpp"
#include "vfrag/formula.hpp"

using namespace vfrag;

namespace {

Term x(VarIndex i) { return Term::variable(i); }
Term n(std::uint64_t v) { return Term::integer(v); }
const Term w = Term::uniformizer();

}  // namespace

TEST(Parse, ExistsWithUniformizer) {
  Formula f = parse_formula("E x0. x0*x0 = 1+w", Language::val());
  EXPECT_EQ(f, Formula::exists(0, Formula::eq(x(0) * x(0), n(1) + w)));
}

TEST(Parse, RingRejectsPredicateO) {
  EXPECT_THROW(parse_formula("O(inv(x0))", Language::ring()), LanguageError);
}

TEST(Parse, RingRejectsInverse) {
  EXPECT_THROW(parse_formula("inv(x0) = 1", Language::ring()), LanguageError);
}

TEST(Parse, DisequalityIsNegatedEquality) {
  EXPECT_EQ(parse_formula("x0 != 0"), Formula::negation(Formula::eq(x(0), n(0))));
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse_formula("x0 = = 1");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(std::string(e.what()).find("position 5"), std::string::npos);
  }
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_term("x0+x1*x2"), x(0) + x(1) * x(2));
  EXPECT_EQ(parse_term("x0-x1-x2"), (x(0) - x(1)) - x(2));
  EXPECT_EQ(parse_formula("x0 = 0 | x1 = 0 & x2 = 0"),
            Formula::disj(Formula::eq(x(0), n(0)), Formula::conj(Formula::eq(x(1), n(0)), Formula::eq(x(2), n(0)))));
}

TEST(Parse, ValueSyntax) {
  Term t = parse_term("(t^2+1)/t", Language::field(), ParseOptions{true});
  EXPECT_EQ(t, (w * w + n(1)) * Term::inverse(w));
  EXPECT_THROW(parse_term("t", Language::field()), ParseError);
}

TEST(Print, Examples) {
  EXPECT_EQ(print_formula(Formula::exists(0, Formula::in_o(x(0)))), "E x0. O(x0)");
  EXPECT_EQ(print_formula(Formula::eq(w, w)), "w = w");
  EXPECT_EQ(print_formula(Formula::ne(x(0), n(0))), "x0 != 0");
}

TEST(Print, RoundTripRandomFormulas) {
  gen::Gen val(7, {.vars = 4, .depth = 3, .atoms = 4, .in_o = true, .unif = true, .quantifiers = true});
  gen::Gen field(8, {.vars = 4, .depth = 3, .atoms = 4, .inv = true, .unif = true, .quantifiers = true});
  for (int i = 0; i < 250; ++i) {
    Formula f = val.formula(1 + val.pick(5));
    ASSERT_EQ(parse_formula(print_formula(f), Language::val()), f) << f;
    Formula g = field.formula(1 + field.pick(5));
    ASSERT_EQ(parse_formula(print_formula(g), Language::field()), g) << g;
  }
}

TEST(FreeVars, Examples) {
  EXPECT_EQ(free_vars(Formula::exists(0, Formula::eq(x(0), x(1)))), (std::set<VarIndex>{1}));
  EXPECT_TRUE(free_vars(Formula::in_o(w)).empty());
  EXPECT_EQ(free_vars(Formula::conj(Formula::eq(x(2), n(0)), Formula::exists(2, Formula::eq(x(2), n(1))))),
            (std::set<VarIndex>{2}));
}

TEST(Classify, TwoQuantifierBlock) {
  FragmentClass c = classify_fragment(parse_formula("E x0. E x1. x0*x1 = 1"));
  EXPECT_FALSE(c.is_qf);
  EXPECT_EQ(c.en_index, 2u);
  EXPECT_EQ(c.ene1_index, 1u);
  EXPECT_EQ(c.eup_index, 2u);
}

TEST(Classify, InnerBlocksDoNotMerge) {
  FragmentClass c = classify_fragment(parse_formula("E x0. x0 = 0 & (E x1. x1 = x0) & (E x1. x1*x1 = x0)"));
  EXPECT_FALSE(c.en_index.has_value());
  EXPECT_EQ(c.ene1_index, 1u);
}

TEST(Classify, QuantifierFree) {
  FragmentClass c = classify_fragment(parse_formula("x0 = 0 & !(O(x1) | x1 != 1)"));
  EXPECT_TRUE(c.is_qf);
  EXPECT_EQ(c.en_index, 0u);
  EXPECT_EQ(c.eup_index, 0u);
  EXPECT_EQ(c.ene1_index, 0u);
}

TEST(Classify, NegationAboveQuantifier) {
  FragmentClass c = classify_fragment(parse_formula("!(E x0. x0 = 0)"));
  EXPECT_FALSE(c.is_qf);
  EXPECT_FALSE(c.en_index.has_value());
  EXPECT_FALSE(c.ene1_index.has_value());
  EXPECT_FALSE(c.eup_index.has_value());
}

TEST(Classify, Invariants) {
  gen::Gen g(11, {.vars = 3, .depth = 2, .atoms = 4, .quantifiers = true});
  for (int i = 0; i < 500; ++i) {
    Formula f = g.positive_existential(1 + g.pick(4));
    FragmentClass c = classify_fragment(f);
    ASSERT_EQ(c.is_qf, c.en_index == 0u) << f;
    if (c.en_index && *c.en_index >= 1) {
      ASSERT_TRUE(c.ene1_index.has_value()) << f;
      EXPECT_LE(*c.ene1_index, *c.en_index - 1) << f;
      FragmentClass wrapped = classify_fragment(Formula::exists(9, f));
      ASSERT_TRUE(wrapped.en_index.has_value());
      EXPECT_LE(*wrapped.en_index, *c.en_index + 1) << f;
      ASSERT_TRUE(c.eup_index && wrapped.eup_index);
      EXPECT_LE(*wrapped.eup_index, *c.eup_index + 1) << f;
    }
    if (c.ene1_index && *c.ene1_index >= 1) {
      ASSERT_TRUE(c.eup_index.has_value()) << f;
      EXPECT_LE(*c.eup_index, *c.ene1_index + 1) << f;
    }
  }
}

TEST(Classify, PositiveCombinationAtLevelZero) {
  // Not of the form psi or E x. psi with psi quantifier-free, so one level up.
  FragmentClass c = classify_fragment(parse_formula("(E x0. x0 = 1) | x1 = 0"));
  EXPECT_EQ(c.ene1_index, 0u);
  EXPECT_EQ(c.eup_index, 2u);
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(Formula::eq(x(0), x(1)), 0, w), Formula::eq(w, x(1)));
  EXPECT_EQ(substitute(Formula::exists(0, Formula::eq(x(0), x(1))), 1, x(0)),
            Formula::exists(2, Formula::eq(x(2), x(0))));
  Formula f = parse_formula("E x1. x0*x1 = 1 & O(x0)");
  EXPECT_EQ(substitute(f, 0, x(0)), f);
}

TEST(Substitute, FreeVariableLaw) {
  gen::Gen g(13, {.vars = 3, .depth = 2, .atoms = 3, .in_o = true, .unif = true, .quantifiers = true});
  for (int i = 0; i < 300; ++i) {
    Formula f = g.formula(1 + g.pick(3));
    Term t = g.term(2);
    const VarIndex v = g.pick(3);
    auto fv = free_vars(f);
    if (!fv.contains(v)) continue;
    auto expect = fv;
    expect.erase(v);
    for (auto u : term_vars(t)) expect.insert(u);
    ASSERT_EQ(free_vars(substitute(f, v, t)), expect) << f << " [" << v << " := " << t << "]";
  }
}
