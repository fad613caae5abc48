#include <random>

#include <gtest/gtest.h>

#include "comlat/formula.hpp"
#include "comlat/parser.hpp"
#include "comlat/random_formula.hpp"

using namespace comlat;

TEST(Parse, NeutText) {
  auto f = parse("forall y,z ((x|y)&(y|z)&(z|x) = (x&y)|(y&z)|(z&x))");
  EXPECT_EQ(f->kind, FormulaKind::forall);
  EXPECT_EQ(f->left->kind, FormulaKind::forall);
  EXPECT_EQ(free_vars(f), (std::vector<std::string>{"x"}));
  EXPECT_EQ(to_string(f), "forall y,z ((x|y)&(y|z)&(z|x) = (x&y)|(y&z)|(z&x))");
}

TEST(Parse, MinMacro) {
  auto f = parse("min x { x != y }");
  ASSERT_EQ(f->kind, FormulaKind::min);
  EXPECT_EQ(f->var, "x");
  EXPECT_EQ(to_string(f), "min x { x != y }");
  EXPECT_EQ(free_vars(f), (std::vector<std::string>{"x", "y"}));
  auto e = expand_sugar(f);
  EXPECT_EQ(to_string(e),
            "x != y and (forall x1 (x1&x = x1 and x1 != x -> not x1 != y))");
  EXPECT_EQ(e->kind, FormulaKind::conjunction);
  EXPECT_EQ(e->right->kind, FormulaKind::forall);
  EXPECT_EQ(free_vars(e), free_vars(f));
}

TEST(Parse, SyntaxErrors) {
  EXPECT_THROW(parse("forall y ("), SyntaxError);
  EXPECT_THROW(parse(""), SyntaxError);
  EXPECT_THROW(parse("x = "), SyntaxError);
  EXPECT_THROW(parse("x # y"), SyntaxError);
  EXPECT_THROW(parse("x = y z"), SyntaxError);
  EXPECT_THROW(parse("min x x = y"), SyntaxError);
  EXPECT_THROW(parse("forall and (x = x)"), SyntaxError);
  try {
    parse("x = y and");
    FAIL();
  } catch (SyntaxError const& e) {
    EXPECT_EQ(e.position, 9u);
  }
}

TEST(Parse, RelationsAndSugar) {
  EXPECT_EQ(to_string(parse("x >= y")), "y <= x");
  EXPECT_EQ(to_string(parse("x > y")), "y < x");
  EXPECT_EQ(to_string(parse("not x = y")), "x != y");
  EXPECT_EQ(to_string(parse("not (x <= y)")), "not x <= y");
}

TEST(Parse, ParenthesizedTermVersusFormula) {
  auto a = parse("(x|y)&z = z");
  EXPECT_EQ(a->kind, FormulaKind::eq);
  auto b = parse("(x = y) and (y = z)");
  EXPECT_EQ(b->kind, FormulaKind::conjunction);
  auto c = parse("((x|y) = y)");
  EXPECT_EQ(c->kind, FormulaKind::eq);
  auto d = parse("(x|y) = y or x = y");
  EXPECT_EQ(d->kind, FormulaKind::disjunction);
}

TEST(Parse, Precedence) {
  auto f = parse("a = a or b = b and c = c -> d = d");
  ASSERT_EQ(f->kind, FormulaKind::implication);
  EXPECT_EQ(f->left->kind, FormulaKind::disjunction);
  EXPECT_EQ(f->left->right->kind, FormulaKind::conjunction);
  auto g = parse("a = a -> b = b -> c = c");
  EXPECT_EQ(g->right->kind, FormulaKind::implication);
  EXPECT_EQ(to_string(g), "a = a -> b = b -> c = c");
  auto h = parse("(a = a -> b = b) -> c = c");
  EXPECT_EQ(to_string(h), "(a = a -> b = b) -> c = c");
  auto t = parse("x & y | z = x & (y | z)");
  EXPECT_EQ(to_string(t), "(x&y)|z = x&(y|z)");
}

TEST(Parse, QuantifierBodyExtendsRight) {
  auto f = parse("forall y x <= y and y = y");
  ASSERT_EQ(f->kind, FormulaKind::forall);
  EXPECT_EQ(f->left->kind, FormulaKind::conjunction);
  EXPECT_EQ(to_string(f), "forall y (x <= y and y = y)");
}

TEST(Print, NestedQuantifiersParenthesized) {
  auto f = forall("y", exists("z", conj(leq(var("x"), var("y")), lt(var("y"), var("z")))));
  EXPECT_EQ(to_string(f), "forall y (exists z (x <= y and y < z))");
  auto g = conj(forall("y", eq(var("y"), var("y"))), eq(var("x"), var("x")));
  // a bare quantifier would swallow the rest of the conjunction
  EXPECT_EQ(to_string(g), "(forall y (y = y)) and x = x");
  EXPECT_TRUE(equal(parse(to_string(g)), g));
}

TEST(Print, LeftAssociativeConnectives) {
  auto a = eq(var("a"), var("a"));
  auto b = eq(var("b"), var("b"));
  auto c = eq(var("c"), var("c"));
  EXPECT_EQ(to_string(conj(a, conj(b, c))), "a = a and (b = b and c = c)");
  EXPECT_EQ(to_string(disj(disj(a, b), c)), "a = a or b = b or c = c");
  EXPECT_EQ(to_string(conj(disj(a, b), c)), "(a = a or b = b) and c = c");
  EXPECT_EQ(to_string(negation(conj(a, b))), "not (a = a and b = b)");
  EXPECT_EQ(to_string(negation(negation(a))), "not a != a");
}

TEST(FreeVars, Examples) {
  EXPECT_TRUE(free_vars(parse("forall x (x = x)")).empty());
  EXPECT_EQ(free_vars(parse("y <= x and (exists y (y = z))")),
            (std::vector<std::string>{"y", "x", "z"}));
}

TEST(Substitute, RenamesFreeOnly) {
  auto f = parse("x = y and (forall x (x = y))");
  auto g = substitute(f, {{"x", var("w")}});
  EXPECT_EQ(to_string(g), "w = y and (forall x (x = y))");
  auto h = substitute(parse("min x { x = y }"), {{"x", var("v")}});
  EXPECT_EQ(to_string(h), "min v { v = y }");
  EXPECT_THROW(substitute(parse("min x { x = y }"), {{"x", join(var("a"), var("b"))}}),
               InputError);
}

TEST(Parse, QuantifierAfterConnectiveNeedsParentheses) {
  EXPECT_THROW(parse("x = x and forall y (y = y)"), SyntaxError);
  EXPECT_NO_THROW(parse("x = x -> forall y (y = y)"));
}

TEST(Identifiers, Validation) {
  EXPECT_THROW(var(""), InputError);
  EXPECT_THROW(var("1x"), InputError);
  EXPECT_NO_THROW(var("_a9"));
}

TEST(RoundTrip, RandomFormulasAreFixedPoints) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto f    = random_formula(rng);
    auto text = to_string(f);
    auto g    = parse(text);
    EXPECT_TRUE(equal(f, g)) << text;
    EXPECT_EQ(to_string(g), text);
  }
}

TEST(RoundTrip, SugarExpansionKeepsFreeVariables) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto f  = random_formula(rng);
    auto fv = free_vars(f);
    auto ev = free_vars(expand_sugar(f));
    std::sort(fv.begin(), fv.end());
    std::sort(ev.begin(), ev.end());
    EXPECT_EQ(fv, ev) << to_string(f);
  }
}
