#include <random>

#include <gtest/gtest.h>

#include "comlat/catalog.hpp"
#include "comlat/eval.hpp"
#include "comlat/oracles.hpp"
#include "comlat/parser.hpp"
#include "comlat/random_formula.hpp"
#include "helpers.hpp"

using namespace comlat;
using namespace comlat::testing;

TEST(Evaluate, Reflexivity) {
  auto l = m3();
  for (ElementId a = 0; a < l.size(); ++a) {
    EXPECT_TRUE(evaluate(l, parse("x = x"), {{"x", a}}));
    EXPECT_TRUE(evaluate_naive(l, parse("x = x"), {{"x", a}}));
  }
}

TEST(Evaluate, NeutOnM3Atom) {
  auto l = m3();
  EXPECT_FALSE(evaluate(l, build("Neut"), {{"x", 1}}));
  EXPECT_EQ(evaluate(l, build("Neut"), {{"x", 1}}), semantic_neutral(l, 1));
}

TEST(Evaluate, BottomIsNotAnAtom) {
  for (auto const& l : {m3(), n5(), chain(4)}) {
    EXPECT_FALSE(evaluate(l, build("A"), {{"x", l.bottom()}}));
  }
}

TEST(Evaluate, MissingAssignment) {
  auto l = m3();
  EXPECT_THROW(evaluate(l, parse("x <= y"), {{"x", 0}}), MissingAssignment);
  EXPECT_THROW(evaluate_naive(l, parse("x <= y"), {{"x", 0}}), MissingAssignment);
}

TEST(Evaluate, SentencesAndExtraAssignments) {
  auto l = n5();
  EXPECT_TRUE(evaluate(l, parse("exists x (forall y (x <= y))"), {}));
  EXPECT_FALSE(evaluate(l, parse("forall x,y (x <= y or y <= x)"), {}));
  EXPECT_TRUE(evaluate(l, parse("x <= x|y"), {{"x", 1}, {"y", 2}, {"z", 0}}));
}

TEST(DefinedSet, Examples) {
  auto l = m3();
  EXPECT_EQ(defined_set(l, build("A")).labels(l), (std::vector<std::string>{"a", "b", "c"}));
  auto c = chain(5);
  EXPECT_EQ(defined_set(c, build("Ch")).size(), 5u);
  auto p = n5();
  EXPECT_EQ(defined_set(p, build("Neut")).labels(p), (std::vector<std::string>{"0", "1"}));
}

TEST(DefinedSet, ArityError) {
  auto l = m3();
  EXPECT_THROW(defined_set(l, parse("x <= y")), ArityError);
  EXPECT_THROW(defined_set(l, parse("forall x (x = x)")), ArityError);
  EXPECT_THROW(defined_set_naive(l, parse("x <= y")), ArityError);
}

TEST(DefinedSet, MinSelectsMinimalElements) {
  auto l = n5();
  auto f = parse("min x { exists y (y < x) }");
  EXPECT_EQ(defined_set(l, f).labels(l), (std::vector<std::string>{"a", "b"}));
  // x does not occur in the body: only the bottom is minimal
  auto g = parse("min x { y = y }");
  EXPECT_EQ(relation(l, g).vars, (std::vector<std::string>{"x", "y"}));
  for (ElementId a = 0; a < l.size(); ++a) {
    for (ElementId b = 0; b < l.size(); ++b) {
      EXPECT_EQ(evaluate(l, g, {{"x", a}, {"y", b}}), a == l.bottom());
    }
  }
}

TEST(Relation, VariableOrderFollowsFreeVars) {
  auto l = chain(3);
  auto t = relation(l, parse("y < x"));
  EXPECT_EQ(t.vars, (std::vector<std::string>{"y", "x"}));
  EXPECT_TRUE(t.contains(std::vector<ElementId>{0, 2}));
  EXPECT_FALSE(t.contains(std::vector<ElementId>{2, 0}));
}

TEST(Relation, FactoredCompoundTermMatchesNaive) {
  auto l = random_lattice(3, 5);
  auto f = parse("(exists s (x|z < s)) and (forall w (w <= x|z -> w <= y))");
  auto t = relation(l, f);
  for (ElementId a = 0; a < l.size(); ++a) {
    for (ElementId b = 0; b < l.size(); ++b) {
      for (ElementId c = 0; c < l.size(); ++c) {
        Assignment env{{"x", a}, {"y", b}, {"z", c}};
        EXPECT_EQ(t.contains(env), evaluate_naive(l, f, env));
      }
    }
  }
}

TEST(Relation, ResourceLimit) {
  auto l = chain(200);
  EXPECT_THROW(relation(l, parse("a|b|c|d|e = a")), ResourceLimit);
}

TEST(Relation, ShadowedVariables) {
  auto l = n5();
  auto f = parse("exists x (x < y and (forall x (x <= y -> x <= y))) and x <= y");
  for (ElementId a = 0; a < l.size(); ++a) {
    for (ElementId b = 0; b < l.size(); ++b) {
      Assignment env{{"x", a}, {"y", b}};
      EXPECT_EQ(evaluate(l, f, env), evaluate_naive(l, f, env));
    }
  }
}

// relational evaluation agrees with naive recursion on every assignment
TEST(Property, RelationalEqualsNaive) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 120; ++i) {
    auto l  = random_lattice(rng(), 1 + rng() % 4);
    auto f  = random_formula(rng);
    auto t  = relation(l, f);
    auto fv = free_vars(f);
    detail::for_each_tuple(l.size(), fv.size(), [&](auto const& tuple, std::size_t idx) {
      Assignment env;
      for (std::size_t j = 0; j < fv.size(); ++j) {
        env[fv[j]] = tuple[j];
      }
      ASSERT_EQ(t.bits.test(idx), evaluate_naive(l, f, env)) << to_string(f);
    });
  }
}

TEST(Property, SugarExpansionPreservesMeaning) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 80; ++i) {
    auto l = random_lattice(rng(), 1 + rng() % 4);
    auto f = random_formula(rng);
    auto a = relation(l, f);
    auto b = relation(l, expand_sugar(f));
    ASSERT_EQ(a.vars.size(), b.vars.size());
    EXPECT_EQ(a.bits, detail::broadcast(b, a.vars)) << to_string(f);
  }
}

TEST(Property, AlphaRenamingInvariance) {
  auto l = random_lattice(5, 5);
  auto f = parse("forall y (exists z (x <= y|z and z != y))");
  auto g = parse("forall u (exists v (x <= u|v and v != u))");
  EXPECT_EQ(defined_set(l, f), defined_set(l, g));
  EXPECT_EQ(alpha_key(f), alpha_key(g));
  EXPECT_NE(alpha_key(f), alpha_key(parse("forall y (exists z (x <= z|y and z != y))")));
}

TEST(Property, OracleAgreementOnRandomLattices) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto                l = random_lattice(seed, 4 + seed % 3);
    RelationalEvaluator ev(l);
    EXPECT_EQ(ev.defined_set(build("A")), semantic_atoms(l));
    EXPECT_EQ(ev.defined_set(build("Neut")), select(l, semantic_neutral));
    EXPECT_EQ(ev.defined_set(build("Ch")), select(l, semantic_chain_downset));
    EXPECT_EQ(ev.defined_set(build("LMod")), select(l, semantic_lower_modular));
  }
}

TEST(Property, MinMatchesSemanticMinimal) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    auto l   = random_lattice(rng(), 2 + rng() % 4);
    auto phi = random_unary_formula(rng, {.max_depth = 2});
    EXPECT_EQ(defined_set(l, min("x", phi)), semantic_minimal(l, defined_set(l, phi)))
        << to_string(phi);
  }
}

TEST(Evaluator, CacheIsReused) {
  auto                l = random_lattice(8, 5);
  RelationalEvaluator ev(l);
  auto                first = ev.defined_set(build("Nil"));
  auto                size  = ev.cache_size();
  EXPECT_GT(size, 0u);
  EXPECT_EQ(ev.defined_set(build("Nil")), first);
  EXPECT_EQ(ev.cache_size(), size);
}

TEST(Relation, NestedQuantifierBlocksOfOneKind) {
  auto l = n5();
  for (auto const* text : {"forall y (forall z (forall w (x & y <= z | w)))",
                           "exists y (exists z (exists w (exists u (y | z <= w & u and x <= y))))"}) {
    auto f = parse(text);
    EXPECT_EQ(RelationalEvaluator(l).defined_set(f), defined_set_naive(l, f)) << text;
  }
}
