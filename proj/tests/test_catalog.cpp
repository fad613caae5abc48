#include <gtest/gtest.h>

#include "comlat/catalog.hpp"
#include "comlat/eval.hpp"
#include "comlat/oracles.hpp"
#include "comlat/parser.hpp"
#include "helpers.hpp"

using namespace comlat;
using namespace comlat::testing;

namespace {
  bool contains_alpha(Formula const& f, std::string const& key) {
    if (alpha_key(f) == key) {
      return true;
    }
    if (is_atom(f->kind)) {
      return false;
    }
    return contains_alpha(f->left, key) || (f->right && contains_alpha(f->right, key));
  }
}  // namespace

TEST(Catalog, TwentyEntries) {
  EXPECT_EQ(catalog().size(), 20u);
}

TEST(Catalog, DeclaredArity) {
  for (auto const& e : catalog()) {
    std::vector<int> params;
    for (auto const& p : e.params) {
      params.push_back(p.min_value + 1);
    }
    auto f = build(e.name, params);
    EXPECT_EQ(free_vars(f).size(), e.arity) << e.name;
    EXPECT_EQ(e.arity, (e.name == "NilPart" || e.name == "ZR") ? 2u : 1u);
  }
  EXPECT_EQ(free_vars(build("NilPart")), (std::vector<std::string>{"x", "y"}));
}

TEST(Catalog, PrintedNeut) {
  EXPECT_EQ(to_string(build("Neut")),
            "forall y1,z1 ((x|y1)&(y1|z1)&(z1|x) = (x&y1)|(y1&z1)|(z1&x))");
}

TEST(Catalog, PrintedA) {
  EXPECT_EQ(to_string(build("A")),
            "exists y1 ((forall z1 (y1 <= z1)) and (min x { x != y1 }))");
}

TEST(Catalog, CmZeroIsMinOverAllCm) {
  auto f = build("Cm", {0});
  ASSERT_EQ(f->kind, FormulaKind::min);
  EXPECT_EQ(to_string(f->left), to_string(build("AllCm")));
}

TEST(Catalog, AnOneIsBottomFormula) {
  EXPECT_EQ(to_string(build("An", {1})), "forall y1 (x <= y1)");
}

TEST(Catalog, CmNestsPrevious) {
  for (int m = 1; m <= 4; ++m) {
    EXPECT_TRUE(contains_alpha(build("Cm", {m}), alpha_key(build("Cm", {m - 1}))));
  }
}

TEST(Catalog, CmGrowsLinearly) {
  auto s0 = size(build("Cm", {0}));
  auto s1 = size(build("Cm", {1}));
  auto step = s1 - s0;
  for (int m = 2; m <= 6; ++m) {
    EXPECT_EQ(size(build("Cm", {m})), s0 + static_cast<std::size_t>(m) * step);
  }
}

TEST(Catalog, Errors) {
  EXPECT_THROW(build("Nope"), UnknownName);
  EXPECT_THROW(build("AGe", {1}), ParamOutOfRange);
  EXPECT_THROW(build("Cm", {-1}), ParamOutOfRange);
  EXPECT_THROW(build("Cm"), ParamOutOfRange);
  EXPECT_THROW(build("Neut", {2}), ParamOutOfRange);
  EXPECT_THROW(build("An", {0}), ParamOutOfRange);
}

TEST(Catalog, PrintParseRoundTrip) {
  for (auto const& e : catalog()) {
    std::vector<int> params;
    for (auto const& p : e.params) {
      params.push_back(p.min_value);
    }
    auto f = build(e.name, params);
    EXPECT_TRUE(equal(parse(to_string(f)), f)) << e.name;
  }
}

TEST(BuiltinRef, Parsing) {
  auto r = parse_builtin_ref("builtin:MonoidVar[2,1]");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->name, "MonoidVar");
  EXPECT_EQ(r->params, (std::vector<int>{2, 1}));
  auto s = parse_builtin_ref("builtin:Neut");
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->params.empty());
  EXPECT_FALSE(parse_builtin_ref("Neut"));
  EXPECT_THROW(parse_builtin_ref("builtin:Cm[1"), InputError);
  EXPECT_THROW(parse_builtin_ref("builtin:Cm[a]"), InputError);
  EXPECT_THROW(parse_builtin_ref("builtin:"), InputError);
  EXPECT_EQ(parse_builtin_ref("builtin:Cm[ 3 ]")->params, (std::vector<int>{3}));
}

TEST(DefinedSetByName, AtomsOfM3) {
  auto l = m3();
  EXPECT_EQ(defined_set_by_name(l, "A").labels(l),
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(defined_set_by_name(l, "Per").size(), 4u);
}

// Min selects inside the AllCm set on every lattice
TEST(Property, CmInsideAllCm) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto                l = random_lattice(seed, 4);
    RelationalEvaluator ev(l);
    auto                all = ev.defined_set(build("AllCm"));
    for (int m = 0; m <= 3; ++m) {
      EXPECT_TRUE(ev.defined_set(build("Cm", {m})).is_subset_of(all));
    }
  }
}

TEST(Property, CatalogRelationalEqualsNaiveOnSmallLattices) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto                l = random_lattice(seed, 3);
    RelationalEvaluator ev(l);
    for (auto const* name : {"A", "SL", "ZM", "GrA", "Gr", "Nil", "ZeroRed", "AllCm"}) {
      EXPECT_EQ(ev.defined_set(build(name)), defined_set_naive(l, build(name))) << name;
    }
  }
}
