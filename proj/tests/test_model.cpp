#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "comlat/catalog.hpp"
#include "comlat/derivation.hpp"
#include "comlat/eval.hpp"
#include "comlat/identity_space.hpp"
#include "comlat/lattice_io.hpp"
#include "comlat/oracles.hpp"
#include "comlat/universe.hpp"
#include "comlat/variety.hpp"
#include "comlat/words.hpp"

using namespace comlat;

namespace {

  Identity id(std::string const& text) {
    return parse_identity(text);
  }

  Universe const& fixture(std::string const& file) {
    static std::map<std::string, Universe> cache;
    auto it = cache.find(file);
    if (it == cache.end()) {
      auto spec = universe_spec_from_json(
          read_json_file(std::string(COMLAT_FIXTURE_DIR) + "/" + file));
      it = cache.emplace(file, build_universe(spec)).first;
    }
    return it->second;
  }

  std::vector<VarietyDescriptor> sample_varieties() {
    return {trivial_variety(), abelian_group(2), abelian_group(3), abelian_group(6),
            cyclic_monoid(0),  cyclic_monoid(1), cyclic_monoid(3), nil_d(2),
            nil_d(4),          nil_n(2),         nil_n(3),         nil_n3c(),
            join_of({abelian_group(2), cyclic_monoid(2)}),
            join_of({nil_d(3), nil_n3c()}),
            zr_hull(nil_d(3))};
  }

  CommutativeWord random_word(std::mt19937_64& rng, std::size_t letters, unsigned max_exp) {
    CommutativeWord w;
    for (std::size_t i = 0; i < letters; ++i) {
      w.set(i, static_cast<unsigned>(rng() % (max_exp + 1)));
    }
    if (w.empty()) {
      w.set(rng() % letters, 1);
    }
    return w;
  }

  CommutativeWord permuted(CommutativeWord const& w, std::array<std::size_t, kMaxLetters> const& p) {
    CommutativeWord out;
    for (std::size_t i = 0; i < kMaxLetters; ++i) {
      out.set(p[i], w[i]);
    }
    return out;
  }

}  // namespace

TEST(Words, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_word("x^3 y")), "x^3 y");
  EXPECT_EQ(to_string(parse_word("yx x")), "x^2 y");
  EXPECT_EQ(to_string(CommutativeWord{}), "1");
  EXPECT_EQ(to_string(id("x^2 y = 0")), "x^2 y = 0");
  EXPECT_EQ(to_string(id("x y = y x")), "x y = x y");
}

TEST(Words, ParseErrors) {
  EXPECT_THROW(parse_word("x^"), InputError);
  EXPECT_THROW(parse_word("x1"), InputError);
  EXPECT_THROW(parse_identity("x = y = z"), InputError);
  EXPECT_THROW(parse_identity("x y"), InputError);
  EXPECT_THROW(parse_word("a"), AlphabetOverflow);
  EXPECT_THROW(parse_word("x^300"), InputError);
  EXPECT_THROW(parse_identity("= x"), InputError);
  EXPECT_THROW(Identity::balanced(CommutativeWord{}, parse_word("x")), InputError);
}

TEST(Words, BalancedFormUsesFreshLetter) {
  auto [u, v] = balanced_form(id("x^2 = 0"));
  EXPECT_EQ(to_string(u), "x^2 y");
  EXPECT_EQ(to_string(v), "x^2");
  EXPECT_THROW(balanced_form(id("x y z t u v w s = 0")), AlphabetOverflow);
}

TEST(Variety, ClosedFormExamples) {
  EXPECT_TRUE(abelian_group(2).satisfies(id("x^3 = x")));
  EXPECT_FALSE(abelian_group(3).satisfies(id("x^3 = x")));
  EXPECT_TRUE(cyclic_monoid(1).satisfies(id("x y = x^2 y^3")));
  EXPECT_FALSE(cyclic_monoid(1).satisfies(id("x y = x")));
  EXPECT_FALSE(nil_d(3).satisfies(id("x^2 y = 0")));
  EXPECT_TRUE(nil_d(3).satisfies(id("x^3 = x^4")));
  EXPECT_TRUE(nil_n(3).satisfies(id("x y z = 0")));
  EXPECT_FALSE(nil_n(3).satisfies(id("x y = 0")));
  EXPECT_TRUE(nil_n3c().satisfies(id("x^3 = 0")));
  EXPECT_TRUE(com_top().satisfies(id("x y = y x")));
  EXPECT_FALSE(com_top().satisfies(id("x^2 = x^3")));
}

TEST(Variety, Names) {
  EXPECT_EQ(abelian_group(1).name(), "T");
  EXPECT_EQ(abelian_group(4).name(), "A_4");
  EXPECT_EQ(cyclic_monoid(1).name(), "SL");
  EXPECT_EQ(nil_n(2).name(), "ZM");
  EXPECT_EQ(nil_d(1).name(), "T");
  EXPECT_EQ(join_of({abelian_group(2), cyclic_monoid(3)}).name(), "A_2∨C_3");
  EXPECT_EQ(x_variety(2, 4).name(), "X_{2,4}");
}

TEST(Derivation, SpecExample) {
  std::vector<Identity> basis{id("x^4 = 0"), id("x^3 y = x y^3")};
  EXPECT_TRUE(bfs_consequence(basis, id("x^3 y^2 = 0"), {3, 10}));
  EXPECT_FALSE(bfs_consequence(basis, id("x^2 y^2 = 0"), {3, 10}));
}

TEST(Derivation, BoundsTooSmall) {
  DerivationClosure c({id("x^2 = x^3")}, {2, 4});
  EXPECT_THROW(c.derives(id("x^5 = x^2")), BoundsTooSmall);
}

TEST(Derivation, AgreesWithClosedFormOnSmallWords) {
  std::mt19937_64 rng(5);
  for (auto const& d : sample_varieties()) {
    if (d.kind() == VarietyKind::join || d.kind() == VarietyKind::zr_hull) {
      continue;
    }
    DerivationClosure closure(d.basis(), {3, 12});
    for (int i = 0; i < 200; ++i) {
      auto u = random_word(rng, 2, 3);
      auto v = random_word(rng, 2, 3);
      auto e = Identity::balanced(u, v);
      EXPECT_EQ(d.satisfies(e), closure.derives(e)) << d.name() << ": " << to_string(e);
    }
  }
}

TEST(Property, RenamingInvariance) {
  std::mt19937_64 rng(11);
  for (auto const& d : sample_varieties()) {
    for (int i = 0; i < 100; ++i) {
      std::array<std::size_t, kMaxLetters> p{};
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.begin() + 3, rng);
      auto u = random_word(rng, 3, 4);
      auto v = random_word(rng, 3, 4);
      EXPECT_EQ(d.satisfies(Identity::balanced(u, v)),
                d.satisfies(Identity::balanced(permuted(u, p), permuted(v, p))))
          << d.name();
      EXPECT_EQ(d.satisfies(Identity::balanced(u, v)), d.satisfies(Identity::balanced(v, u)));
    }
  }
}

TEST(Property, ZeroIsUpwardClosed) {
  std::mt19937_64 rng(12);
  for (auto const& d : sample_varieties()) {
    for (int i = 0; i < 100; ++i) {
      auto w = random_word(rng, 3, 4);
      auto a = random_word(rng, 3, 2);
      if (d.satisfies(Identity::zero(w))) {
        EXPECT_TRUE(d.satisfies(Identity::zero(w + a))) << d.name() << ": " << to_string(w);
      }
    }
  }
}

TEST(Property, JoinSatisfiesExactlyCommonIdentities) {
  std::mt19937_64 rng(13);
  auto const      vs = sample_varieties();
  for (int i = 0; i < 300; ++i) {
    auto const& a = vs[rng() % vs.size()];
    auto const& b = vs[rng() % vs.size()];
    auto        j = join_of({a, b});
    auto        e = Identity::balanced(random_word(rng, 3, 4), random_word(rng, 3, 4));
    EXPECT_EQ(j.satisfies(e), a.satisfies(e) && b.satisfies(e)) << j.name();
  }
}

TEST(Property, ProfileIsAntitone) {
  IdentitySpace space({8, 4, 6, 0});
  std::vector<std::pair<VarietyDescriptor, VarietyDescriptor>> below{
      {abelian_group(2), abelian_group(4)},
      {cyclic_monoid(1), cyclic_monoid(3)},
      {nil_d(2), nil_d(4)},
      {nil_n(2), nil_n(3)},
      {nil_n3c(), nil_d(3)},
      {nil_d(3), zr_hull(nil_d(3))},
      {abelian_group(2), join_of({abelian_group(2), nil_d(2)})}};
  for (auto const& [small, big] : below) {
    EXPECT_TRUE(space.profile(big).is_subset_of(space.profile(small)))
        << small.name() << " <= " << big.name();
  }
}

TEST(IdentitySpace, CanonicalFormIsRenamingInvariant) {
  IdentitySpace space({6, 3, 4, 0});
  EXPECT_EQ(space.index_of(id("x^2 y = y")), space.index_of(id("y^2 z = z")));
  EXPECT_EQ(space.index_of(id("x^2 = 0")), space.index_of(id("y^2 z = y^2")));
  EXPECT_FALSE(space.contains(id("x^9 = x")));
  EXPECT_GT(IdentitySpace(SpaceBounds{6, 3, 4, 0}.raised(2)).size(), space.size());
}

TEST(Universe, SpecParsingErrors) {
  EXPECT_THROW(universe_spec_from_json(nlohmann::json::parse("[1, 2]")), InputError);
  EXPECT_THROW(universe_spec_from_json(nlohmann::json::parse(R"({"max_m": "two"})")), InputError);
  EXPECT_THROW(universe_spec_from_json(nlohmann::json::parse(R"({"nil": [{"k": 2}]})")), InputError);
  EXPECT_EQ(universe_spec_from_json(nlohmann::json::parse("{}")).group_exponents,
            std::vector<int>{1});
  auto bad = nlohmann::json::parse(
      R"({"group_exponents":[1,2,3],"max_m":0,"nil":[],"space":{"dA":6,"dB":3,"dC":4}})");
  EXPECT_THROW(build_universe(universe_spec_from_json(bad)), InputError);
  auto family = nlohmann::json::parse(
      R"({"group_exponents":[1],"max_m":0,"nil":[{"family":"Q","k":2}],"space":{"dA":6,"dB":3,"dC":4}})");
  EXPECT_THROW(build_universe(universe_spec_from_json(family)), InputError);
}

TEST(Universe, SmallSpecRoundTrip) {
  auto doc = nlohmann::json::parse(R"({
    "group_exponents": [1, 2], "max_m": 1,
    "nil": [{"family": "D", "k": 2}],
    "space": {"dA": 8, "dB": 4, "dC": 6}})");
  auto spec = universe_spec_from_json(doc);
  EXPECT_EQ(universe_spec_from_json(universe_spec_to_json(spec)).max_m, 1);
  auto u = build_universe(spec);
  std::vector<std::string> names;
  for (ElementId e = 0; e < u.size(); ++e) {
    names.push_back(u.name(e));
  }
  std::sort(names.begin(), names.end());
  std::vector<std::string> want{"A_2",    "A_2∨N_ω", "A_2∨SL",    "A_2∨SL∨N_ω", "COM",
                                "N_ω",    "SL",      "SL∨N_ω",    "T"};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(names, want);
  EXPECT_TRUE(u.labels(u.at("A_2")).is_atom);
  EXPECT_TRUE(u.labels(u.at("N_ω")).is_zero_reduced);
  EXPECT_FALSE(u.labels(u.at("COM")).is_periodic);
  EXPECT_THROW(nil_part(u, u.at("COM")), TopHasNoNilPart);
  EXPECT_THROW(zr(u, u.at("A_2")), NotNil);
  EXPECT_THROW(u.at("C_7"), NotInUniverse);
}

TEST(F2, Atoms) {
  auto const& u = fixture("F2.json");
  std::vector<std::string> atoms;
  for (ElementId e = 0; e < u.size(); ++e) {
    if (u.labels(e).is_atom) {
      atoms.push_back(u.name(e));
    }
  }
  std::sort(atoms.begin(), atoms.end());
  EXPECT_EQ(atoms, (std::vector<std::string>{"A_2", "SL", "ZM"}));
  auto labeled = semantic_atoms(u.lattice()).labels(u.lattice());
  std::sort(labeled.begin(), labeled.end());
  EXPECT_EQ(labeled, atoms);
}

TEST(F2, NilParts) {
  auto const& u = fixture("F2.json");
  for (int n : {1, 2, 4, 8}) {
    auto a = u.element_of(abelian_group(n));
    ASSERT_TRUE(a);
    EXPECT_EQ(u.name(nil_part(u, *a)), "T");
  }
  auto c2 = u.element_of(cyclic_monoid(2));
  ASSERT_TRUE(c2);
  EXPECT_EQ(u.name(nil_part(u, *c2)), "N_ω");
}

TEST(F2, LabeledJsonEvaluatesThroughTheLatticeReader) {
  auto const& u = fixture("F2.json");
  auto        l = lattice_from_json(universe_to_json(u));
  EXPECT_EQ(l.size(), u.size());
  EXPECT_EQ(defined_set(l, build("Cm", {0})).labels(l), std::vector<std::string>{"T"});
  EXPECT_EQ(defined_set(l, build("SL")).labels(l), std::vector<std::string>{"SL"});
  auto doc = universe_to_json(u);
  EXPECT_TRUE(doc["elements"][0].contains("labels"));
}

TEST(Lemma8, ZeroReducedHullIsStrictlyAbove) {
  auto const& u = fixture("lemma8.json");
  auto        x = u.at("X_{2,4}");
  auto        h = zr(u, x);
  EXPECT_TRUE(u.lattice().lt(x, h));
  EXPECT_TRUE(u.labels(h).is_zero_reduced);
  EXPECT_FALSE(u.labels(x).is_zero_reduced);
}

TEST(Lemma8, ParameterChecks) {
  auto const& u = fixture("lemma8.json");
  EXPECT_THROW(lemma8_check(u, 2, 2), ParamOutOfRange);
  EXPECT_THROW(lemma8_check(u, 1, 4), ParamOutOfRange);
  EXPECT_THROW(lemma8_check(u, 5, 4), NotInUniverse);
}

TEST(Lemma8, EqualityAndWitnesses) {
  auto const& u = fixture("lemma8.json");
  EXPECT_TRUE(lemma8_check(u, 3, 4).all_equal());
  EXPECT_TRUE(lemma8_check(u, 4, 5).all_equal());
  for (auto [n, m] : {std::pair{2, 4}, {2, 5}, {3, 5}}) {
    auto rep = lemma8_check(u, n, m);
    EXPECT_FALSE(rep.all_equal());
    EXPECT_TRUE(rep.witness_found) << n << "," << m;
  }
}
