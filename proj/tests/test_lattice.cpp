#include <gtest/gtest.h>

#include "comlat/lattice.hpp"
#include "comlat/lattice_io.hpp"
#include "comlat/oracles.hpp"
#include "helpers.hpp"

using namespace comlat;
using namespace comlat::testing;

namespace {
  std::vector<std::string> labels_of(FiniteLattice const& l, ElementSubset const& s) {
    return s.labels(l);
  }
}  // namespace

TEST(BuildFromCovers, ThreeChain) {
  auto l = build_from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}});
  EXPECT_EQ(l.size(), 3u);
  EXPECT_EQ(l.label(l.bottom()), "a");
  EXPECT_EQ(l.label(l.top()), "c");
  EXPECT_TRUE(l.leq(0, 2));
  EXPECT_FALSE(l.leq(2, 0));
  EXPECT_EQ(l.meet(0, 2), 0u);
  EXPECT_EQ(l.join(0, 2), 2u);
}

TEST(BuildFromCovers, RejectsBowtie) {
  try {
    build_from_covers({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    FAIL() << "expected NotALattice";
  } catch (NotALattice const& e) {
    EXPECT_NE(std::string(e.what()).find("("), std::string::npos);
  }
}

TEST(BuildFromCovers, M3MeetsOfAtoms) {
  auto l = m3();
  EXPECT_EQ(l.meet(1, 2), l.bottom());
  EXPECT_EQ(l.meet(2, 3), l.bottom());
  EXPECT_EQ(l.join(1, 3), l.top());
}

TEST(BuildFromCovers, RejectsCycle) {
  EXPECT_THROW(build_from_covers({"a", "b"}, {{0, 1}, {1, 0}}), NotAPoset);
  EXPECT_THROW(build_from_covers({"a"}, {{0, 0}}), NotAPoset);
}

TEST(BuildFromCovers, RejectsDuplicateLabelsAndBadIds) {
  EXPECT_THROW(build_from_covers({"a", "a"}, {{0, 1}}), InputError);
  EXPECT_THROW(build_from_covers({"a", "b"}, {{0, 5}}), InputError);
  EXPECT_THROW(build_from_covers({}, {}), InputError);
}

TEST(BuildFromCovers, RedundantCoversAreDropped) {
  auto l = build_from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(l.covers().size(), 2u);
}

TEST(BuildFromCovers, DisconnectedPosetIsNotALattice) {
  EXPECT_THROW(build_from_covers({"a", "b"}, {}), NotALattice);
}

TEST(Lattice, SingleElement) {
  auto l = build_from_covers({"only"}, {});
  EXPECT_EQ(l.bottom(), l.top());
  EXPECT_EQ(semantic_atoms(l).size(), 0u);
}

TEST(Lattice, JoinWithBottomAndMeetOfAtoms) {
  auto l = m3();
  for (ElementId a = 0; a < l.size(); ++a) {
    EXPECT_EQ(l.join(a, l.bottom()), a);
    EXPECT_EQ(l.meet(a, l.top()), a);
  }
}

TEST(RandomLattice, Degenerate) {
  auto l = random_lattice(1, 1);
  EXPECT_GE(l.size(), 1u);
  EXPECT_LE(l.size(), 2u);
}

TEST(RandomLattice, Deterministic) {
  auto a = random_lattice(42, 6);
  auto b = random_lattice(42, 6);
  EXPECT_EQ(a.labels(), b.labels());
  EXPECT_EQ(a.covers(), b.covers());
}

TEST(RandomLattice, RejectsBadSize) {
  EXPECT_THROW(random_lattice(1, 0), InputError);
}

TEST(RandomLattice, PropertyAxiomsHold) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto l = random_lattice(seed, 2 + seed % 7);
    auto const n = static_cast<ElementId>(l.size());
    // rebuilding from the exported covers must succeed and agree
    auto again = build_from_covers(l.labels(), l.covers());
    EXPECT_EQ(again.covers(), l.covers());
    bool exhaustive = n <= 12;
    for (ElementId a = 0; a < n; ++a) {
      EXPECT_TRUE(l.leq(l.bottom(), a));
      EXPECT_TRUE(l.leq(a, l.top()));
      for (ElementId b = 0; b < n; b += exhaustive ? 1 : 3) {
        EXPECT_EQ(l.meet(a, b), l.meet(b, a));
        EXPECT_EQ(l.join(a, b), l.join(b, a));
        EXPECT_EQ(l.meet(a, l.join(a, b)), a);
        EXPECT_EQ(l.join(a, l.meet(a, b)), a);
        EXPECT_EQ(l.leq(a, b), l.meet(a, b) == a);
        for (ElementId c = 0; c < n; c += exhaustive ? 1 : 5) {
          EXPECT_EQ(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
          EXPECT_EQ(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
        }
      }
    }
  }
}

TEST(Oracles, Atoms) {
  EXPECT_EQ(labels_of(m3(), semantic_atoms(m3())),
            (std::vector<std::string>{"a", "b", "c"}));
  auto c = chain(3);
  EXPECT_EQ(labels_of(c, semantic_atoms(c)), (std::vector<std::string>{"c1"}));
}

TEST(Oracles, NeutralOnN5) {
  auto l = n5();
  auto s = select(l, semantic_neutral);
  EXPECT_EQ(labels_of(l, s), (std::vector<std::string>{"0", "1"}));
}

TEST(Oracles, NeutralInDistributiveLattice) {
  auto l = square();
  for (ElementId a = 0; a < l.size(); ++a) {
    EXPECT_TRUE(semantic_neutral(l, a));
  }
}

TEST(Oracles, BottomAndTopAlwaysNeutralAndLowerModular) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto l = random_lattice(seed, 5);
    EXPECT_TRUE(semantic_neutral(l, l.bottom()));
    EXPECT_TRUE(semantic_neutral(l, l.top()));
    EXPECT_TRUE(semantic_lower_modular(l, l.bottom()));
    EXPECT_TRUE(semantic_lower_modular(l, l.top()));
  }
}

TEST(Oracles, LowerModularOnN5) {
  auto l = n5();
  // a < c with b a complement of both: a v (c ^ b) = a but c ^ (a v b) = c
  EXPECT_FALSE(semantic_lower_modular(l, 1));
  EXPECT_TRUE(semantic_lower_modular(l, 2));
  EXPECT_TRUE(semantic_lower_modular(l, 3));
}

TEST(Oracles, ChainDownset) {
  auto l = m3();
  EXPECT_TRUE(semantic_chain_downset(l, 1));
  EXPECT_FALSE(semantic_chain_downset(l, l.top()));
  auto c = chain(5);
  for (ElementId a = 0; a < c.size(); ++a) {
    EXPECT_TRUE(semantic_chain_downset(c, a));
  }
}

TEST(Oracles, Minimal) {
  auto l   = m3();
  auto all = ElementSubset(l.size(), {0, 1, 2, 3, 4});
  EXPECT_EQ(semantic_minimal(l, all).ids(), (std::vector<ElementId>{0}));
  auto atoms = ElementSubset(l.size(), {1, 2, 3});
  EXPECT_EQ(semantic_minimal(l, atoms), atoms);
  EXPECT_TRUE(semantic_minimal(l, ElementSubset(l.size(), {})).empty());
}

TEST(Oracles, MinimalIsAntichainSubset) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto                   l = random_lattice(seed, 5);
    std::vector<ElementId> ids;
    for (ElementId a = 0; a < l.size(); a += 2) {
      ids.push_back(a);
    }
    ElementSubset s(l.size(), ids);
    auto          m = semantic_minimal(l, s);
    EXPECT_TRUE(m.is_subset_of(s));
    for (auto a : m.ids()) {
      for (auto b : m.ids()) {
        EXPECT_FALSE(l.lt(a, b));
      }
    }
  }
}

TEST(ElementSubset, RejectsForeignIds) {
  EXPECT_THROW(ElementSubset(3, {5}), InputError);
}

TEST(LatticeIO, JsonRoundTrip) {
  auto l   = n5();
  auto doc = lattice_to_json(l);
  auto r   = lattice_from_json(doc);
  EXPECT_EQ(r.labels(), l.labels());
  EXPECT_EQ(r.covers(), l.covers());
}

TEST(LatticeIO, SparseIdsAreRenumbered) {
  auto doc = nlohmann::json::parse(
      R"({"elements":[{"id":10,"label":"lo"},{"id":3,"label":"hi"}],"covers":[[10,3]]})");
  auto l = lattice_from_json(doc);
  EXPECT_EQ(l.label(l.bottom()), "lo");
  EXPECT_EQ(l.label(l.top()), "hi");
}

TEST(LatticeIO, MalformedJson) {
  EXPECT_THROW(lattice_from_json(nlohmann::json::parse(R"({"elements":[]})")),
               InputError);
  EXPECT_THROW(lattice_from_json(nlohmann::json::parse(
                   R"({"elements":[{"id":0}],"covers":[]})")),
               InputError);
  EXPECT_THROW(lattice_from_json(nlohmann::json::parse(
                   R"({"elements":[{"id":0,"label":"a"}],"covers":[[0,7]]})")),
               InputError);
}

TEST(LatticeIO, Dot) {
  auto text = to_dot(chain(2));
  EXPECT_NE(text.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(text.find("n0 -> n1"), std::string::npos);
  EXPECT_NE(text.find("label=\"c1\""), std::string::npos);
}
