#pragma once

#include <vector>

#include "lattice.hpp"

// Brute-force semantic checks. These never touch the formula machinery and
// serve as ground truth for it.

namespace comlat {

  // covers of the bottom element
  inline ElementSubset semantic_atoms(FiniteLattice const& l) {
    std::vector<ElementId> out;
    for (auto [a, b] : l.covers()) {
      if (a == l.bottom()) {
        out.push_back(b);
      }
    }
    return ElementSubset(l.size(), std::move(out));
  }

  // (x v y) ^ (y v z) ^ (z v x) = (x ^ y) v (y ^ z) v (z ^ x) for all y, z
  inline bool semantic_neutral(FiniteLattice const& l, ElementId x) {
    auto const n = static_cast<ElementId>(l.size());
    for (ElementId y = 0; y < n; ++y) {
      for (ElementId z = 0; z < n; ++z) {
        auto lhs = l.meet(l.meet(l.join(x, y), l.join(y, z)), l.join(z, x));
        auto rhs = l.join(l.join(l.meet(x, y), l.meet(y, z)), l.meet(z, x));
        if (lhs != rhs) {
          return false;
        }
      }
    }
    return true;
  }

  // x <= y implies x v (y ^ z) = y ^ (x v z)
  inline bool semantic_lower_modular(FiniteLattice const& l, ElementId x) {
    auto const n = static_cast<ElementId>(l.size());
    for (ElementId y = 0; y < n; ++y) {
      if (!l.leq(x, y)) {
        continue;
      }
      for (ElementId z = 0; z < n; ++z) {
        if (l.join(x, l.meet(y, z)) != l.meet(y, l.join(x, z))) {
          return false;
        }
      }
    }
    return true;
  }

  // the principal ideal of x is a chain
  inline bool semantic_chain_downset(FiniteLattice const& l, ElementId x) {
    std::vector<ElementId> below;
    l.down_set(x).for_each_set(
        [&](std::size_t a) { below.push_back(static_cast<ElementId>(a)); });
    for (std::size_t i = 0; i < below.size(); ++i) {
      for (std::size_t j = i + 1; j < below.size(); ++j) {
        if (!l.leq(below[i], below[j]) && !l.leq(below[j], below[i])) {
          return false;
        }
      }
    }
    return true;
  }

  inline ElementSubset semantic_minimal(FiniteLattice const& l,
                                        ElementSubset const& subset) {
    std::vector<ElementId> out;
    for (auto a : subset.ids()) {
      bool minimal = true;
      for (auto b : subset.ids()) {
        if (l.lt(b, a)) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        out.push_back(a);
      }
    }
    return ElementSubset(l.size(), std::move(out));
  }

  template <typename Pred>
  ElementSubset select(FiniteLattice const& l, Pred&& pred) {
    std::vector<ElementId> out;
    for (ElementId a = 0; a < l.size(); ++a) {
      if (pred(l, a)) {
        out.push_back(a);
      }
    }
    return ElementSubset(l.size(), std::move(out));
  }

}  // namespace comlat
