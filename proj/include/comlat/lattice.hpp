#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"

namespace comlat {

  using ElementId = std::uint32_t;
  using Cover     = std::pair<ElementId, ElementId>;

  // A finite lattice with dense order, meet and join tables. Immutable once
  // built; the only way to get one is through build_from_covers, which
  // validates the lattice axioms.
  class FiniteLattice {
   public:
    FiniteLattice() = default;

    std::size_t size() const noexcept {
      return _labels.size();
    }

    std::string const& label(ElementId a) const {
      return _labels.at(a);
    }

    std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }

    bool leq(ElementId a, ElementId b) const noexcept {
      return _down[b].test(a);
    }

    bool lt(ElementId a, ElementId b) const noexcept {
      return a != b && leq(a, b);
    }

    ElementId meet(ElementId a, ElementId b) const noexcept {
      return _meet[a * size() + b];
    }

    ElementId join(ElementId a, ElementId b) const noexcept {
      return _join[a * size() + b];
    }

    ElementId bottom() const noexcept {
      return _bottom;
    }

    ElementId top() const noexcept {
      return _top;
    }

    // elements c with c <= a
    Bitset const& down_set(ElementId a) const noexcept {
      return _down[a];
    }

    std::vector<Cover> const& covers() const noexcept {
      return _covers;
    }

    std::optional<ElementId> find(std::string const& label) const {
      auto it = std::find(_labels.begin(), _labels.end(), label);
      if (it == _labels.end()) {
        return std::nullopt;
      }
      return static_cast<ElementId>(it - _labels.begin());
    }

    friend FiniteLattice build_from_covers(std::vector<std::string> labels,
                                           std::vector<Cover> const& covers);

   private:
    std::vector<std::string> _labels;
    std::vector<Bitset>      _down;
    std::vector<ElementId>   _meet;
    std::vector<ElementId>   _join;
    std::vector<Cover>       _covers;
    ElementId                _bottom = 0;
    ElementId                _top    = 0;
  };

  // A set of elements of a fixed lattice, kept sorted.
  class ElementSubset {
   public:
    ElementSubset() = default;
    ElementSubset(std::size_t universe, std::vector<ElementId> ids)
        : _universe(universe), _ids(std::move(ids)) {
      std::sort(_ids.begin(), _ids.end());
      _ids.erase(std::unique(_ids.begin(), _ids.end()), _ids.end());
      if (!_ids.empty() && _ids.back() >= _universe) {
        throw InputError("element id " + std::to_string(_ids.back())
                         + " is not an element of the lattice");
      }
    }

    static ElementSubset from_bits(Bitset const& bits) {
      std::vector<ElementId> ids;
      bits.for_each_set(
          [&](std::size_t i) { ids.push_back(static_cast<ElementId>(i)); });
      return ElementSubset(bits.size(), std::move(ids));
    }

    std::size_t universe_size() const noexcept {
      return _universe;
    }

    std::vector<ElementId> const& ids() const noexcept {
      return _ids;
    }

    std::size_t size() const noexcept {
      return _ids.size();
    }

    bool empty() const noexcept {
      return _ids.empty();
    }

    bool contains(ElementId a) const {
      return std::binary_search(_ids.begin(), _ids.end(), a);
    }

    bool is_subset_of(ElementSubset const& other) const {
      return std::includes(
          other._ids.begin(), other._ids.end(), _ids.begin(), _ids.end());
    }

    std::vector<std::string> labels(FiniteLattice const& lattice) const {
      std::vector<std::string> out;
      out.reserve(_ids.size());
      for (auto a : _ids) {
        out.push_back(lattice.label(a));
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    friend bool operator==(ElementSubset const&, ElementSubset const&)
        = default;

   private:
    std::size_t            _universe = 0;
    std::vector<ElementId> _ids;
  };

  namespace detail {
    inline std::string pair_text(std::vector<std::string> const& labels,
                                 std::size_t                     a,
                                 std::size_t                     b) {
      return "(" + labels[a] + ", " + labels[b] + ")";
    }

    // Index of the unique element of `candidates` whose down-set is all of
    // `candidates`, i.e. the greatest element of the candidate set.
    inline std::optional<ElementId>
    greatest_of(Bitset const& candidates, std::vector<Bitset> const& down) {
      auto const             want = candidates.count();
      std::optional<ElementId> found;
      candidates.for_each_set([&](std::size_t c) {
        if (!found && down[c].count() == want) {
          found = static_cast<ElementId>(c);
        }
      });
      return found;
    }
  }  // namespace detail

  // Validates the poset given by its Hasse diagram (covers meaning
  // first < second) and fills in the order, meet and join tables.
  inline FiniteLattice build_from_covers(std::vector<std::string> labels,
                                         std::vector<Cover> const& covers) {
    auto const n = labels.size();
    if (n == 0) {
      throw InputError("a lattice needs at least one element");
    }
    {
      std::set<std::string> seen;
      for (auto const& s : labels) {
        if (!seen.insert(s).second) {
          throw InputError("duplicate element label \"" + s + "\"");
        }
      }
    }
    std::vector<std::vector<ElementId>> succ(n);
    for (auto [a, b] : covers) {
      if (a >= n || b >= n) {
        throw InputError("cover references unknown element id");
      }
      if (a == b) {
        throw NotAPoset("cycle detected: " + labels[a] + " < " + labels[a]);
      }
      succ[a].push_back(b);
    }

    // up[a] = elements >= a, by DFS from every element
    std::vector<Bitset> up(n, Bitset(n));
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<ElementId> stack{static_cast<ElementId>(a)};
      up[a].set(a);
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : succ[v]) {
          if (w == a) {
            throw NotAPoset("cycle detected through " + labels[a]);
          }
          if (!up[a].test(w)) {
            up[a].set(w);
            stack.push_back(w);
          }
        }
      }
    }
    std::vector<Bitset> down(n, Bitset(n));
    for (std::size_t a = 0; a < n; ++a) {
      up[a].for_each_set([&](std::size_t b) { down[b].set(a); });
    }

    FiniteLattice l;
    l._meet.assign(n * n, 0);
    l._join.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        auto lower = down[a] & down[b];
        auto glb   = detail::greatest_of(lower, down);
        if (!glb) {
          throw NotALattice("no unique meet for pair "
                                + detail::pair_text(labels, a, b),
                            a,
                            b);
        }
        auto upper = up[a] & up[b];
        // least upper bound: the element whose up-set is all of `upper`
        auto lub = detail::greatest_of(upper, up);
        if (!lub) {
          throw NotALattice("no unique join for pair "
                                + detail::pair_text(labels, a, b),
                            a,
                            b);
        }
        l._meet[a * n + b] = l._meet[b * n + a] = *glb;
        l._join[a * n + b] = l._join[b * n + a] = *lub;
      }
    }
    ElementId bottom = 0;
    ElementId top    = 0;
    for (std::size_t a = 1; a < n; ++a) {
      bottom = l._meet[bottom * n + a];
      top    = l._join[top * n + a];
    }
    l._bottom = bottom;
    l._top    = top;
    l._labels = std::move(labels);
    l._down   = std::move(down);
    // keep only genuine covers, deduplicated and sorted
    std::set<Cover> hasse;
    for (std::size_t b = 0; b < n; ++b) {
      l._down[b].for_each_set([&](std::size_t a) {
        if (a == b) {
          return;
        }
        // a < b is a cover iff no c with a < c < b
        auto between = up[a] & l._down[b];
        if (between.count() == 2) {
          hasse.emplace(static_cast<ElementId>(a), static_cast<ElementId>(b));
        }
      });
    }
    l._covers.assign(hasse.begin(), hasse.end());
    return l;
  }

  // Builds the lattice of a poset given by its full order relation; the
  // Hasse diagram is extracted first.
  template <typename Leq>
  FiniteLattice build_from_order(std::vector<std::string> labels, Leq&& leq) {
    auto const         n = labels.size();
    std::vector<Cover> covers;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || !leq(a, b)) {
          continue;
        }
        bool is_cover = true;
        for (std::size_t c = 0; c < n && is_cover; ++c) {
          if (c != a && c != b && leq(a, c) && leq(c, b)) {
            is_cover = false;
          }
        }
        if (is_cover) {
          covers.emplace_back(static_cast<ElementId>(a),
                              static_cast<ElementId>(b));
        }
      }
    }
    return build_from_covers(std::move(labels), covers);
  }

  // Random closure system on {0, ..., ground_size - 1}: some random subsets
  // plus the full set, closed under intersection, ordered by inclusion.
  inline FiniteLattice random_lattice(std::uint64_t seed,
                                      std::size_t   ground_size) {
    if (ground_size == 0 || ground_size > 20) {
      throw InputError("random_lattice: ground_size must be in 1..20");
    }
    std::mt19937_64 rng(seed);
    auto const      full = (std::uint32_t{1} << ground_size) - 1;
    std::uniform_int_distribution<std::size_t> count_dist(1, 2 * ground_size);
    std::uniform_int_distribution<std::uint32_t> set_dist(0, full);

    std::set<std::uint32_t> family{full};
    auto const              draws = count_dist(rng);
    for (std::size_t i = 0; i < draws; ++i) {
      family.insert(set_dist(rng));
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::uint32_t> members(family.begin(), family.end());
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          grew |= family.insert(members[i] & members[j]).second;
        }
      }
    }
    std::vector<std::uint32_t> sets(family.begin(), family.end());
    std::stable_sort(sets.begin(), sets.end(), [](auto a, auto b) {
      return std::popcount(a) < std::popcount(b);
    });
    std::vector<std::string> labels;
    for (auto s : sets) {
      std::string text = "{";
      for (std::size_t i = 0; i < ground_size; ++i) {
        if ((s >> i) & 1U) {
          if (text.size() > 1) {
            text += ",";
          }
          text += std::to_string(i);
        }
      }
      labels.push_back(text + "}");
    }
    return build_from_order(std::move(labels), [&](std::size_t a, std::size_t b) {
      return (sets[a] & ~sets[b]) == 0;
    });
  }

}  // namespace comlat
