#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "words.hpp"

namespace comlat {

  struct DerivationBounds {
    std::size_t letters = 3;
    std::size_t degree  = 12;
  };

  namespace detail {

    // Calls f(a) for every nonempty exponent vector a over the first
    // `letters` letters with a[i] <= caps[i] and degree(a) <= total.
    inline void for_each_vector(std::size_t                                letters,
                                std::array<unsigned, kMaxLetters> const&   caps,
                                unsigned                                   total,
                                std::function<void(CommutativeWord const&)> const& f) {
      CommutativeWord a;
      std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == letters) {
          if (!a.empty()) {
            f(a);
          }
          return;
        }
        unsigned const hi = std::min(caps[i], left);
        for (unsigned e = 0; e <= hi; ++e) {
          a.set(i, e);
          rec(i + 1, left - e);
        }
        a.set(i, 0);
      };
      rec(0, total);
    }

    // One orientation p -> q of a basis identity, letters classified by how
    // a substitution for them has to be enumerated.
    struct Rewrite {
      struct Slot {
        std::size_t letter;
        unsigned    p;
        unsigned    q;
      };
      std::vector<Slot> unit;         // p == q: a single letter suffices
      std::vector<Slot> constrained;  // p > 0, p != q
      std::vector<Slot> free;         // p == 0

      Rewrite(CommutativeWord const& p, CommutativeWord const& q) {
        for (std::size_t b = 0; b < kMaxLetters; ++b) {
          if (p[b] == 0 && q[b] == 0) {
            continue;
          }
          Slot s{b, p[b], q[b]};
          if (p[b] == q[b]) {
            unit.push_back(s);
          } else if (p[b] > 0) {
            constrained.push_back(s);
          } else {
            free.push_back(s);
          }
        }
      }
    };

  }  // namespace detail

  // Equational closure of a finite basis over commutative words, restricted
  // to words on at most `letters` letters of degree at most `degree`.
  // Words containing an instance of a zero basis word form one class.
  class DerivationClosure {
   public:
    static constexpr int kZero = -1;

    DerivationClosure(std::vector<Identity> const& basis, DerivationBounds bounds)
        : _bounds(bounds) {
      if (_bounds.letters > kMaxLetters) {
        throw AlphabetOverflow("derivation bounds exceed the alphabet");
      }
      for (auto const& id : basis) {
        if (id.is_zero()) {
          _zero_words.push_back(id.lhs);
        } else if (id.lhs != id.rhs) {
          detail::Rewrite there(id.lhs, id.rhs);
          detail::Rewrite back(id.rhs, id.lhs);
          if (!there.free.empty() || !back.free.empty()) {
            _global = true;
          }
          _rewrites.push_back(std::move(there));
          _rewrites.push_back(std::move(back));
        }
      }
      if (_global) {
        // Each edge only has to be found from one endpoint, so an
        // orientation that enumerates unconstrained substitutions is
        // dropped when its opposite is bounded by the word itself.
        std::vector<detail::Rewrite> kept;
        for (std::size_t i = 0; i < _rewrites.size(); i += 2) {
          auto& a = _rewrites[i];
          auto& b = _rewrites[i + 1];
          if (a.free.empty()) {
            kept.push_back(std::move(a));
          } else if (b.free.empty()) {
            kept.push_back(std::move(b));
          } else {
            kept.push_back(std::move(a));
            kept.push_back(std::move(b));
          }
        }
        _rewrites = std::move(kept);
      }
    }

    DerivationBounds const& bounds() const noexcept {
      return _bounds;
    }

    bool derives(Identity const& id) {
      auto [u0, v0] = balanced_form(id);
      auto [u, v]   = compact_letters(u0, v0);
      if (u == v) {
        return true;
      }
      return class_of(u) == class_of(v);
    }

    bool is_zero(CommutativeWord const& w) {
      return class_of(compact_letters(w, w).first) == kZero;
    }

    std::size_t explored() const noexcept {
      return _component.size();
    }

    // kZero, or the index of the bounded component containing w
    int class_of(CommutativeWord const& w) {
      if (obviously_zero(w)) {
        return kZero;
      }
      if (auto it = _component.find(w.key()); it != _component.end()) {
        return _is_zero[static_cast<std::size_t>(it->second)] ? kZero : it->second;
      }
      if (!in_bounds(w)) {
        throw BoundsTooSmall("word " + to_string(w) + " lies outside the bounds ("
                             + std::to_string(_bounds.letters) + " letters, degree "
                             + std::to_string(_bounds.degree) + ")");
      }
      if (_global) {
        build_global();
        auto it = _component.find(w.key());
        return _is_zero[static_cast<std::size_t>(it->second)] ? kZero : it->second;
      }
      return explore(w);
    }

   private:
    bool in_bounds(CommutativeWord const& w) const noexcept {
      return w.span() <= _bounds.letters && w.degree() <= _bounds.degree;
    }

    bool obviously_zero(CommutativeWord const& w) {
      if (_zero_words.empty()) {
        return false;
      }
      if (auto it = _zero_memo.find(w.key()); it != _zero_memo.end()) {
        return it->second;
      }
      bool found = false;
      for (auto const& z : _zero_words) {
        if (contains_instance(w, z)) {
          found = true;
          break;
        }
      }
      _zero_memo.emplace(w.key(), found);
      return found;
    }

    // Some substitution of letters for the letters of z gives a divisor of w.
    // Substituting longer words never helps, so letters suffice.
    static bool contains_instance(CommutativeWord const& w, CommutativeWord const& z) {
      std::vector<std::size_t> zl;
      for (std::size_t b = 0; b < kMaxLetters; ++b) {
        if (z[b] != 0) {
          zl.push_back(b);
        }
      }
      std::array<unsigned, kMaxLetters> used{};
      std::function<bool(std::size_t)> rec = [&](std::size_t k) {
        if (k == zl.size()) {
          return true;
        }
        for (std::size_t i = 0; i < kMaxLetters; ++i) {
          if (w[i] >= used[i] + z[zl[k]]) {
            used[i] += z[zl[k]];
            bool ok = rec(k + 1);
            used[i] -= z[zl[k]];
            if (ok) {
              return true;
            }
          }
        }
        return false;
      };
      return rec(0);
    }

    // Union-find over all words within bounds, for bases where searching
    // outward from a single word would have to guess inserted letters.
    void build_global() {
      if (!_component.empty()) {
        return;
      }
      std::vector<CommutativeWord>      words;
      std::array<unsigned, kMaxLetters> caps{};
      caps.fill(255);
      detail::for_each_vector(_bounds.letters, caps, static_cast<unsigned>(_bounds.degree),
                              [&](CommutativeWord const& w) { words.push_back(w); });
      std::unordered_map<std::uint64_t, std::size_t> index;
      for (std::size_t i = 0; i < words.size(); ++i) {
        index.emplace(words[i].key(), i);
      }
      std::size_t const        zero = words.size();
      std::vector<std::size_t> parent(words.size() + 1);
      for (std::size_t i = 0; i < parent.size(); ++i) {
        parent[i] = i;
      }
      auto find = [&](std::size_t a) {
        while (parent[a] != a) {
          parent[a] = parent[parent[a]];
          a         = parent[a];
        }
        return a;
      };
      auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
        }
      };
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (obviously_zero(words[i])) {
          unite(i, zero);
          continue;
        }
        for_each_neighbour(words[i], [&](CommutativeWord const& t) {
          if (obviously_zero(t)) {
            unite(i, zero);
          } else if (auto it = index.find(t.key()); it != index.end()) {
            unite(i, it->second);
          }
        });
      }
      std::unordered_map<std::size_t, int> ids;
      for (std::size_t i = 0; i < words.size(); ++i) {
        auto root        = find(i);
        auto [it, fresh] = ids.emplace(root, static_cast<int>(_is_zero.size()));
        if (fresh) {
          _is_zero.push_back(root == find(zero));
        }
        _component.emplace(words[i].key(), it->second);
      }
    }

    int explore(CommutativeWord const& start) {
      int const id = static_cast<int>(_is_zero.size());
      _is_zero.push_back(false);
      _component.emplace(start.key(), id);
      std::deque<CommutativeWord> queue{start};
      bool                        zero = false;
      while (!queue.empty()) {
        auto w = queue.front();
        queue.pop_front();
        for_each_neighbour(w, [&](CommutativeWord const& t) {
          if (obviously_zero(t)) {
            zero = true;
            return;
          }
          if (!in_bounds(t) || _component.contains(t.key())) {
            return;
          }
          _component.emplace(t.key(), id);
          queue.push_back(t);
        });
      }
      _is_zero[static_cast<std::size_t>(id)] = zero;
      return zero ? kZero : id;
    }

    template <typename F>
    void for_each_neighbour(CommutativeWord const& w, F&& f) const {
      for (auto const& rw : _rewrites) {
        apply(rw, w, f);
      }
    }

    template <typename F>
    void apply(detail::Rewrite const& rw, CommutativeWord const& w, F& f) const {
      std::size_t const L = _bounds.letters;
      CommutativeWord   consumed;
      CommutativeWord   added;

      std::function<void(std::size_t)> free_step = [&](std::size_t k) {
        if (k == rw.free.size()) {
          f(w - consumed + added);
          return;
        }
        auto const& s     = rw.free[k];
        auto const  base  = (w - consumed + added).degree();
        // in global mode both directions of such an edge are tried, so the
        // one that does not raise the degree suffices
        auto const  limit = _global ? std::min<std::size_t>(_bounds.degree, w.degree())
                                    : _bounds.degree;
        if (base + s.q > limit) {
          return;
        }
        std::array<unsigned, kMaxLetters> caps{};
        caps.fill(255);
        detail::for_each_vector(L, caps, (static_cast<unsigned>(limit) - base) / s.q,
                                [&](CommutativeWord const& a) {
                                  auto keep = added;
                                  added += a.scaled(s.q);
                                  free_step(k + 1);
                                  added = keep;
                                });
      };

      std::function<void(std::size_t)> constrained_step = [&](std::size_t k) {
        if (k == rw.constrained.size()) {
          free_step(0);
          return;
        }
        auto const&                       s = rw.constrained[k];
        std::array<unsigned, kMaxLetters> caps{};
        unsigned                          total = 0;
        for (std::size_t i = 0; i < L; ++i) {
          caps[i] = (w[i] - consumed[i]) / s.p;
          total += caps[i];
        }
        if (total == 0) {
          return;
        }
        detail::for_each_vector(L, caps, total, [&](CommutativeWord const& a) {
          auto keep_c = consumed;
          auto keep_a = added;
          consumed += a.scaled(s.p);
          added += a.scaled(s.q);
          constrained_step(k + 1);
          consumed = keep_c;
          added    = keep_a;
        });
      };

      std::function<void(std::size_t)> unit_step = [&](std::size_t k) {
        if (k == rw.unit.size()) {
          constrained_step(0);
          return;
        }
        auto const& s = rw.unit[k];
        for (std::size_t i = 0; i < L; ++i) {
          if (w[i] >= consumed[i] + s.p) {
            auto e = CommutativeWord::letter(i, s.p);
            consumed += e;
            added += e;
            unit_step(k + 1);
            consumed -= e;
            added -= e;
          }
        }
      };

      unit_step(0);
    }

    DerivationBounds                        _bounds;
    bool                                    _global = false;
    std::vector<detail::Rewrite>            _rewrites;
    std::vector<CommutativeWord>            _zero_words;
    std::unordered_map<std::uint64_t, int>  _component;
    std::vector<bool>                       _is_zero;
    std::unordered_map<std::uint64_t, bool> _zero_memo;
  };

  // Whether the basis derives the identity, searching only within bounds.
  inline bool bfs_consequence(std::vector<Identity> const& basis,
                              Identity const&              identity,
                              DerivationBounds             bounds) {
    DerivationClosure closure(basis, bounds);
    return closure.derives(identity);
  }

}  // namespace comlat
