#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "variety.hpp"
#include "words.hpp"

namespace comlat {

  // Degree bounds of the layers of the identity space:
  // A: at most 2 letters, B: at most 5 letters, C: at most 3 letters,
  // S: at most 3 letters with one side of degree at most 3 (off when 0).
  struct SpaceBounds {
    unsigned dA = 14;
    unsigned dB = 6;
    unsigned dC = 10;
    unsigned dS = 0;

    SpaceBounds raised(unsigned k) const {
      return {dA + k, dB + k, dC + k, dS == 0 ? 0 : dS + k};
    }

    friend bool operator==(SpaceBounds const&, SpaceBounds const&) = default;
  };

  using IdentityProfile = Bitset;

  namespace detail {
    struct PairKeyHash {
      std::size_t operator()(std::pair<std::uint64_t, std::uint64_t> const& k) const noexcept {
        return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
      }
    };
  }  // namespace detail

  // Representative of u = v up to renaming letters and swapping sides:
  // letter columns (u_i, v_i) sorted decreasingly, then the smaller of the
  // two side orders.
  inline std::pair<CommutativeWord, CommutativeWord>
  canonical_identity(CommutativeWord const& u, CommutativeWord const& v) {
    using Column = std::pair<unsigned, unsigned>;
    std::vector<Column> cols;
    for (std::size_t i = 0; i < kMaxLetters; ++i) {
      if (u[i] != 0 || v[i] != 0) {
        cols.emplace_back(u[i], v[i]);
      }
    }
    auto assemble = [](std::vector<Column> c) {
      std::sort(c.begin(), c.end(), std::greater<>{});
      std::pair<CommutativeWord, CommutativeWord> out;
      for (std::size_t i = 0; i < c.size(); ++i) {
        out.first.set(i, c[i].first);
        out.second.set(i, c[i].second);
      }
      return out;
    };
    auto a = assemble(cols);
    for (auto& c : cols) {
      std::swap(c.first, c.second);
    }
    auto b = assemble(cols);
    return std::min(a, b);
  }

  // A finite set of identities, closed under renaming, on which varieties
  // are compared.
  class IdentitySpace {
   public:
    explicit IdentitySpace(SpaceBounds bounds = {}) : _bounds(bounds) {
      add_layer(2, bounds.dA, bounds.dA);
      add_layer(5, bounds.dB, bounds.dB);
      add_layer(3, bounds.dC, bounds.dC);
      if (bounds.dS > 0) {
        add_layer(3, 3, bounds.dS);
      }
    }

    SpaceBounds const& bounds() const noexcept {
      return _bounds;
    }

    std::size_t size() const noexcept {
      return _ids.size();
    }

    std::pair<CommutativeWord, CommutativeWord> const& at(std::size_t i) const {
      return _ids.at(i);
    }

    Identity identity(std::size_t i) const {
      return Identity::balanced(_ids.at(i).first, _ids.at(i).second);
    }

    std::optional<std::size_t> index_of(Identity const& id) const {
      auto [u, v] = balanced_form(id);
      auto c      = canonical_identity(u, v);
      auto it     = _index.find({c.first.key(), c.second.key()});
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    bool contains(Identity const& id) const {
      return index_of(id).has_value();
    }

    IdentityProfile profile(VarietyDescriptor const& d) const {
      IdentityProfile p(_ids.size());
      for (std::size_t i = 0; i < _ids.size(); ++i) {
        if (d.satisfies(Identity::balanced(_ids[i].first, _ids[i].second))) {
          p.set(i);
        }
      }
      return p;
    }

   private:
    void add_layer(std::size_t letters, unsigned du, unsigned dv) {
      std::vector<std::pair<unsigned, unsigned>> columns;
      for (unsigned a = 0; a <= du; ++a) {
        for (unsigned b = 0; b <= dv; ++b) {
          if (a + b > 0) {
            columns.emplace_back(a, b);
          }
        }
      }
      std::sort(columns.begin(), columns.end(), std::greater<>{});
      CommutativeWord u;
      CommutativeWord v;
      std::function<void(std::size_t, std::size_t, unsigned, unsigned)> rec
          = [&](std::size_t depth, std::size_t from, unsigned su, unsigned sv) {
              if (su > 0 && sv > 0) {
                insert(u, v);
              }
              if (depth == letters) {
                return;
              }
              for (std::size_t c = from; c < columns.size(); ++c) {
                auto [a, b] = columns[c];
                if (su + a > du || sv + b > dv) {
                  continue;
                }
                u.set(depth, a);
                v.set(depth, b);
                rec(depth + 1, c, su + a, sv + b);
              }
              u.set(depth, 0);
              v.set(depth, 0);
            };
      rec(0, 0, 0, 0);
    }

    void insert(CommutativeWord const& u, CommutativeWord const& v) {
      auto c = canonical_identity(u, v);
      auto [it, fresh]
          = _index.emplace(std::pair{c.first.key(), c.second.key()}, _ids.size());
      if (fresh) {
        _ids.push_back(c);
      }
    }

    SpaceBounds _bounds;
    std::vector<std::pair<CommutativeWord, CommutativeWord>> _ids;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>,
                       std::size_t,
                       detail::PairKeyHash>
        _index;
  };

  inline IdentityProfile profile(VarietyDescriptor const& d, IdentitySpace const& space) {
    return space.profile(d);
  }

}  // namespace comlat
