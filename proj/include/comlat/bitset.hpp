#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace comlat {

  // Fixed-size dynamic bitset. Bits past size() are kept zero so that
  // equality, hashing and popcount need no masking.
  class Bitset {
   public:
    Bitset() = default;
    explicit Bitset(std::size_t n, bool value = false)
        : _size(n), _words((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
      trim();
    }

    std::size_t size() const noexcept {
      return _size;
    }

    bool test(std::size_t i) const noexcept {
      return (_words[i >> 6] >> (i & 63)) & 1U;
    }

    void set(std::size_t i) noexcept {
      _words[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void set(std::size_t i, bool value) noexcept {
      if (value) {
        set(i);
      } else {
        reset(i);
      }
    }

    void reset(std::size_t i) noexcept {
      _words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    std::size_t count() const noexcept {
      std::size_t c = 0;
      for (auto w : _words) {
        c += static_cast<std::size_t>(std::popcount(w));
      }
      return c;
    }

    bool any() const noexcept {
      for (auto w : _words) {
        if (w != 0) {
          return true;
        }
      }
      return false;
    }

    bool none() const noexcept {
      return !any();
    }

    bool all() const noexcept {
      return count() == _size;
    }

    // true iff every bit of *this is also set in other
    bool is_subset_of(Bitset const& other) const noexcept {
      for (std::size_t i = 0; i < _words.size(); ++i) {
        if ((_words[i] & ~other._words[i]) != 0) {
          return false;
        }
      }
      return true;
    }

    // true iff some bit in [first, last) is set
    bool any_in(std::size_t first, std::size_t last) const noexcept {
      while (first < last && (first & 63) != 0) {
        if (test(first)) {
          return true;
        }
        ++first;
      }
      while (first + 64 <= last) {
        if (_words[first >> 6] != 0) {
          return true;
        }
        first += 64;
      }
      for (; first < last; ++first) {
        if (test(first)) {
          return true;
        }
      }
      return false;
    }

    // true iff every bit in [first, last) is set
    bool all_in(std::size_t first, std::size_t last) const noexcept {
      while (first < last && (first & 63) != 0) {
        if (!test(first)) {
          return false;
        }
        ++first;
      }
      while (first + 64 <= last) {
        if (_words[first >> 6] != ~std::uint64_t{0}) {
          return false;
        }
        first += 64;
      }
      for (; first < last; ++first) {
        if (!test(first)) {
          return false;
        }
      }
      return true;
    }

    Bitset& operator&=(Bitset const& other) noexcept {
      for (std::size_t i = 0; i < _words.size(); ++i) {
        _words[i] &= other._words[i];
      }
      return *this;
    }

    Bitset& operator|=(Bitset const& other) noexcept {
      for (std::size_t i = 0; i < _words.size(); ++i) {
        _words[i] |= other._words[i];
      }
      return *this;
    }

    Bitset& flip() noexcept {
      for (auto& w : _words) {
        w = ~w;
      }
      trim();
      return *this;
    }

    friend Bitset operator&(Bitset lhs, Bitset const& rhs) noexcept {
      lhs &= rhs;
      return lhs;
    }

    friend Bitset operator|(Bitset lhs, Bitset const& rhs) noexcept {
      lhs |= rhs;
      return lhs;
    }

    friend bool operator==(Bitset const&, Bitset const&) = default;

    template <typename F>
    void for_each_set(F&& f) const {
      for (std::size_t w = 0; w < _words.size(); ++w) {
        auto bits = _words[w];
        while (bits != 0) {
          auto b = static_cast<std::size_t>(std::countr_zero(bits));
          f(w * 64 + b);
          bits &= bits - 1;
        }
      }
    }

    std::size_t hash() const noexcept {
      std::size_t h = _size;
      for (auto w : _words) {
        h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6)
             + (h >> 2);
      }
      return h;
    }

    std::vector<std::uint64_t> const& words() const noexcept {
      return _words;
    }

   private:
    void trim() noexcept {
      if (_size % 64 != 0 && !_words.empty()) {
        _words.back() &= (std::uint64_t{1} << (_size % 64)) - 1;
      }
    }

    std::size_t                _size = 0;
    std::vector<std::uint64_t> _words;
  };

  struct BitsetHash {
    std::size_t operator()(Bitset const& b) const noexcept {
      return b.hash();
    }
  };

}  // namespace comlat
