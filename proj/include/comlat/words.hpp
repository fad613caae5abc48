#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"

namespace comlat {

  inline constexpr std::size_t kMaxLetters = 8;
  inline constexpr std::array<char, kMaxLetters> kLetterNames
      = {'x', 'y', 'z', 't', 'u', 'v', 'w', 's'};

  // A word of a free commutative semigroup, stored as its exponent vector
  // over the fixed alphabet x, y, z, t, u, v, w, s. The empty vector is
  // representable (it is useful as a context) but is not a word.
  class CommutativeWord {
   public:
    CommutativeWord() = default;

    static CommutativeWord letter(std::size_t i, unsigned power = 1) {
      CommutativeWord w;
      w.set(i, power);
      return w;
    }

    unsigned operator[](std::size_t i) const noexcept {
      return _e[i];
    }

    void set(std::size_t i, unsigned power) {
      if (i >= kMaxLetters) {
        throw AlphabetOverflow("at most " + std::to_string(kMaxLetters)
                               + " letters are supported");
      }
      if (power > 255) {
        throw InputError("exponent " + std::to_string(power) + " is too large");
      }
      _e[i] = static_cast<std::uint8_t>(power);
    }

    unsigned degree() const noexcept {
      unsigned d = 0;
      for (auto v : _e) {
        d += v;
      }
      return d;
    }

    bool empty() const noexcept {
      return degree() == 0;
    }

    // number of letters occurring
    std::size_t support_size() const noexcept {
      return static_cast<std::size_t>(
          std::count_if(_e.begin(), _e.end(), [](auto v) { return v != 0; }));
    }

    unsigned max_exponent() const noexcept {
      return *std::max_element(_e.begin(), _e.end());
    }

    // one past the highest letter index in use
    std::size_t span() const noexcept {
      for (std::size_t i = kMaxLetters; i-- > 0;) {
        if (_e[i] != 0) {
          return i + 1;
        }
      }
      return 0;
    }

    bool divides(CommutativeWord const& other) const noexcept {
      for (std::size_t i = 0; i < kMaxLetters; ++i) {
        if (_e[i] > other._e[i]) {
          return false;
        }
      }
      return true;
    }

    CommutativeWord& operator+=(CommutativeWord const& o) {
      for (std::size_t i = 0; i < kMaxLetters; ++i) {
        set(i, _e[i] + o._e[i]);
      }
      return *this;
    }

    // requires o to divide *this
    CommutativeWord& operator-=(CommutativeWord const& o) noexcept {
      for (std::size_t i = 0; i < kMaxLetters; ++i) {
        _e[i] = static_cast<std::uint8_t>(_e[i] - o._e[i]);
      }
      return *this;
    }

    friend CommutativeWord operator+(CommutativeWord a, CommutativeWord const& b) {
      a += b;
      return a;
    }

    friend CommutativeWord operator-(CommutativeWord a, CommutativeWord const& b) {
      a -= b;
      return a;
    }

    CommutativeWord scaled(unsigned k) const {
      CommutativeWord w;
      for (std::size_t i = 0; i < kMaxLetters; ++i) {
        w.set(i, _e[i] * k);
      }
      return w;
    }

    std::uint64_t key() const noexcept {
      std::uint64_t k = 0;
      for (std::size_t i = 0; i < kMaxLetters; ++i) {
        k |= std::uint64_t{_e[i]} << (8 * i);
      }
      return k;
    }

    std::array<std::uint8_t, kMaxLetters> const& exponents() const noexcept {
      return _e;
    }

    friend bool operator==(CommutativeWord const&, CommutativeWord const&) = default;
    friend auto operator<=>(CommutativeWord const&, CommutativeWord const&) = default;

   private:
    std::array<std::uint8_t, kMaxLetters> _e{};
  };

  // "x^3 y", letters in alphabet order
  inline std::string to_string(CommutativeWord const& w) {
    std::string out;
    for (std::size_t i = 0; i < kMaxLetters; ++i) {
      if (w[i] == 0) {
        continue;
      }
      if (!out.empty()) {
        out += ' ';
      }
      out += kLetterNames[i];
      if (w[i] > 1) {
        out += '^' + std::to_string(w[i]);
      }
    }
    return out.empty() ? "1" : out;
  }

  // u = v, or w = 0 (short for w x = x w = w with x a letter not in w)
  struct Identity {
    enum class Kind : std::uint8_t { balanced, zero };

    Kind            kind = Kind::balanced;
    CommutativeWord lhs;
    CommutativeWord rhs;  // unused for zero identities

    static Identity balanced(CommutativeWord u, CommutativeWord v) {
      if (u.empty() || v.empty()) {
        throw InputError("identity sides must be nonempty words");
      }
      return {Kind::balanced, u, v};
    }

    static Identity zero(CommutativeWord w) {
      if (w.empty()) {
        throw InputError("identity sides must be nonempty words");
      }
      return {Kind::zero, w, {}};
    }

    bool is_zero() const noexcept {
      return kind == Kind::zero;
    }

    friend bool operator==(Identity const&, Identity const&) = default;
  };

  inline std::string to_string(Identity const& id) {
    return to_string(id.lhs) + " = " + (id.is_zero() ? "0" : to_string(id.rhs));
  }

  // Under commutativity w = 0 is the single identity w x = w, x fresh.
  inline std::pair<CommutativeWord, CommutativeWord>
  balanced_form(Identity const& id) {
    if (!id.is_zero()) {
      return {id.lhs, id.rhs};
    }
    for (std::size_t i = 0; i < kMaxLetters; ++i) {
      if (id.lhs[i] == 0) {
        return {id.lhs + CommutativeWord::letter(i), id.lhs};
      }
    }
    throw AlphabetOverflow("no fresh letter left to expand " + to_string(id));
  }

  namespace detail {
    inline std::size_t letter_index(char c) {
      for (std::size_t i = 0; i < kMaxLetters; ++i) {
        if (kLetterNames[i] == c) {
          return i;
        }
      }
      return kMaxLetters;
    }
  }  // namespace detail

  // Juxtaposed letters with optional exponents: "x^3 y", "xy^2", "x x".
  inline CommutativeWord parse_word(std::string_view text) {
    CommutativeWord w;
    std::size_t     i = 0;
    auto skip         = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
    };
    skip();
    while (i < text.size()) {
      char const c = text[i];
      if (!std::isalpha(static_cast<unsigned char>(c))) {
        throw InputError("unexpected '" + std::string(1, c) + "' in word \""
                         + std::string(text) + "\"");
      }
      auto idx = detail::letter_index(c);
      if (idx == kMaxLetters) {
        throw AlphabetOverflow("letter '" + std::string(1, c)
                               + "' is outside the alphabet xyztuvws");
      }
      ++i;
      skip();
      unsigned power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          ++i;
        }
        if (start == i) {
          throw InputError("missing exponent in word \"" + std::string(text) + "\"");
        }
        power = static_cast<unsigned>(std::stoul(std::string(text.substr(start, i - start))));
        if (power == 0) {
          throw InputError("zero exponent in word \"" + std::string(text) + "\"");
        }
        skip();
      }
      w.set(idx, w[idx] + power);
    }
    if (w.empty()) {
      throw InputError("empty word");
    }
    return w;
  }

  // "x^3 y = x y^3" or "x^4 = 0"
  inline Identity parse_identity(std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos) {
      throw InputError("identity needs exactly one '=': \"" + std::string(text) + "\"");
    }
    auto lhs = text.substr(0, eq);
    auto rhs = text.substr(eq + 1);
    auto trimmed = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
      }
      return s;
    };
    if (trimmed(rhs) == "0") {
      return Identity::zero(parse_word(lhs));
    }
    if (trimmed(lhs) == "0") {
      return Identity::zero(parse_word(rhs));
    }
    return Identity::balanced(parse_word(lhs), parse_word(rhs));
  }

  // Renames the letters in use to x, y, z, ... keeping their order.
  inline std::pair<CommutativeWord, CommutativeWord>
  compact_letters(CommutativeWord const& u, CommutativeWord const& v) {
    CommutativeWord a;
    CommutativeWord b;
    std::size_t     next = 0;
    for (std::size_t i = 0; i < kMaxLetters; ++i) {
      if (u[i] == 0 && v[i] == 0) {
        continue;
      }
      a.set(next, u[i]);
      b.set(next, v[i]);
      ++next;
    }
    return {a, b};
  }

}  // namespace comlat
