#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "derivation.hpp"
#include "errors.hpp"
#include "words.hpp"

namespace comlat {

  enum class VarietyKind {
    trivial,
    com_top,
    abelian_group,  // A_n: x^n y = y
    cyclic_monoid,  // C_m: x^m = x^{m+1}
    nil_d,          // D_k: x^k = 0
    nil_n,          // N_k: x^2 = 0, x_1 ... x_k = 0
    nil_n3c,        // xyz = 0
    custom,         // given by a finite basis
    zr_hull,        // 0-reduced hull of `parts[0]`
    join
  };

  // Description of a commutative semigroup variety that supports deciding
  // identities. Closed forms are used where available; custom bases go
  // through a derivation closure, shared between copies.
  class VarietyDescriptor {
   public:
    VarietyKind kind() const noexcept {
      return _kind;
    }

    int param() const noexcept {
      return _param;
    }

    std::vector<VarietyDescriptor> const& parts() const noexcept {
      return _parts;
    }

    std::string const& name() const noexcept {
      return _name;
    }

    VarietyDescriptor& rename(std::string name) {
      _name = std::move(name);
      return *this;
    }

    // A finite basis of identities (up to commutativity).
    std::vector<Identity> basis() const;

    bool satisfies(Identity const& id) const;

    friend VarietyDescriptor trivial_variety();
    friend VarietyDescriptor com_top();
    friend VarietyDescriptor abelian_group(int n);
    friend VarietyDescriptor cyclic_monoid(int m);
    friend VarietyDescriptor nil_d(int k);
    friend VarietyDescriptor nil_n(int k);
    friend VarietyDescriptor nil_n3c();
    friend VarietyDescriptor custom_variety(std::vector<Identity>,
                                            std::string,
                                            std::optional<DerivationBounds>);
    friend VarietyDescriptor zr_hull(VarietyDescriptor inner);
    friend VarietyDescriptor join_of(std::vector<VarietyDescriptor> parts);

   private:
    bool satisfies_balanced(CommutativeWord const& u, CommutativeWord const& v) const;

    VarietyKind                        _kind  = VarietyKind::trivial;
    int                                _param = 0;
    std::string                        _name;
    std::vector<Identity>              _basis;
    std::vector<VarietyDescriptor>     _parts;
    std::shared_ptr<DerivationClosure> _closure;
  };

  inline VarietyDescriptor trivial_variety() {
    VarietyDescriptor d;
    d._kind = VarietyKind::trivial;
    d._name = "T";
    return d;
  }

  inline VarietyDescriptor com_top() {
    VarietyDescriptor d;
    d._kind = VarietyKind::com_top;
    d._name = "COM";
    return d;
  }

  inline VarietyDescriptor abelian_group(int n) {
    if (n < 1) {
      throw ParamOutOfRange("group exponent must be at least 1");
    }
    VarietyDescriptor d;
    d._kind  = VarietyKind::abelian_group;
    d._param = n;
    d._name  = n == 1 ? "T" : "A_" + std::to_string(n);
    return d;
  }

  inline VarietyDescriptor cyclic_monoid(int m) {
    if (m < 0) {
      throw ParamOutOfRange("cyclic monoid index must be non-negative");
    }
    VarietyDescriptor d;
    d._kind  = VarietyKind::cyclic_monoid;
    d._param = m;
    d._name  = m == 0 ? "T" : m == 1 ? "SL" : "C_" + std::to_string(m);
    return d;
  }

  inline VarietyDescriptor nil_d(int k) {
    if (k < 1) {
      throw ParamOutOfRange("nil index must be at least 1");
    }
    VarietyDescriptor d;
    d._kind  = VarietyKind::nil_d;
    d._param = k;
    d._name  = k == 1 ? "T" : k == 2 ? "N_ω" : "D_" + std::to_string(k);
    return d;
  }

  inline VarietyDescriptor nil_n(int k) {
    if (k < 1) {
      throw ParamOutOfRange("nil index must be at least 1");
    }
    VarietyDescriptor d;
    d._kind  = VarietyKind::nil_n;
    d._param = k;
    d._name  = k == 1 ? "T" : k == 2 ? "ZM" : "N_" + std::to_string(k);
    return d;
  }

  inline VarietyDescriptor nil_n3c() {
    VarietyDescriptor d;
    d._kind = VarietyKind::nil_n3c;
    d._name = "N_3^c";
    return d;
  }

  // Without explicit bounds, a basis whose balanced identities keep the set
  // of letters and which contains some x^m = 0 is decided exactly: every
  // word on L letters of degree above L(m-1) is zero.
  inline VarietyDescriptor custom_variety(std::vector<Identity>           basis,
                                          std::string                     name,
                                          std::optional<DerivationBounds> bounds
                                          = std::nullopt) {
    if (basis.empty()) {
      throw InputError("a custom variety needs a nonempty basis");
    }
    if (!bounds) {
      unsigned nil_index      = 0;
      bool     keeps_letters  = true;
      unsigned max_degree     = 0;
      for (auto const& id : basis) {
        max_degree = std::max({max_degree, id.lhs.degree(), id.rhs.degree()});
        if (id.is_zero()) {
          if (id.lhs.support_size() == 1
              && (nil_index == 0 || id.lhs.degree() < nil_index)) {
            nil_index = id.lhs.degree();
          }
          continue;
        }
        for (std::size_t i = 0; i < kMaxLetters; ++i) {
          if ((id.lhs[i] == 0) != (id.rhs[i] == 0)) {
            keeps_letters = false;
          }
        }
      }
      if (keeps_letters && nil_index > 0) {
        bounds = DerivationBounds{kMaxLetters, kMaxLetters * (nil_index - 1)};
      } else {
        bounds = DerivationBounds{3, max_degree + 4};
      }
    }
    VarietyDescriptor d;
    d._kind    = VarietyKind::custom;
    d._name    = std::move(name);
    d._closure = std::make_shared<DerivationClosure>(basis, *bounds);
    d._basis   = std::move(basis);
    return d;
  }

  inline VarietyDescriptor zr_hull(VarietyDescriptor inner) {
    VarietyDescriptor d;
    d._kind = VarietyKind::zr_hull;
    d._name = "ZR(" + inner.name() + ")";
    d._parts.push_back(std::move(inner));
    return d;
  }

  inline VarietyDescriptor join_of(std::vector<VarietyDescriptor> parts) {
    if (parts.empty()) {
      return trivial_variety();
    }
    if (parts.size() == 1) {
      return parts.front();
    }
    VarietyDescriptor d;
    d._kind = VarietyKind::join;
    for (auto const& p : parts) {
      d._name += (d._name.empty() ? "" : "∨") + p.name();
    }
    d._parts = std::move(parts);
    return d;
  }

  namespace detail {
    inline CommutativeWord product_of_letters(std::size_t k) {
      CommutativeWord w;
      for (std::size_t i = 0; i < k; ++i) {
        w.set(i, 1);
      }
      return w;
    }
  }  // namespace detail

  inline std::vector<Identity> VarietyDescriptor::basis() const {
    using W          = CommutativeWord;
    auto const x     = W::letter(0);
    auto const y     = W::letter(1);
    auto const power = [](unsigned k) { return W::letter(0, k); };
    switch (_kind) {
      case VarietyKind::trivial:
        return {Identity::balanced(x + y, y)};
      case VarietyKind::com_top:
        return {};
      case VarietyKind::abelian_group:
        return {Identity::balanced(power(static_cast<unsigned>(_param)) + y, y)};
      case VarietyKind::cyclic_monoid:
        if (_param == 0) {
          return {Identity::balanced(x + y, y)};
        }
        return {Identity::balanced(power(static_cast<unsigned>(_param)),
                                   power(static_cast<unsigned>(_param) + 1))};
      case VarietyKind::nil_d:
        return {Identity::zero(power(static_cast<unsigned>(_param)))};
      case VarietyKind::nil_n:
        if (_param == 1) {
          return {Identity::zero(x)};
        }
        return {Identity::zero(power(2)),
                Identity::zero(detail::product_of_letters(static_cast<std::size_t>(_param)))};
      case VarietyKind::nil_n3c:
        return {Identity::zero(detail::product_of_letters(3))};
      case VarietyKind::custom:
        return _basis;
      case VarietyKind::zr_hull:
      case VarietyKind::join:
        throw InputError("no finite basis is stored for " + _name);
    }
    return {};
  }

  inline bool VarietyDescriptor::satisfies(Identity const& id) const {
    if (_kind == VarietyKind::custom) {
      return _closure->derives(id);
    }
    auto [u, v] = balanced_form(id);
    return satisfies_balanced(u, v);
  }

  inline bool VarietyDescriptor::satisfies_balanced(CommutativeWord const& u,
                                                    CommutativeWord const& v) const {
    auto const either_equal_or = [&](auto&& is_zero) {
      return u == v || (is_zero(u) && is_zero(v));
    };
    switch (_kind) {
      case VarietyKind::trivial:
        return true;
      case VarietyKind::com_top:
        return u == v;
      case VarietyKind::abelian_group:
        for (std::size_t i = 0; i < kMaxLetters; ++i) {
          if ((static_cast<int>(u[i]) - static_cast<int>(v[i])) % _param != 0) {
            return false;
          }
        }
        return true;
      case VarietyKind::cyclic_monoid: {
        if (_param == 0) {
          return true;
        }
        auto const m = static_cast<unsigned>(_param);
        for (std::size_t i = 0; i < kMaxLetters; ++i) {
          if (std::min(u[i], m) != std::min(v[i], m)) {
            return false;
          }
        }
        return true;
      }
      case VarietyKind::nil_d:
        return either_equal_or([&](CommutativeWord const& w) {
          return w.max_exponent() >= static_cast<unsigned>(_param);
        });
      case VarietyKind::nil_n:
        return either_equal_or([&](CommutativeWord const& w) {
          return w.max_exponent() >= 2 || w.degree() >= static_cast<unsigned>(_param);
        });
      case VarietyKind::nil_n3c:
        return either_equal_or([](CommutativeWord const& w) { return w.degree() >= 3; });
      case VarietyKind::custom:
        return _closure->derives(Identity::balanced(u, v));
      case VarietyKind::zr_hull:
        return either_equal_or([&](CommutativeWord const& w) {
          return _parts.front().satisfies(Identity::zero(w));
        });
      case VarietyKind::join:
        return std::all_of(_parts.begin(), _parts.end(), [&](VarietyDescriptor const& p) {
          return p.satisfies_balanced(u, v);
        });
    }
    return false;
  }

  inline bool satisfies(VarietyDescriptor const& d, Identity const& id) {
    return d.satisfies(id);
  }

  // X_{n,m}: x^m = 0 and x^{n+1} y = x y^{n+1}
  inline VarietyDescriptor x_variety(int n, int m) {
    if (n < 1 || m < 2) {
      throw ParamOutOfRange("X_{n,m} needs n >= 1 and m >= 2");
    }
    using W = CommutativeWord;
    auto const un = static_cast<unsigned>(n);
    return custom_variety({Identity::zero(W::letter(0, static_cast<unsigned>(m))),
                           Identity::balanced(W::letter(0, un + 1) + W::letter(1),
                                              W::letter(0) + W::letter(1, un + 1))},
                          "X_{" + std::to_string(n) + "," + std::to_string(m) + "}");
  }

}  // namespace comlat
