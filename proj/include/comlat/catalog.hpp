#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "eval.hpp"
#include "formula.hpp"
#include "lattice.hpp"

// Named formulas of the lattice language, with nested references inlined.
// Every builder starts its own counter for bound variables, so printed
// output is deterministic: the top-level free variable is x (and y for the
// two binary entries), bound variables are y1, z1, y2, ...

namespace comlat {

  namespace detail {
    class Names {
     public:
      std::string fresh(std::string const& base) {
        return base + std::to_string(++_counters[base]);
      }

     private:
      std::map<std::string, int> _counters;
    };

    inline std::string const& variable_of(Term const& t, char const* entry) {
      if (t->kind != TermKind::variable) {
        throw InputError(std::string(entry) + " needs a variable argument");
      }
      return t->name;
    }
  }  // namespace detail

  namespace formulas {
    using detail::Names;

    inline Formula A(Names& n, Term const& x) {
      auto const& xv = detail::variable_of(x, "A");
      auto        y  = var(n.fresh("y"));
      auto        z  = var(n.fresh("z"));
      return exists(y->name, conj(forall(z->name, leq(y, z)), min(xv, neq(x, y))));
    }

    inline Formula Neut(Names& n, Term const& x) {
      auto y   = var(n.fresh("y"));
      auto z   = var(n.fresh("z"));
      auto lhs = meet(meet(join(x, y), join(y, z)), join(z, x));
      auto rhs = join(join(meet(x, y), meet(y, z)), meet(z, x));
      return forall({y->name, z->name}, eq(lhs, rhs));
    }

    inline Formula Ch(Names& n, Term const& x) {
      auto y = var(n.fresh("y"));
      auto z = var(n.fresh("z"));
      return forall({y->name, z->name},
                    implies(conj(leq(y, x), leq(z, x)),
                            disj(leq(y, z), leq(z, y))));
    }

    inline Formula SL(Names& n, Term const& x) {
      auto a  = A(n, x);
      auto ne = Neut(n, x);
      auto y  = var(n.fresh("y"));
      return conj({a,
                   ne,
                   forall(y->name,
                          implies(conj(Ch(n, y), leq(x, y)), eq(x, y)))});
    }

    inline Formula ZM(Names& n, Term const& x) {
      auto a  = A(n, x);
      auto ne = Neut(n, x);
      auto y  = var(n.fresh("y"));
      return conj({a, ne, exists(y->name, conj(Ch(n, y), lt(x, y)))});
    }

    inline Formula GrA(Names& n, Term const& x) {
      auto a  = A(n, x);
      auto ne = Neut(n, x);
      auto y  = var(n.fresh("y"));
      return conj({a, negation(ne), exists(y->name, conj(Ch(n, y), lt(x, y)))});
    }

    // forall y (A(y) and y <= x -> P(y))
    template <typename P>
    Formula atoms_below(Names& n, Term const& x, P&& p) {
      auto y    = var(n.fresh("y"));
      auto atom = A(n, y);
      return forall(y->name, implies(conj(atom, leq(y, x)), p(y)));
    }

    inline Formula Gr(Names& n, Term const& x) {
      return atoms_below(n, x, [&](Term const& y) { return GrA(n, y); });
    }

    inline Formula Comb(Names& n, Term const& x) {
      return atoms_below(
          n, x, [&](Term const& y) { return negation(GrA(n, y)); });
    }

    inline Formula Nil(Names& n, Term const& x) {
      return atoms_below(n, x, [&](Term const& y) { return ZM(n, y); });
    }

    inline Formula LMod(Names& n, Term const& x) {
      auto y = var(n.fresh("y"));
      auto z = var(n.fresh("z"));
      return forall({y->name, z->name},
                    implies(leq(x, y),
                            eq(join(x, meet(y, z)), meet(y, join(x, z)))));
    }

    inline Formula ZeroRed(Names& n, Term const& x) {
      auto nil = Nil(n, x);
      return conj(nil, LMod(n, x));
    }

    inline Formula Per(Names& n, Term const& x) {
      auto y = var(n.fresh("y"));
      return exists(y->name, lt(x, y));
    }

    inline Formula NilPart(Names& n, Term const& x, Term const& y) {
      auto per = Per(n, x);
      auto nil = Nil(n, y);
      auto z   = var(n.fresh("z"));
      auto nz  = Nil(n, z);
      return conj({per,
                   leq(y, x),
                   nil,
                   forall(z->name, implies(conj(leq(z, x), nz), leq(z, y)))});
    }

    inline Formula ZR(Names& n, Term const& x, Term const& y) {
      auto zr = ZeroRed(n, y);
      auto z  = var(n.fresh("z"));
      auto zz = ZeroRed(n, z);
      return conj({zr,
                   leq(x, y),
                   forall(z->name, implies(conj(zz, leq(x, z)), leq(y, z)))});
    }

    inline Formula AllCm(Names& n, Term const& x) {
      auto comb = Comb(n, x);
      auto y    = var(n.fresh("y"));
      auto z    = var(n.fresh("z"));
      auto nil  = Nil(n, y);
      return conj(comb,
                  forall({y->name, z->name},
                         implies(conj(nil, eq(x, join(y, z))), eq(x, z))));
    }

    inline Formula Cm(Names& n, Term const& x, int m) {
      auto const& xv  = detail::variable_of(x, "Cm");
      auto        all = AllCm(n, x);
      if (m == 0) {
        return min(xv, all);
      }
      auto y = var(n.fresh("y"));
      auto c = Cm(n, y, m - 1);
      return min(xv, conj(all, exists(y->name, conj(c, lt(y, x)))));
    }

    inline Formula Dm(Names& n, Term const& x, int m) {
      auto y = var(n.fresh("y"));
      auto c = Cm(n, y, m);
      return exists(y->name, conj(c, NilPart(n, y, x)));
    }

    inline Formula AGe(Names& n, Term const& x, int t) {
      int const m  = t + 1;
      auto      gr = Gr(n, x);
      auto      y  = var(n.fresh("y"));
      auto      z  = var(n.fresh("z"));
      auto      w  = var(n.fresh("t"));
      auto      d  = Dm(n, y, m);
      auto      np = NilPart(n, join(x, z), w);
      auto      zr = ZR(n, z, w);
      return conj(gr,
                  forall({y->name, z->name, w->name},
                         implies(conj({d, leq(z, y), np}), zr)));
    }

    inline Formula An(Names& n, Term const& x, int k) {
      if (k == 1) {
        auto y = var(n.fresh("y"));
        return forall(y->name, leq(x, y));
      }
      auto ge = AGe(n, x, k);
      return conj(ge, negation(AGe(n, x, k + 1)));
    }

    inline Formula MonoidVar(Names& n, Term const& x, int k, int m) {
      auto y  = var(n.fresh("y"));
      auto z  = var(n.fresh("z"));
      auto an = An(n, y, k);
      auto cm = Cm(n, z, m);
      return exists({y->name, z->name}, conj({an, cm, eq(x, join(y, z))}));
    }
  }  // namespace formulas

  struct ParamSpec {
    std::string name;
    int         min_value;
  };

  struct CatalogEntry {
    std::string                                      name;
    std::vector<ParamSpec>                           params;
    std::size_t                                      arity;
    std::string                                      shape;
    std::function<Formula(std::vector<int> const&)> builder;
  };

  inline std::vector<CatalogEntry> const& catalog() {
    using namespace formulas;
    static std::vector<CatalogEntry> const entries = [] {
      auto x = var("x");
      auto y = var("y");
      auto unary = [x](Formula (*f)(Names&, Term const&)) {
        return [x, f](std::vector<int> const&) {
          Names n;
          return f(n, x);
        };
      };
      std::vector<CatalogEntry> out;
      out.push_back({"A", {}, 1, "exists y (forall z (y <= z) and min x { x != y })", unary(A)});
      out.push_back({"Neut", {}, 1, "(x|y)&(y|z)&(z|x) = (x&y)|(y&z)|(z&x) for all y, z", unary(Neut)});
      out.push_back({"Ch", {}, 1, "y <= x and z <= x -> y <= z or z <= y", unary(Ch)});
      out.push_back({"SL", {}, 1, "A(x) and Neut(x) and forall y (Ch(y) and x <= y -> x = y)", unary(SL)});
      out.push_back({"ZM", {}, 1, "A(x) and Neut(x) and exists y (Ch(y) and x < y)", unary(ZM)});
      out.push_back({"GrA", {}, 1, "A(x) and not Neut(x) and exists y (Ch(y) and x < y)", unary(GrA)});
      out.push_back({"Gr", {}, 1, "forall y (A(y) and y <= x -> GrA(y))", unary(Gr)});
      out.push_back({"Comb", {}, 1, "forall y (A(y) and y <= x -> not GrA(y))", unary(Comb)});
      out.push_back({"Nil", {}, 1, "forall y (A(y) and y <= x -> ZM(y))", unary(Nil)});
      out.push_back({"LMod", {}, 1, "x <= y -> x|(y&z) = y&(x|z) for all y, z", unary(LMod)});
      out.push_back({"ZeroRed", {}, 1, "Nil(x) and LMod(x)", unary(ZeroRed)});
      out.push_back({"Per", {}, 1, "exists y (x < y)", unary(Per)});
      out.push_back({"NilPart", {}, 2,
                     "Per(x) and y <= x and Nil(y) and forall z (z <= x and Nil(z) -> z <= y)",
                     [x, y](std::vector<int> const&) {
                       Names n;
                       return NilPart(n, x, y);
                     }});
      out.push_back({"ZR", {}, 2,
                     "ZeroRed(y) and x <= y and forall z (ZeroRed(z) and x <= z -> y <= z)",
                     [x, y](std::vector<int> const&) {
                       Names n;
                       return ZR(n, x, y);
                     }});
      out.push_back({"AllCm", {}, 1,
                     "Comb(x) and forall y,z (Nil(y) and x = y|z -> x = z)",
                     unary(AllCm)});
      out.push_back({"Cm", {{"m", 0}}, 1,
                     "min x { AllCm(x) } for m = 0, else min x { AllCm(x) and exists y (Cm[m-1](y) and y < x) }",
                     [x](std::vector<int> const& p) {
                       Names n;
                       return Cm(n, x, p[0]);
                     }});
      out.push_back({"Dm", {{"m", 1}}, 1, "exists y (Cm[m](y) and NilPart(y, x))",
                     [x](std::vector<int> const& p) {
                       Names n;
                       return Dm(n, x, p[0]);
                     }});
      out.push_back({"AGe", {{"t", 2}}, 1,
                     "Gr(x) and forall y,z,t (Dm[t+1](y) and z <= y and NilPart(x|z, t) -> ZR(z, t))",
                     [x](std::vector<int> const& p) {
                       Names n;
                       return AGe(n, x, p[0]);
                     }});
      out.push_back({"An", {{"n", 1}}, 1,
                     "forall y (x <= y) for n = 1, else AGe[n](x) and not AGe[n+1](x)",
                     [x](std::vector<int> const& p) {
                       Names n;
                       return An(n, x, p[0]);
                     }});
      out.push_back({"MonoidVar", {{"n", 1}, {"m", 0}}, 1,
                     "exists y,z (An[n](y) and Cm[m](z) and x = y|z)",
                     [x](std::vector<int> const& p) {
                       Names n;
                       return MonoidVar(n, x, p[0], p[1]);
                     }});
      return out;
    }();
    return entries;
  }

  inline CatalogEntry const& catalog_entry(std::string const& name) {
    for (auto const& e : catalog()) {
      if (e.name == name) {
        return e;
      }
    }
    throw UnknownName("no catalog formula named \"" + name + "\"");
  }

  inline Formula build(std::string const& name, std::vector<int> const& params = {}) {
    auto const& entry = catalog_entry(name);
    if (params.size() != entry.params.size()) {
      throw ParamOutOfRange(name + " takes " + std::to_string(entry.params.size())
                            + " parameter(s), got " + std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i] < entry.params[i].min_value) {
        throw ParamOutOfRange(name + ": " + entry.params[i].name + " must be >= "
                              + std::to_string(entry.params[i].min_value) + ", got "
                              + std::to_string(params[i]));
      }
    }
    return entry.builder(params);
  }

  inline ElementSubset defined_set_by_name(FiniteLattice const&    lattice,
                                           std::string const&      name,
                                           std::vector<int> const& params = {}) {
    return defined_set(lattice, build(name, params));
  }

  struct BuiltinRef {
    std::string      name;
    std::vector<int> params;
  };

  // "builtin:Name" or "builtin:Name[p1,p2]"; nullopt if the prefix is absent
  inline std::optional<BuiltinRef> parse_builtin_ref(std::string const& text) {
    std::string const prefix = "builtin:";
    if (text.rfind(prefix, 0) != 0) {
      return std::nullopt;
    }
    BuiltinRef  ref;
    std::string rest    = text.substr(prefix.size());
    auto        bracket = rest.find('[');
    ref.name            = rest.substr(0, bracket);
    if (ref.name.empty()) {
      throw InputError("empty formula name in \"" + text + "\"");
    }
    if (bracket == std::string::npos) {
      return ref;
    }
    if (rest.back() != ']') {
      throw InputError("missing ']' in \"" + text + "\"");
    }
    std::string body = rest.substr(bracket + 1, rest.size() - bracket - 2);
    std::size_t pos  = 0;
    while (pos <= body.size() && !body.empty()) {
      auto comma = body.find(',', pos);
      auto item  = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                               : comma - pos);
      item.erase(0, item.find_first_not_of(' '));
      item.erase(item.find_last_not_of(' ') + 1);
      bool const digits = !item.empty()
                          && std::all_of(item.begin() + (item[0] == '-'), item.end(),
                                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })
                          && item != "-";
      if (!digits) {
        throw InputError("bad parameter \"" + item + "\" in \"" + text + "\"");
      }
      ref.params.push_back(std::stoi(item));
      if (comma == std::string::npos) {
        break;
      }
      pos = comma + 1;
    }
    return ref;
  }

  inline Formula build(BuiltinRef const& ref) {
    return build(ref.name, ref.params);
  }

}  // namespace comlat
