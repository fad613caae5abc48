#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace comlat {

  ////////////////////////////////////////////////////////////////////////
  // Terms
  ////////////////////////////////////////////////////////////////////////

  enum class TermKind : std::uint8_t { variable, meet, join };

  struct TermNode;
  using Term = std::shared_ptr<TermNode const>;

  struct TermNode {
    TermKind    kind;
    std::string name;  // variables only
    Term        lhs;
    Term        rhs;
  };

  inline bool is_identifier(std::string const& s) {
    if (s.empty()) {
      return false;
    }
    auto alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    if (!alpha(s[0])) {
      return false;
    }
    return std::all_of(s.begin(), s.end(), [&](char c) {
      return alpha(c) || (c >= '0' && c <= '9');
    });
  }

  inline Term var(std::string name) {
    if (!is_identifier(name)) {
      throw InputError("invalid variable name \"" + name + "\"");
    }
    return std::make_shared<TermNode const>(
        TermNode{TermKind::variable, std::move(name), nullptr, nullptr});
  }

  inline Term meet(Term a, Term b) {
    return std::make_shared<TermNode const>(
        TermNode{TermKind::meet, {}, std::move(a), std::move(b)});
  }

  inline Term join(Term a, Term b) {
    return std::make_shared<TermNode const>(
        TermNode{TermKind::join, {}, std::move(a), std::move(b)});
  }

  inline bool equal(Term const& a, Term const& b) {
    if (a == b) {
      return true;
    }
    if (a->kind != b->kind) {
      return false;
    }
    if (a->kind == TermKind::variable) {
      return a->name == b->name;
    }
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }

  ////////////////////////////////////////////////////////////////////////
  // Formulas
  ////////////////////////////////////////////////////////////////////////

  enum class FormulaKind : std::uint8_t {
    eq,
    leq,
    lt,
    negation,
    conjunction,
    disjunction,
    implication,
    forall,
    exists,
    min
  };

  struct FormulaNode;
  using Formula = std::shared_ptr<FormulaNode const>;

  struct FormulaNode {
    FormulaKind kind;
    Term        lhs;    // atoms
    Term        rhs;    // atoms
    Formula     left;   // connectives; body of binders
    Formula     right;  // binary connectives
    std::string var;    // quantifiers and min
  };

  inline bool is_atom(FormulaKind k) {
    return k == FormulaKind::eq || k == FormulaKind::leq
           || k == FormulaKind::lt;
  }

  inline bool is_binder(FormulaKind k) {
    return k == FormulaKind::forall || k == FormulaKind::exists
           || k == FormulaKind::min;
  }

  namespace detail {
    inline Formula make_atom(FormulaKind k, Term a, Term b) {
      return std::make_shared<FormulaNode const>(
          FormulaNode{k, std::move(a), std::move(b), nullptr, nullptr, {}});
    }
    inline Formula make_connective(FormulaKind k, Formula a, Formula b) {
      return std::make_shared<FormulaNode const>(
          FormulaNode{k, nullptr, nullptr, std::move(a), std::move(b), {}});
    }
    inline Formula make_binder(FormulaKind k, std::string v, Formula body) {
      if (!is_identifier(v)) {
        throw InputError("invalid variable name \"" + v + "\"");
      }
      return std::make_shared<FormulaNode const>(
          FormulaNode{k, nullptr, nullptr, std::move(body), nullptr, std::move(v)});
    }
  }  // namespace detail

  inline Formula eq(Term a, Term b) {
    return detail::make_atom(FormulaKind::eq, std::move(a), std::move(b));
  }
  inline Formula leq(Term a, Term b) {
    return detail::make_atom(FormulaKind::leq, std::move(a), std::move(b));
  }
  inline Formula lt(Term a, Term b) {
    return detail::make_atom(FormulaKind::lt, std::move(a), std::move(b));
  }
  inline Formula negation(Formula f) {
    return detail::make_connective(FormulaKind::negation, std::move(f), nullptr);
  }
  inline Formula neq(Term a, Term b) {
    return negation(eq(std::move(a), std::move(b)));
  }
  inline Formula conj(Formula a, Formula b) {
    return detail::make_connective(
        FormulaKind::conjunction, std::move(a), std::move(b));
  }
  // left-nested conjunction of at least one formula
  inline Formula conj(std::initializer_list<Formula> fs) {
    auto    it  = fs.begin();
    Formula acc = *it++;
    for (; it != fs.end(); ++it) {
      acc = conj(acc, *it);
    }
    return acc;
  }
  inline Formula disj(Formula a, Formula b) {
    return detail::make_connective(
        FormulaKind::disjunction, std::move(a), std::move(b));
  }
  inline Formula implies(Formula a, Formula b) {
    return detail::make_connective(
        FormulaKind::implication, std::move(a), std::move(b));
  }
  inline Formula forall(std::string v, Formula body) {
    return detail::make_binder(FormulaKind::forall, std::move(v), std::move(body));
  }
  inline Formula exists(std::string v, Formula body) {
    return detail::make_binder(FormulaKind::exists, std::move(v), std::move(body));
  }
  // "forall y,z" is nested single quantifiers, outermost first
  inline Formula forall(std::vector<std::string> const& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
      body = forall(*it, std::move(body));
    }
    return body;
  }
  inline Formula exists(std::vector<std::string> const& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
      body = exists(*it, std::move(body));
    }
    return body;
  }
  // min_x { body }: the minimal elements of the set body defines in x.
  // x stays free; the macro quantifies over a fresh copy of it.
  inline Formula min(std::string v, Formula body) {
    return detail::make_binder(FormulaKind::min, std::move(v), std::move(body));
  }

  inline bool equal(Formula const& a, Formula const& b) {
    if (a == b) {
      return true;
    }
    if (a->kind != b->kind || a->var != b->var) {
      return false;
    }
    if (is_atom(a->kind)) {
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    if (!equal(a->left, b->left)) {
      return false;
    }
    return a->right == nullptr || equal(a->right, b->right);
  }

  inline std::size_t size(Term const& t) {
    return t->kind == TermKind::variable ? 1 : 1 + size(t->lhs) + size(t->rhs);
  }

  inline std::size_t size(Formula const& f) {
    if (is_atom(f->kind)) {
      return 1 + size(f->lhs) + size(f->rhs);
    }
    std::size_t s = 1 + size(f->left);
    if (f->right) {
      s += size(f->right);
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Variables
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline void term_vars(Term const& t, std::vector<std::string>& out) {
      if (t->kind == TermKind::variable) {
        if (std::find(out.begin(), out.end(), t->name) == out.end()) {
          out.push_back(t->name);
        }
        return;
      }
      term_vars(t->lhs, out);
      term_vars(t->rhs, out);
    }

    inline void free_vars(Formula const&            f,
                          std::vector<std::string>& bound,
                          std::vector<std::string>& out) {
      auto note = [&](std::string const& v) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end()
            && std::find(out.begin(), out.end(), v) == out.end()) {
          out.push_back(v);
        }
      };
      if (is_atom(f->kind)) {
        std::vector<std::string> vs;
        term_vars(f->lhs, vs);
        term_vars(f->rhs, vs);
        for (auto const& v : vs) {
          note(v);
        }
        return;
      }
      if (f->kind == FormulaKind::min) {
        note(f->var);
        free_vars(f->left, bound, out);
        return;
      }
      if (f->kind == FormulaKind::forall || f->kind == FormulaKind::exists) {
        bound.push_back(f->var);
        free_vars(f->left, bound, out);
        bound.pop_back();
        return;
      }
      free_vars(f->left, bound, out);
      if (f->right) {
        free_vars(f->right, bound, out);
      }
    }

    inline void all_names(Formula const& f, std::set<std::string>& out) {
      if (is_atom(f->kind)) {
        std::vector<std::string> vs;
        term_vars(f->lhs, vs);
        term_vars(f->rhs, vs);
        out.insert(vs.begin(), vs.end());
        return;
      }
      if (!f->var.empty()) {
        out.insert(f->var);
      }
      all_names(f->left, out);
      if (f->right) {
        all_names(f->right, out);
      }
    }
  }  // namespace detail

  inline std::vector<std::string> vars(Term const& t) {
    std::vector<std::string> out;
    detail::term_vars(t, out);
    return out;
  }

  // free variables in order of first occurrence
  inline std::vector<std::string> free_vars(Formula const& f) {
    std::vector<std::string> bound;
    std::vector<std::string> out;
    detail::free_vars(f, bound, out);
    return out;
  }

  inline bool is_free_in(std::string const& v, Formula const& f) {
    auto fv = free_vars(f);
    return std::find(fv.begin(), fv.end(), v) != fv.end();
  }

  // every variable name occurring anywhere in f, free or bound
  inline std::set<std::string> all_names(Formula const& f) {
    std::set<std::string> out;
    detail::all_names(f, out);
    return out;
  }

  // base + smallest positive integer suffix not in `taken`
  inline std::string fresh_name(std::string const&           base,
                                std::set<std::string> const& taken) {
    for (std::size_t i = 1;; ++i) {
      auto candidate = base + std::to_string(i);
      if (!taken.contains(candidate)) {
        return candidate;
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Substitution and sugar
  ////////////////////////////////////////////////////////////////////////

  inline Term substitute(Term const&                        t,
                         std::map<std::string, Term> const& sigma) {
    if (t->kind == TermKind::variable) {
      auto it = sigma.find(t->name);
      return it == sigma.end() ? t : it->second;
    }
    auto l = substitute(t->lhs, sigma);
    auto r = substitute(t->rhs, sigma);
    if (l == t->lhs && r == t->rhs) {
      return t;
    }
    return t->kind == TermKind::meet ? meet(l, r) : join(l, r);
  }

  // Replaces free occurrences of the variables in sigma. The caller
  // guarantees no capture: no variable of a substituted term is bound in f.
  inline Formula substitute(Formula const&                     f,
                            std::map<std::string, Term> const& sigma) {
    if (sigma.empty()) {
      return f;
    }
    if (is_atom(f->kind)) {
      auto l = substitute(f->lhs, sigma);
      auto r = substitute(f->rhs, sigma);
      if (l == f->lhs && r == f->rhs) {
        return f;
      }
      return detail::make_atom(f->kind, l, r);
    }
    if (f->kind == FormulaKind::forall || f->kind == FormulaKind::exists) {
      if (sigma.contains(f->var)) {
        auto inner = sigma;
        inner.erase(f->var);
        return detail::make_binder(f->kind, f->var, substitute(f->left, inner));
      }
      return detail::make_binder(f->kind, f->var, substitute(f->left, sigma));
    }
    if (f->kind == FormulaKind::min) {
      auto it = sigma.find(f->var);
      if (it != sigma.end()) {
        if (it->second->kind != TermKind::variable) {
          throw InputError("min variable can only be renamed to a variable");
        }
        return min(it->second->name, substitute(f->left, sigma));
      }
      return min(f->var, substitute(f->left, sigma));
    }
    auto l = substitute(f->left, sigma);
    auto r = f->right ? substitute(f->right, sigma) : nullptr;
    if (l == f->left && r == f->right) {
      return f;
    }
    return detail::make_connective(f->kind, l, r);
  }

  // Expands a <= b to a ^ b = a, a < b to a <= b and not a = b, and
  // min_x{P} to P(x) and forall y (y < x -> not P(y)) with y fresh.
  inline Formula expand_sugar(Formula const& f) {
    switch (f->kind) {
      case FormulaKind::eq:
        return f;
      case FormulaKind::leq:
        return eq(meet(f->lhs, f->rhs), f->lhs);
      case FormulaKind::lt:
        return conj(eq(meet(f->lhs, f->rhs), f->lhs), neq(f->lhs, f->rhs));
      case FormulaKind::negation:
        return negation(expand_sugar(f->left));
      case FormulaKind::conjunction:
      case FormulaKind::disjunction:
      case FormulaKind::implication:
        return detail::make_connective(
            f->kind, expand_sugar(f->left), expand_sugar(f->right));
      case FormulaKind::forall:
      case FormulaKind::exists:
        return detail::make_binder(f->kind, f->var, expand_sugar(f->left));
      case FormulaKind::min: {
        auto body  = expand_sugar(f->left);
        auto y     = fresh_name(f->var, all_names(body));
        auto moved = substitute(body, {{f->var, var(y)}});
        auto less  = expand_sugar(lt(var(y), var(f->var)));
        return conj(body, forall(y, implies(less, negation(moved))));
      }
    }
    return f;
  }

  ////////////////////////////////////////////////////////////////////////
  // Printing
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // levels: 0 atom side, 1 left operand of a join, 2 left operand of a
    // meet, 3 right operand. Meets nested in joins are parenthesized too.
    inline void print_term(Term const& t, int level, std::string& out) {
      if (t->kind == TermKind::variable) {
        out += t->name;
        return;
      }
      bool const is_join = t->kind == TermKind::join;
      bool const wrap    = is_join ? level >= 2 : (level == 1 || level == 3);
      if (wrap) {
        out += '(';
      }
      print_term(t->lhs, is_join ? 1 : 2, out);
      out += is_join ? '|' : '&';
      print_term(t->rhs, 3, out);
      if (wrap) {
        out += ')';
      }
    }

    inline int natural_level(FormulaKind k) {
      switch (k) {
        case FormulaKind::forall:
        case FormulaKind::exists:
        case FormulaKind::min:
        case FormulaKind::implication:
          return 0;
        case FormulaKind::disjunction:
          return 1;
        case FormulaKind::conjunction:
          return 2;
        default:
          return 3;
      }
    }

    // levels: 0 formula, 1 disjunct, 2 conjunct, 3 negation operand
    inline void print_formula(Formula const& f, int level, std::string& out) {
      bool const wrap = natural_level(f->kind) < level;
      if (wrap) {
        out += '(';
      }
      switch (f->kind) {
        case FormulaKind::eq:
        case FormulaKind::leq:
        case FormulaKind::lt:
          print_term(f->lhs, 0, out);
          out += f->kind == FormulaKind::eq    ? " = "
                 : f->kind == FormulaKind::leq ? " <= "
                                                : " < ";
          print_term(f->rhs, 0, out);
          break;
        case FormulaKind::negation:
          if (f->left->kind == FormulaKind::eq) {
            print_term(f->left->lhs, 0, out);
            out += " != ";
            print_term(f->left->rhs, 0, out);
          } else {
            out += "not ";
            print_formula(f->left, 3, out);
          }
          break;
        case FormulaKind::conjunction:
          print_formula(f->left, 2, out);
          out += " and ";
          print_formula(f->right, 3, out);
          break;
        case FormulaKind::disjunction:
          print_formula(f->left, 1, out);
          out += " or ";
          print_formula(f->right, 2, out);
          break;
        case FormulaKind::implication:
          print_formula(f->left, 1, out);
          out += " -> ";
          print_formula(f->right, 0, out);
          break;
        case FormulaKind::forall:
        case FormulaKind::exists: {
          out += f->kind == FormulaKind::forall ? "forall " : "exists ";
          out += f->var;
          auto body = f->left;
          while (body->kind == f->kind) {
            out += ',';
            out += body->var;
            body = body->left;
          }
          out += " (";
          print_formula(body, 0, out);
          out += ')';
          break;
        }
        case FormulaKind::min:
          out += "min ";
          out += f->var;
          out += " { ";
          print_formula(f->left, 0, out);
          out += " }";
          break;
      }
      if (wrap) {
        out += ')';
      }
    }
  }  // namespace detail

  inline std::string to_string(Term const& t) {
    std::string out;
    detail::print_term(t, 0, out);
    return out;
  }

  inline std::string to_string(Formula const& f) {
    std::string out;
    detail::print_formula(f, 0, out);
    return out;
  }

}  // namespace comlat
