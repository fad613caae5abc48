#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "lattice.hpp"

namespace comlat {

  using Assignment = std::map<std::string, ElementId>;

  ////////////////////////////////////////////////////////////////////////
  // Reference semantics: plain recursion over the AST
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline ElementId naive_term(FiniteLattice const& l,
                                Term const&          t,
                                Assignment const&    env) {
      if (t->kind == TermKind::variable) {
        auto it = env.find(t->name);
        if (it == env.end()) {
          throw MissingAssignment("no value for variable " + t->name);
        }
        return it->second;
      }
      auto a = naive_term(l, t->lhs, env);
      auto b = naive_term(l, t->rhs, env);
      return t->kind == TermKind::meet ? l.meet(a, b) : l.join(a, b);
    }

    inline bool naive(FiniteLattice const& l, Formula const& f, Assignment& env) {
      switch (f->kind) {
        case FormulaKind::eq:
          return naive_term(l, f->lhs, env) == naive_term(l, f->rhs, env);
        case FormulaKind::leq:
          return l.leq(naive_term(l, f->lhs, env), naive_term(l, f->rhs, env));
        case FormulaKind::lt:
          return l.lt(naive_term(l, f->lhs, env), naive_term(l, f->rhs, env));
        case FormulaKind::negation:
          return !naive(l, f->left, env);
        case FormulaKind::conjunction:
          return naive(l, f->left, env) && naive(l, f->right, env);
        case FormulaKind::disjunction:
          return naive(l, f->left, env) || naive(l, f->right, env);
        case FormulaKind::implication:
          return !naive(l, f->left, env) || naive(l, f->right, env);
        case FormulaKind::forall:
        case FormulaKind::exists:
        case FormulaKind::min:
          break;
      }
      auto       it    = env.find(f->var);
      auto const saved = it == env.end() ? std::nullopt
                                         : std::optional<ElementId>(it->second);
      bool result;
      if (f->kind == FormulaKind::min) {
        if (!saved) {
          throw MissingAssignment("no value for variable " + f->var);
        }
        result = naive(l, f->left, env);
        for (ElementId b = 0; result && b < l.size(); ++b) {
          if (l.lt(b, *saved)) {
            env[f->var] = b;
            result      = !naive(l, f->left, env);
          }
        }
      } else {
        bool const universal = f->kind == FormulaKind::forall;
        result               = universal;
        for (ElementId b = 0; b < l.size(); ++b) {
          env[f->var] = b;
          if (naive(l, f->left, env) != universal) {
            result = !universal;
            break;
          }
        }
      }
      if (saved) {
        env[f->var] = *saved;
      } else {
        env.erase(f->var);
      }
      return result;
    }
  }  // namespace detail

  inline bool evaluate_naive(FiniteLattice const& lattice,
                             Formula const&       formula,
                             Assignment const&    assignment) {
    Assignment env = assignment;
    return detail::naive(lattice, formula, env);
  }

  inline ElementSubset defined_set_naive(FiniteLattice const& lattice,
                                         Formula const&       formula) {
    auto fv = free_vars(formula);
    if (fv.size() != 1) {
      throw ArityError("defined_set needs exactly one free variable, got "
                       + std::to_string(fv.size()));
    }
    std::vector<ElementId> ids;
    for (ElementId a = 0; a < lattice.size(); ++a) {
      if (evaluate_naive(lattice, formula, {{fv[0], a}})) {
        ids.push_back(a);
      }
    }
    return ElementSubset(lattice.size(), std::move(ids));
  }

  ////////////////////////////////////////////////////////////////////////
  // Relation tables
  ////////////////////////////////////////////////////////////////////////

  // The set of satisfying tuples over `vars`, stored densely. The tuple
  // (v_0, ..., v_{k-1}) sits at index sum v_i * n^(k-1-i).
  struct RelationTable {
    std::vector<std::string> vars;
    std::size_t              n = 0;
    Bitset                   bits;

    bool contains(std::vector<ElementId> const& tuple) const {
      std::size_t idx = 0;
      for (auto v : tuple) {
        idx = idx * n + v;
      }
      return bits.test(idx);
    }

    // looks up the values of vars in `values`
    bool contains(Assignment const& values) const {
      std::size_t idx = 0;
      for (auto const& v : vars) {
        idx = idx * n + values.at(v);
      }
      return bits.test(idx);
    }
  };

  namespace detail {
    inline constexpr std::size_t kMaxTableBits = std::size_t{1} << 31;

    inline std::size_t table_size(std::size_t n, std::size_t arity) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < arity; ++i) {
        if (total > kMaxTableBits / std::max<std::size_t>(n, 1)) {
          throw ResourceLimit("relation table over "
                              + std::to_string(arity) + " variables on "
                              + std::to_string(n) + " elements is too large");
        }
        total *= n;
      }
      return total;
    }

    inline std::vector<std::size_t> strides(std::size_t n, std::size_t arity) {
      std::vector<std::size_t> out(arity, 1);
      for (std::size_t i = arity; i-- > 1;) {
        out[i - 1] = out[i] * n;
      }
      return out;
    }

    inline std::ptrdiff_t position(std::vector<std::string> const& vs,
                                   std::string const&              v) {
      auto it = std::find(vs.begin(), vs.end(), v);
      return it == vs.end() ? -1 : it - vs.begin();
    }

    // Re-indexes t over `target`, a superset of t.vars in any order.
    inline Bitset broadcast(RelationTable const&            t,
                            std::vector<std::string> const& target) {
      if (t.vars == target) {
        return t.bits;
      }
      auto const n     = t.n;
      auto const k     = target.size();
      auto const total = table_size(n, k);
      auto const src   = strides(n, t.vars.size());
      std::vector<std::size_t> step(k, 0);
      for (std::size_t j = 0; j < k; ++j) {
        auto p = position(t.vars, target[j]);
        if (p >= 0) {
          step[j] = src[static_cast<std::size_t>(p)];
        }
      }
      Bitset out(total);
      if (k == 0) {
        out.set(0, t.bits.test(0));
        return out;
      }
      std::vector<std::size_t> digits(k, 0);
      std::size_t              s = 0;
      for (std::size_t d = 0; d < total; ++d) {
        if (t.bits.test(s)) {
          out.set(d);
        }
        for (std::size_t j = k; j-- > 0;) {
          if (++digits[j] < n) {
            s += step[j];
            break;
          }
          s -= step[j] * (n - 1);
          digits[j] = 0;
        }
      }
      return out;
    }

    inline std::vector<std::string> merged(std::vector<std::string> a,
                                           std::vector<std::string> const& b) {
      for (auto const& v : b) {
        if (position(a, v) < 0) {
          a.push_back(v);
        }
      }
      return a;
    }

    inline RelationTable combine(RelationTable const& a,
                                 RelationTable const& b,
                                 bool                 conjunction) {
      RelationTable out{merged(a.vars, b.vars), a.n, {}};
      out.bits = broadcast(a, out.vars);
      if (conjunction) {
        out.bits &= broadcast(b, out.vars);
      } else {
        out.bits |= broadcast(b, out.vars);
      }
      return out;
    }

    inline RelationTable complement(RelationTable t) {
      t.bits.flip();
      return t;
    }

    inline RelationTable project_exists(RelationTable const& t,
                                        std::string const&   v) {
      auto p = position(t.vars, v);
      if (p < 0) {
        return t;
      }
      auto const    pos = static_cast<std::size_t>(p);
      RelationTable out{t.vars, t.n, {}};
      out.vars.erase(out.vars.begin() + p);
      out.bits         = Bitset(table_size(t.n, out.vars.size()));
      std::size_t lo_n = 1;
      for (std::size_t i = pos + 1; i < t.vars.size(); ++i) {
        lo_n *= t.n;
      }
      auto const block = lo_n * t.n;
      t.bits.for_each_set([&](std::size_t idx) {
        out.bits.set((idx / block) * lo_n + idx % lo_n);
      });
      return out;
    }

    inline RelationTable project_forall(RelationTable const& t,
                                        std::string const&   v) {
      if (position(t.vars, v) < 0) {
        return t;
      }
      return complement(project_exists(complement(t), v));
    }

    // Flat program evaluating a term over the slots of a tuple.
    struct TermProgram {
      struct Op {
        TermKind      kind;
        std::size_t   slot;
      };
      std::vector<Op> ops;

      static void compile(Term const&                     t,
                          std::vector<std::string> const& vars,
                          std::vector<Op>&                out) {
        if (t->kind == TermKind::variable) {
          out.push_back(
              {TermKind::variable,
               static_cast<std::size_t>(position(vars, t->name))});
          return;
        }
        compile(t->lhs, vars, out);
        compile(t->rhs, vars, out);
        out.push_back({t->kind, 0});
      }

      TermProgram(Term const& t, std::vector<std::string> const& vars) {
        compile(t, vars, ops);
      }

      ElementId run(FiniteLattice const&           l,
                    std::vector<ElementId> const& tuple,
                    std::vector<ElementId>&       stack) const {
        stack.clear();
        for (auto const& op : ops) {
          if (op.kind == TermKind::variable) {
            stack.push_back(tuple[op.slot]);
            continue;
          }
          auto b = stack.back();
          stack.pop_back();
          auto a = stack.back();
          stack.back() = op.kind == TermKind::meet ? l.meet(a, b) : l.join(a, b);
        }
        return stack.back();
      }
    };

    template <typename F>
    void for_each_tuple(std::size_t n, std::size_t k, F&& f) {
      auto const             total = table_size(n, k);
      std::vector<ElementId> tuple(k, 0);
      for (std::size_t idx = 0; idx < total; ++idx) {
        f(tuple, idx);
        for (std::size_t j = k; j-- > 0;) {
          if (++tuple[j] < n) {
            break;
          }
          tuple[j] = 0;
        }
      }
    }

    inline RelationTable atom_table(FiniteLattice const& l, Formula const& f) {
      RelationTable out{free_vars(f), l.size(), {}};
      out.bits = Bitset(table_size(out.n, out.vars.size()));
      TermProgram const      lhs(f->lhs, out.vars);
      TermProgram const      rhs(f->rhs, out.vars);
      std::vector<ElementId> stack;
      for_each_tuple(out.n, out.vars.size(), [&](auto const& tuple, auto idx) {
        auto a = lhs.run(l, tuple, stack);
        auto b = rhs.run(l, tuple, stack);
        bool holds = f->kind == FormulaKind::eq    ? a == b
                     : f->kind == FormulaKind::leq ? l.leq(a, b)
                                                   : l.lt(a, b);
        if (holds) {
          out.bits.set(idx);
        }
      });
      return out;
    }

    // min over v: keeps the tuples whose v-value is minimal among those
    // agreeing on all other coordinates
    inline RelationTable minimal_table(FiniteLattice const& l,
                                       RelationTable const& body,
                                       std::string const&   v) {
      RelationTable out{body.vars, body.n, {}};
      if (position(out.vars, v) < 0) {
        // v unconstrained: only the bottom can be minimal
        RelationTable bottom{{v}, body.n, Bitset(body.n)};
        bottom.bits.set(l.bottom());
        return combine(body, bottom, true);
      }
      out.vars.erase(out.vars.begin() + position(out.vars, v));
      out.vars.push_back(v);
      auto const  n     = body.n;
      auto        dense = broadcast(body, out.vars);
      out.bits          = Bitset(dense.size());
      Bitset      block(n);
      std::size_t blocks = dense.size() / n;
      for (std::size_t b = 0; b < blocks; ++b) {
        if (!dense.any_in(b * n, b * n + n)) {
          continue;
        }
        for (std::size_t a = 0; a < n; ++a) {
          block.set(a, dense.test(b * n + a));
        }
        block.for_each_set([&](std::size_t a) {
          auto below = block & l.down_set(static_cast<ElementId>(a));
          if (below.count() == 1) {
            out.bits.set(b * n + a);
          }
        });
      }
      return out;
    }

    ////////////////////////////////////////////////////////////////////
    // Rewriting into a shape the table evaluator handles well
    ////////////////////////////////////////////////////////////////////

    inline Formula negate(Formula const& f) {
      if (f->kind == FormulaKind::negation) {
        return f->left;
      }
      return negation(f);
    }

    // Implications become disjunctions; double negations vanish.
    inline Formula to_core(Formula const& f) {
      switch (f->kind) {
        case FormulaKind::eq:
        case FormulaKind::leq:
        case FormulaKind::lt:
          return f;
        case FormulaKind::negation:
          return negate(to_core(f->left));
        case FormulaKind::implication:
          return disj(negate(to_core(f->left)), to_core(f->right));
        case FormulaKind::conjunction:
        case FormulaKind::disjunction:
          return make_connective(f->kind, to_core(f->left), to_core(f->right));
        default:
          return make_binder(f->kind, f->var, to_core(f->left));
      }
    }

    inline void flatten(Formula const&        f,
                        FormulaKind           k,
                        std::vector<Formula>& out) {
      if (f->kind == k) {
        flatten(f->left, k, out);
        flatten(f->right, k, out);
      } else {
        out.push_back(f);
      }
    }

    inline Formula rebuild(std::vector<Formula> const& parts, FormulaKind k) {
      Formula acc = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i) {
        acc = make_connective(k, acc, parts[i]);
      }
      return acc;
    }

    inline FormulaKind dual(FormulaKind q) {
      return q == FormulaKind::forall ? FormulaKind::exists : FormulaKind::forall;
    }

    // Moves the quantifier (q v) as far inward as the connectives allow.
    inline Formula push(FormulaKind q, std::string const& v, Formula const& f) {
      if (!is_free_in(v, f)) {
        return f;
      }
      switch (f->kind) {
        case FormulaKind::negation:
          return negate(push(dual(q), v, f->left));
        case FormulaKind::conjunction:
        case FormulaKind::disjunction: {
          std::vector<Formula> parts;
          flatten(f, f->kind, parts);
          bool const distributes = (q == FormulaKind::forall)
                                   == (f->kind == FormulaKind::conjunction);
          if (distributes) {
            for (auto& p : parts) {
              p = push(q, v, p);
            }
            return rebuild(parts, f->kind);
          }
          std::vector<Formula> with;
          std::vector<Formula> without;
          for (auto const& p : parts) {
            (is_free_in(v, p) ? with : without).push_back(p);
          }
          Formula inner = with.size() == 1 ? push(q, v, with.front())
                                           : make_binder(q, v, rebuild(with, f->kind));
          without.push_back(inner);
          return rebuild(without, f->kind);
        }
        case FormulaKind::forall:
        case FormulaKind::exists:
          if (f->kind == q) {
            return make_binder(q, f->var, push(q, v, f->left));
          }
          return make_binder(q, v, f);
        default:
          return make_binder(q, v, f);
      }
    }

    inline Formula miniscope(Formula const& f) {
      switch (f->kind) {
        case FormulaKind::eq:
        case FormulaKind::leq:
        case FormulaKind::lt:
          return f;
        case FormulaKind::negation:
          return negate(miniscope(f->left));
        case FormulaKind::conjunction:
        case FormulaKind::disjunction:
        case FormulaKind::implication:
          return make_connective(f->kind, miniscope(f->left), miniscope(f->right));
        case FormulaKind::min:
          return min(f->var, miniscope(f->left));
        default:
          return push(f->kind, f->var, miniscope(f->left));
      }
    }

    ////////////////////////////////////////////////////////////////////
    // Alpha-invariant keys
    ////////////////////////////////////////////////////////////////////

    class KeyWriter {
     public:
      std::string run(Formula const& f) {
        formula(f);
        return std::move(_out);
      }

     private:
      std::string name_of(std::string const& v) {
        for (auto it = _bound.rbegin(); it != _bound.rend(); ++it) {
          if (it->first == v) {
            return it->second;
          }
        }
        auto [it, fresh] = _free.emplace(v, _free.size());
        return "f" + std::to_string(it->second);
      }

      void term(Term const& t) {
        if (t->kind == TermKind::variable) {
          _out += name_of(t->name);
          return;
        }
        _out += t->kind == TermKind::meet ? "&(" : "|(";
        term(t->lhs);
        _out += ',';
        term(t->rhs);
        _out += ')';
      }

      void formula(Formula const& f) {
        switch (f->kind) {
          case FormulaKind::eq:
          case FormulaKind::leq:
          case FormulaKind::lt:
            _out += f->kind == FormulaKind::eq    ? "=("
                    : f->kind == FormulaKind::leq ? "<=("
                                                  : "<(";
            term(f->lhs);
            _out += ',';
            term(f->rhs);
            _out += ')';
            return;
          case FormulaKind::negation:
            _out += "~";
            formula(f->left);
            return;
          case FormulaKind::conjunction:
          case FormulaKind::disjunction:
          case FormulaKind::implication:
            _out += f->kind == FormulaKind::conjunction   ? "A("
                    : f->kind == FormulaKind::disjunction ? "O("
                                                          : "I(";
            formula(f->left);
            _out += ',';
            formula(f->right);
            _out += ')';
            return;
          case FormulaKind::min:
            _out += "M" + name_of(f->var) + "(";
            formula(f->left);
            _out += ')';
            return;
          default: {
            auto b = "b" + std::to_string(_next_bound++);
            _out += (f->kind == FormulaKind::forall ? "F" : "E") + b + "(";
            _bound.emplace_back(f->var, b);
            formula(f->left);
            _bound.pop_back();
            _out += ')';
          }
        }
      }

      std::string                                      _out;
      std::map<std::string, std::size_t>               _free;
      std::vector<std::pair<std::string, std::string>> _bound;
      std::size_t                                      _next_bound = 0;
    };

    ////////////////////////////////////////////////////////////////////
    // Term factoring
    ////////////////////////////////////////////////////////////////////

    class FactorFinder {
     public:
      // A compound term with at least two variables such that every free
      // occurrence of its variables lies inside a copy of it, if any.
      std::optional<Term> run(Formula const& f) {
        walk(f);
        for (auto const& [text, t] : _candidates) {
          auto vs = vars(t);
          bool ok = true;
          for (auto const& occ : _occurrences) {
            if (std::find(vs.begin(), vs.end(), occ.name) == vs.end()) {
              continue;
            }
            bool inside = false;
            for (auto const* a : occ.ancestors) {
              if (to_string(*a) == text) {
                inside = true;
                break;
              }
            }
            if (!inside) {
              ok = false;
              break;
            }
          }
          if (ok) {
            return t;
          }
        }
        return std::nullopt;
      }

     private:
      struct Occurrence {
        std::string              name;
        std::vector<Term const*> ancestors;
      };

      bool bound(std::string const& v) const {
        return std::find(_bound.begin(), _bound.end(), v) != _bound.end();
      }

      // returns whether every variable of t is free here
      bool term(Term const& t, std::vector<Term const*>& path) {
        if (t->kind == TermKind::variable) {
          if (bound(t->name)) {
            return false;
          }
          _occurrences.push_back({t->name, path});
          return true;
        }
        path.push_back(&t);
        bool const l = term(t->lhs, path);
        bool const r = term(t->rhs, path);
        path.pop_back();
        if (l && r && vars(t).size() >= 2) {
          _candidates.emplace(to_string(t), t);
        }
        return l && r;
      }

      void walk(Formula const& f) {
        if (is_atom(f->kind)) {
          std::vector<Term const*> path;
          term(f->lhs, path);
          term(f->rhs, path);
          return;
        }
        if (f->kind == FormulaKind::min) {
          if (!bound(f->var)) {
            _occurrences.push_back({f->var, {}});
          }
          walk(f->left);
          return;
        }
        if (f->kind == FormulaKind::forall || f->kind == FormulaKind::exists) {
          _bound.push_back(f->var);
          walk(f->left);
          _bound.pop_back();
          return;
        }
        walk(f->left);
        if (f->right) {
          walk(f->right);
        }
      }

      std::vector<std::string>    _bound;
      std::vector<Occurrence>     _occurrences;
      std::map<std::string, Term> _candidates;
    };

    inline Term replace_term(Term const&                     t,
                             Term const&                     target,
                             Term const&                     with,
                             std::vector<std::string> const& bound) {
      if (t->kind == TermKind::variable) {
        return t;
      }
      if (equal(t, target)) {
        bool shadowed = false;
        for (auto const& v : vars(t)) {
          if (std::find(bound.begin(), bound.end(), v) != bound.end()) {
            shadowed = true;
          }
        }
        if (!shadowed) {
          return with;
        }
      }
      auto l = replace_term(t->lhs, target, with, bound);
      auto r = replace_term(t->rhs, target, with, bound);
      if (l == t->lhs && r == t->rhs) {
        return t;
      }
      return t->kind == TermKind::meet ? meet(l, r) : join(l, r);
    }

    inline Formula replace_term(Formula const&            f,
                                Term const&               target,
                                Term const&               with,
                                std::vector<std::string>& bound) {
      if (is_atom(f->kind)) {
        return make_atom(f->kind,
                         replace_term(f->lhs, target, with, bound),
                         replace_term(f->rhs, target, with, bound));
      }
      if (f->kind == FormulaKind::forall || f->kind == FormulaKind::exists) {
        bound.push_back(f->var);
        auto body = replace_term(f->left, target, with, bound);
        bound.pop_back();
        return make_binder(f->kind, f->var, body);
      }
      if (f->kind == FormulaKind::min) {
        return min(f->var, replace_term(f->left, target, with, bound));
      }
      return make_connective(
          f->kind,
          replace_term(f->left, target, with, bound),
          f->right ? replace_term(f->right, target, with, bound) : nullptr);
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Bottom-up relational evaluator
  ////////////////////////////////////////////////////////////////////////

  // Compiles each subformula to the table of its satisfying tuples.
  // Quantifiers are first pushed inward, compound terms whose variables
  // occur nowhere else are replaced by a fresh variable, and tables of
  // small arity are memoized up to renaming of variables. One evaluator
  // can be reused across formulas on the same lattice; it is not safe for
  // concurrent use.
  class RelationalEvaluator {
   public:
    explicit RelationalEvaluator(FiniteLattice const& lattice)
        : _lattice(&lattice) {}

    FiniteLattice const& lattice() const noexcept {
      return *_lattice;
    }

    // table over free_vars(f), in that order
    RelationTable relation(Formula const& f) {
      auto          core = detail::miniscope(detail::to_core(f));
      auto          t    = table(core);
      RelationTable out{free_vars(f), _lattice->size(), {}};
      out.bits = detail::broadcast(t, out.vars);
      return out;
    }

    bool evaluate(Formula const& f, Assignment const& assignment) {
      auto fv = free_vars(f);
      for (auto const& v : fv) {
        if (!assignment.contains(v)) {
          throw MissingAssignment("no value for variable " + v);
        }
        if (assignment.at(v) >= _lattice->size()) {
          throw InputError("assignment of " + v + " is not an element");
        }
      }
      return relation(f).contains(assignment);
    }

    ElementSubset defined_set(Formula const& f) {
      auto fv = free_vars(f);
      if (fv.size() != 1) {
        throw ArityError("defined_set needs exactly one free variable, got "
                         + std::to_string(fv.size()));
      }
      return ElementSubset::from_bits(relation(f).bits);
    }

    std::size_t cache_size() const noexcept {
      return _cache.size();
    }

   private:
    static constexpr std::size_t kMaxCachedArity = 2;

    RelationTable table(Formula const& f) {
      if (is_atom(f->kind)) {
        return detail::atom_table(*_lattice, f);
      }
      auto fv = free_vars(f);
      std::string key;
      if (fv.size() <= kMaxCachedArity) {
        key = detail::KeyWriter().run(f);
        if (auto it = _cache.find(key); it != _cache.end()) {
          return RelationTable{fv, _lattice->size(), it->second};
        }
      }
      auto result = fv.size() >= 2 ? factored(f, fv) : std::nullopt;
      if (!result) {
        result = compute(f);
      }
      if (fv.size() <= kMaxCachedArity) {
        auto bits = detail::broadcast(*result, fv);
        _cache.emplace(std::move(key), bits);
        return RelationTable{fv, _lattice->size(), std::move(bits)};
      }
      return std::move(*result);
    }

    std::optional<RelationTable> factored(Formula const&                  f,
                                          std::vector<std::string> const& fv) {
      auto target = detail::FactorFinder().run(f);
      if (!target) {
        return std::nullopt;
      }
      auto                     s = var(fresh_name("s", all_names(f)));
      std::vector<std::string> bound;
      auto g     = detail::replace_term(f, *target, s, bound);
      auto inner = table(g);
      // lift back: (fv) -> inner(vars with s := value of target)
      RelationTable out{fv, _lattice->size(), {}};
      out.bits = Bitset(detail::table_size(out.n, fv.size()));
      detail::TermProgram const prog(*target, fv);
      std::vector<std::size_t>  slot(inner.vars.size());
      for (std::size_t i = 0; i < inner.vars.size(); ++i) {
        slot[i] = inner.vars[i] == s->name
                      ? fv.size()
                      : static_cast<std::size_t>(detail::position(fv, inner.vars[i]));
      }
      std::vector<ElementId> stack;
      detail::for_each_tuple(out.n, fv.size(), [&](auto const& tuple, auto idx) {
        auto        value = prog.run(*_lattice, tuple, stack);
        std::size_t j     = 0;
        for (auto sl : slot) {
          j = j * out.n + (sl == fv.size() ? value : tuple[sl]);
        }
        if (inner.bits.test(j)) {
          out.bits.set(idx);
        }
      });
      return out;
    }

    RelationTable compute(Formula const& f) {
      switch (f->kind) {
        case FormulaKind::negation:
          return detail::complement(table(f->left));
        case FormulaKind::conjunction:
        case FormulaKind::disjunction: {
          bool const conj_kind = f->kind == FormulaKind::conjunction;
          auto       a         = table(f->left);
          // short-circuit on constant tables
          if (a.vars.empty() && a.bits.test(0) != conj_kind) {
            return a;
          }
          return detail::combine(a, table(f->right), conj_kind);
        }
        case FormulaKind::implication:
          return detail::combine(
              detail::complement(table(f->left)), table(f->right), false);
        case FormulaKind::forall:
          return detail::project_forall(table(f->left), f->var);
        case FormulaKind::exists:
          return detail::project_exists(table(f->left), f->var);
        case FormulaKind::min:
          return detail::minimal_table(*_lattice, table(f->left), f->var);
        default:
          return detail::atom_table(*_lattice, f);
      }
    }

    FiniteLattice const*                         _lattice;
    std::unordered_map<std::string, Bitset>      _cache;
  };

  // Equal for formulas that differ only by renaming variables (free ones
  // matched by order of first occurrence).
  inline std::string alpha_key(Formula const& f) {
    return detail::KeyWriter().run(f);
  }

  inline RelationTable relation(FiniteLattice const& lattice,
                                Formula const&       formula) {
    return RelationalEvaluator(lattice).relation(formula);
  }

  inline bool evaluate(FiniteLattice const& lattice,
                       Formula const&       formula,
                       Assignment const&    assignment) {
    return RelationalEvaluator(lattice).evaluate(formula, assignment);
  }

  inline ElementSubset defined_set(FiniteLattice const& lattice,
                                   Formula const&       formula) {
    return RelationalEvaluator(lattice).defined_set(formula);
  }

}  // namespace comlat
