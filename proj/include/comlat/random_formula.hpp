#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "formula.hpp"

namespace comlat {

  struct RandomFormulaOptions {
    std::vector<std::string> vars = {"x", "y", "z"};
    int  max_depth      = 3;  // nesting of quantifiers and min
    int  max_term_depth = 2;
    bool allow_min      = true;
  };

  namespace detail {
    inline Term random_term(std::mt19937_64&                rng,
                            std::vector<std::string> const& vars,
                            int                             depth) {
      std::uniform_int_distribution<int> coin(0, 2);
      if (depth == 0 || coin(rng) == 0) {
        std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
        return var(vars[pick(rng)]);
      }
      auto a = random_term(rng, vars, depth - 1);
      auto b = random_term(rng, vars, depth - 1);
      return coin(rng) == 1 ? meet(a, b) : join(a, b);
    }

    inline Formula random_formula(std::mt19937_64&            rng,
                                  RandomFormulaOptions const& opt,
                                  int                         depth,
                                  int                         size_budget) {
      std::uniform_int_distribution<int> choice(0, 9);
      std::uniform_int_distribution<std::size_t> pick(0, opt.vars.size() - 1);
      int c = size_budget <= 0 ? 0 : choice(rng);
      if (depth <= 0 && c >= 7) {
        c = c % 7;
      }
      switch (c) {
        case 0:
        case 1: {
          auto a = random_term(rng, opt.vars, opt.max_term_depth);
          auto b = random_term(rng, opt.vars, opt.max_term_depth);
          int  r = choice(rng) % 3;
          return r == 0 ? eq(a, b) : r == 1 ? leq(a, b) : lt(a, b);
        }
        case 2:
          return negation(random_formula(rng, opt, depth, size_budget - 1));
        case 3:
        case 4:
        case 5:
        case 6: {
          auto a = random_formula(rng, opt, depth, size_budget / 2 - 1);
          auto b = random_formula(rng, opt, depth, size_budget / 2 - 1);
          return c == 3 ? conj(a, b) : c == 4 ? disj(a, b) : c == 5 ? implies(a, b) : conj(a, negation(b));
        }
        case 7:
        case 8: {
          auto body = random_formula(rng, opt, depth - 1, size_budget - 1);
          auto v    = opt.vars[pick(rng)];
          return c == 7 ? forall(v, body) : exists(v, body);
        }
        default: {
          auto body = random_formula(rng, opt, depth - 1, size_budget - 1);
          auto v    = opt.vars[pick(rng)];
          if (!opt.allow_min) {
            return exists(v, body);
          }
          return min(v, body);
        }
      }
    }
  }  // namespace detail

  inline Formula random_formula(std::mt19937_64& rng, RandomFormulaOptions const& opt = {}) {
    return detail::random_formula(rng, opt, opt.max_depth, 8);
  }

  // A random formula whose only free variable is `x`. Other free variables
  // are closed off by random quantifiers; `x` is forced to occur.
  inline Formula random_unary_formula(std::mt19937_64&            rng,
                                      RandomFormulaOptions const& opt = {},
                                      std::string const&          x   = "x") {
    Formula f = random_formula(rng, opt);
    for (int tries = 0; tries < 20 && !is_free_in(x, f); ++tries) {
      f = random_formula(rng, opt);
    }
    if (!is_free_in(x, f)) {
      f = conj(f, leq(var(x), detail::random_term(rng, {x}, 1)));
    }
    std::bernoulli_distribution coin(0.5);
    for (auto const& v : free_vars(f)) {
      if (v != x) {
        f = coin(rng) ? forall(v, f) : exists(v, f);
      }
    }
    return f;
  }

}  // namespace comlat
