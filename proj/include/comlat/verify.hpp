#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "derivation.hpp"
#include "eval.hpp"
#include "identity_space.hpp"
#include "lattice.hpp"
#include "oracles.hpp"
#include "random_formula.hpp"
#include "universe.hpp"
#include "variety.hpp"

namespace comlat::verify {

  struct CheckResult {
    int                      criterion = 0;
    std::string              title;
    bool                     passed = false;
    double                   seconds = 0;
    double                   limit_seconds = 0;  // 0 = no time limit
    std::vector<std::string> notes;               // mismatches and measurements
  };

  struct GoldenCase {
    std::string      name;
    std::vector<int> params;

    std::string file_name() const {
      std::string out = name;
      for (int p : params) {
        out += "_" + std::to_string(p);
      }
      return out + ".txt";
    }

    std::string ref() const {
      std::string out = "builtin:" + name;
      if (!params.empty()) {
        out += "[";
        for (std::size_t i = 0; i < params.size(); ++i) {
          out += (i == 0 ? "" : ",") + std::to_string(params[i]);
        }
        out += "]";
      }
      return out;
    }
  };

  // Every catalog builder; parametric ones at the fixed parameter values.
  inline std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> out;
    for (auto const& e : catalog()) {
      if (e.params.empty()) {
        out.push_back({e.name, {}});
      }
    }
    for (int m = 0; m <= 4; ++m) {
      out.push_back({"Cm", {m}});
    }
    for (int m = 1; m <= 4; ++m) {
      out.push_back({"Dm", {m}});
    }
    for (int t = 2; t <= 4; ++t) {
      out.push_back({"AGe", {t}});
    }
    for (int n = 1; n <= 4; ++n) {
      out.push_back({"An", {n}});
    }
    for (int n = 1; n <= 4; ++n) {
      for (int m = 0; m <= 3; ++m) {
        out.push_back({"MonoidVar", {n, m}});
      }
    }
    return out;
  }

  inline std::string golden_text(GoldenCase const& c) {
    return to_string(build(c.name, c.params)) + "\n";
  }

  inline void write_golden(std::filesystem::path const& dir) {
    std::filesystem::create_directories(dir);
    for (auto const& c : golden_cases()) {
      std::ofstream(dir / c.file_name(), std::ios::binary) << golden_text(c);
    }
  }

  namespace detail {

    class Stopwatch {
     public:
      double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - _start)
            .count();
      }

     private:
      std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();
    };

    inline std::string join_labels(std::vector<std::string> const& v) {
      std::string out = "{";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i == 0 ? "" : ", ") + v[i];
      }
      return out + "}";
    }

    inline void finish(CheckResult& r, Stopwatch const& sw, bool ok) {
      r.seconds = sw.seconds();
      r.passed  = ok && (r.limit_seconds == 0 || r.seconds < r.limit_seconds);
      if (ok && !r.passed) {
        r.notes.push_back("over the time limit of " + std::to_string(r.limit_seconds) + " s");
      }
    }

    // A closure-system lattice with 5 to 40 elements.
    inline FiniteLattice random_lattice_in_range(std::mt19937_64& rng) {
      for (;;) {
        auto l = random_lattice(rng(), 4 + rng() % 5);
        if (l.size() >= 5 && l.size() <= 40) {
          return l;
        }
      }
    }

    inline std::vector<CommutativeWord> words_up_to(std::size_t letters, unsigned degree) {
      std::vector<CommutativeWord>      out;
      std::array<unsigned, kMaxLetters> caps{};
      caps.fill(255);
      comlat::detail::for_each_vector(letters, caps, degree, [&](CommutativeWord const& w) {
        out.push_back(w);
      });
      return out;
    }

    // Compares a defined set with a ground-truth predicate; records the
    // difference in r.notes.
    template <typename Pred>
    bool compare_set(CheckResult&         r,
                     Universe const&      u,
                     RelationalEvaluator& ev,
                     std::string const&   name,
                     std::vector<int>     params,
                     Pred&&               truth) {
      GoldenCase c{name, params};
      auto       got = ev.defined_set(build(name, params)).labels(u.lattice());
      std::vector<std::string> want;
      for (ElementId e = 0; e < u.size(); ++e) {
        if (truth(e)) {
          want.push_back(u.name(e));
        }
      }
      std::sort(want.begin(), want.end());
      if (got == want) {
        return true;
      }
      std::vector<std::string> extra;
      std::vector<std::string> missing;
      std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                          std::back_inserter(extra));
      std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                          std::back_inserter(missing));
      r.notes.push_back(c.ref() + ": extra " + join_labels(extra) + ", missing "
                        + join_labels(missing));
      return false;
    }

  }  // namespace detail

  // 1. Catalog formulas against the semantic oracles on random lattices.
  inline CheckResult oracles_on_random_lattices(std::uint64_t seed = 1) {
    CheckResult r{1, "evaluator agrees with semantic oracles on 100 random lattices"};
    r.limit_seconds = 60;
    detail::Stopwatch sw;
    std::mt19937_64   rng(seed);
    auto const        neut = build("Neut");
    auto const        atom = build("A");
    auto const        ch   = build("Ch");
    auto const        lmod = build("LMod");
    bool              ok   = true;
    for (int i = 0; i < 100; ++i) {
      auto                l = detail::random_lattice_in_range(rng);
      RelationalEvaluator ev(l);
      auto check = [&](char const* what, ElementSubset const& got, ElementSubset const& want) {
        if (got != want) {
          ok = false;
          r.notes.push_back(std::string(what) + " differs on lattice #" + std::to_string(i));
        }
      };
      check("Neut", ev.defined_set(neut), select(l, semantic_neutral));
      check("A", ev.defined_set(atom), semantic_atoms(l));
      check("Ch", ev.defined_set(ch), select(l, semantic_chain_downset));
      check("LMod", ev.defined_set(lmod), select(l, semantic_lower_modular));
      for (int k = 0; k < 20; ++k) {
        auto phi = random_unary_formula(rng, {.max_depth = 2});
        auto got = ev.defined_set(comlat::min("x", phi));
        auto want = semantic_minimal(l, ev.defined_set(phi));
        if (got != want) {
          ok = false;
          r.notes.push_back("min differs for " + to_string(phi));
        }
      }
    }
    detail::finish(r, sw, ok);
    return r;
  }

  // 2. Bottom-up evaluation against direct recursive evaluation.
  inline CheckResult relational_vs_naive(std::uint64_t seed = 2) {
    CheckResult r{2, "relational evaluation equals naive evaluation on 200 instances"};
    r.limit_seconds = 30;
    detail::Stopwatch sw;
    std::mt19937_64   rng(seed);
    bool              ok = true;
    for (int i = 0; i < 200; ++i) {
      FiniteLattice l;
      do {
        l = random_lattice(rng(), 1 + rng() % 4);
      } while (l.size() > 10);
      auto f   = random_formula(rng, {.max_depth = 3});
      auto t   = relation(l, f);
      auto fv  = free_vars(f);
      bool bad = false;
      comlat::detail::for_each_tuple(l.size(), fv.size(), [&](auto const& tuple, std::size_t) {
        Assignment env;
        for (std::size_t j = 0; j < fv.size(); ++j) {
          env[fv[j]] = tuple[j];
        }
        if (t.contains(env) != evaluate_naive(l, f, env)) {
          bad = true;
        }
      });
      if (bad) {
        ok = false;
        r.notes.push_back("disagreement on " + to_string(f));
      }
    }
    detail::finish(r, sw, ok);
    return r;
  }

  // 3. Printed catalog formulas against the versioned text fixtures.
  inline CheckResult golden_formulas(std::filesystem::path const& golden_dir) {
    CheckResult r{3, "printed catalog formulas match the golden fixtures"};
    detail::Stopwatch sw;
    bool              ok    = true;
    std::size_t       count = 0;
    for (auto const& c : golden_cases()) {
      std::ifstream in(golden_dir / c.file_name(), std::ios::binary);
      if (!in) {
        ok = false;
        r.notes.push_back("missing fixture " + c.file_name());
        continue;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      if (buf.str() != golden_text(c)) {
        ok = false;
        r.notes.push_back(c.ref() + " differs from " + c.file_name());
      }
      ++count;
    }
    r.notes.push_back(std::to_string(count) + " fixtures compared");
    detail::finish(r, sw, ok);
    return r;
  }

  // 4. Closed-form satisfaction against search from the defining bases.
  inline CheckResult closed_forms_vs_derivation() {
    CheckResult r{4, "closed-form satisfies equals bfs_consequence (<= 3 letters, degree <= 8)"};
    r.limit_seconds = 120;
    detail::Stopwatch              sw;
    std::vector<VarietyDescriptor> families;
    for (int n = 1; n <= 6; ++n) {
      families.push_back(abelian_group(n));
    }
    for (int m = 0; m <= 4; ++m) {
      families.push_back(cyclic_monoid(m));
    }
    for (int k = 1; k <= 5; ++k) {
      families.push_back(nil_d(k));
    }
    for (int k = 1; k <= 4; ++k) {
      families.push_back(nil_n(k));
    }
    families.push_back(nil_n3c());
    auto const words = detail::words_up_to(3, 8);
    bool       ok    = true;
    std::size_t compared = 0;
    for (auto const& d : families) {
      // zero identities on 3 letters use a fourth; detours stay below 2 x 8
      DerivationClosure closure(d.basis(), {4, 18});
      std::size_t       bad = 0;
      for (auto const& u : words) {
        bad += d.satisfies(Identity::zero(u)) != closure.derives(Identity::zero(u));
        for (auto const& v : words) {
          auto id = Identity::balanced(u, v);
          bad += d.satisfies(id) != closure.derives(id);
        }
        compared += words.size() + 1;
      }
      if (bad != 0) {
        ok = false;
        r.notes.push_back(d.name() + ": " + std::to_string(bad) + " disagreements");
      }
    }
    r.notes.push_back(std::to_string(compared) + " identity checks");
    detail::finish(r, sw, ok);
    return r;
  }

  // 5. Named equalities inside the fragment's identity space.
  inline CheckResult model_facts(Universe const& f2) {
    CheckResult r{5, "D_2 = N_ω, C_1 = SL, and Nil(C_m) = D_m for m <= 4"};
    detail::Stopwatch sw;
    auto const&       space = f2.space();
    bool              ok    = true;
    auto n_omega = custom_variety({parse_identity("x^2 = 0")}, "N_ω");
    if (space.profile(nil_d(2)) != space.profile(n_omega)) {
      ok = false;
      r.notes.push_back("profile(NilD(2)) differs from profile of {x^2 = 0}");
    }
    auto const& b = space.bounds();
    auto sl = custom_variety({parse_identity("x^2 = x")}, "SL",
                             DerivationBounds{5, std::max({b.dA, b.dB, b.dC, b.dS})});
    if (space.profile(cyclic_monoid(1)) != space.profile(sl)) {
      ok = false;
      r.notes.push_back("profile(CyclicMonoid(1)) differs from profile of {x^2 = x}");
    }
    for (int m = 1; m <= 4; ++m) {
      auto c = f2.element_of(cyclic_monoid(m));
      auto d = f2.element_of(nil_d(m));
      if (!c || !d) {
        ok = false;
        r.notes.push_back("C_" + std::to_string(m) + " or D_" + std::to_string(m) + " missing");
        continue;
      }
      if (nil_part(f2, *c) != *d) {
        ok = false;
        r.notes.push_back("nil_part(" + f2.name(*c) + ") = " + f2.name(nil_part(f2, *c)));
      }
    }
    detail::finish(r, sw, ok);
    return r;
  }

  // 6. Definable sets on F2 against the labels.
  inline CheckResult definability_f2(Universe const& u) {
    CheckResult r{6, "F2: defined sets equal labeled ground truth"};
    r.limit_seconds = 600;
    detail::Stopwatch   sw;
    RelationalEvaluator ev(u.lattice());
    auto const L  = [&](ElementId e) -> ElementLabels const& { return u.labels(e); };
    auto const is = [&](std::string const& name) {
      return [&u, name](ElementId e) { return u.name(e) == name; };
    };
    auto const is_element = [&](VarietyDescriptor const& d) {
      auto found = u.element_of(d);
      return [found](ElementId e) { return found && *found == e; };
    };
    auto const monoid = [&](int n, int m) {
      return [&L, n, m](ElementId e) {
        return L(e).is_periodic && L(e).monoid && L(e).n == n && L(e).m == m;
      };
    };
    bool ok = true;
    auto check = [&](std::string const& name, std::vector<int> params, auto truth) {
      ok = detail::compare_set(r, u, ev, name, std::move(params), truth) && ok;
    };
    check("A", {}, [&](ElementId e) { return L(e).is_atom; });
    check("Neut", {}, [&](ElementId e) { return L(e).is_neutral; });
    check("Ch", {}, [&](ElementId e) { return L(e).is_chain; });
    check("SL", {}, is("SL"));
    check("ZM", {}, is("ZM"));
    check("GrA", {}, is("A_2"));
    check("Gr", {}, [&](ElementId e) { return L(e).is_group; });
    check("Comb", {}, [&](ElementId e) { return L(e).is_comb; });
    check("Nil", {}, [&](ElementId e) { return L(e).is_nil; });
    check("ZeroRed", {}, [&](ElementId e) { return L(e).is_zero_reduced; });
    check("Per", {}, [&](ElementId e) { return !u.element(e).is_top; });
    for (int m = 0; m <= 4; ++m) {
      check("Cm", {m}, is_element(cyclic_monoid(m)));
    }
    for (int m = 2; m <= 4; ++m) {
      check("Dm", {m}, is_element(nil_d(m)));
    }
    check("An", {2}, is("A_2"));
    check("An", {3}, [](ElementId) { return false; });
    check("An", {4}, is("A_4"));
    for (int n : {1, 2, 4}) {
      for (int m = 0; m <= 3; ++m) {
        check("MonoidVar", {n, m}, monoid(n, m));
      }
    }
    r.notes.push_back(std::to_string(u.size()) + " elements");
    detail::finish(r, sw, ok);
    return r;
  }

  // 7. Light formulas on F1.
  inline CheckResult definability_f1(Universe const& u) {
    CheckResult r{7, "F1: light formulas equal labeled ground truth"};
    r.limit_seconds = 600;
    detail::Stopwatch   sw;
    RelationalEvaluator ev(u.lattice());
    auto const L  = [&](ElementId e) -> ElementLabels const& { return u.labels(e); };
    auto const is_element = [&](VarietyDescriptor const& d) {
      auto found = u.element_of(d);
      return [found](ElementId e) { return found && *found == e; };
    };
    bool ok = true;
    auto check = [&](std::string const& name, std::vector<int> params, auto truth) {
      ok = detail::compare_set(r, u, ev, name, std::move(params), truth) && ok;
    };
    check("A", {}, [&](ElementId e) { return L(e).is_atom; });
    check("Neut", {}, [&](ElementId e) { return L(e).is_neutral; });
    check("Ch", {}, [&](ElementId e) { return L(e).is_chain; });
    check("SL", {}, [&](ElementId e) { return u.name(e) == "SL"; });
    check("ZM", {}, [&](ElementId e) { return u.name(e) == "ZM"; });
    check("GrA", {}, [&](ElementId e) { return u.name(e) == "A_2" || u.name(e) == "A_3"; });
    check("Gr", {}, [&](ElementId e) { return L(e).is_group; });
    check("Comb", {}, [&](ElementId e) { return L(e).is_comb; });
    check("Nil", {}, [&](ElementId e) { return L(e).is_nil; });
    for (int m = 0; m <= u.spec().max_m; ++m) {
      check("Cm", {m}, is_element(cyclic_monoid(m)));
    }
    for (int m = 2; m <= u.spec().max_m; ++m) {
      check("Dm", {m}, is_element(nil_d(m)));
    }
    r.notes.push_back(std::to_string(u.size()) + " elements");
    detail::finish(r, sw, ok);
    return r;
  }

  inline std::vector<std::pair<int, int>> lemma8_pairs() {
    return {{2, 4}, {3, 4}, {2, 5}, {3, 5}, {4, 5}};
  }

  // 8. nil_part(A_n ∨ X) against zr(X) over the nil X below D_m.
  inline CheckResult lemma8(Universe const& u, std::vector<Lemma8Report>* rows = nullptr) {
    CheckResult r{8, "nil_part(A_n ∨ X) = zr(X) exactly when n >= m - 1"};
    detail::Stopwatch sw;
    bool              ok = true;
    for (auto [n, m] : lemma8_pairs()) {
      auto rep = lemma8_check(u, n, m);
      std::string line = "(" + std::to_string(n) + "," + std::to_string(m) + "): "
                         + std::to_string(rep.checked) + " checked, "
                         + std::to_string(rep.failures.size()) + " unequal";
      if (!rep.expect_equal) {
        line += rep.witness_found ? ", X_{n,m} witness found" : ", X_{n,m} witness missing";
      }
      r.notes.push_back(line);
      ok = ok && rep.passed();
      if (rows) {
        rows->push_back(std::move(rep));
      }
    }
    detail::finish(r, sw, ok);
    return r;
  }

  // 9. V = C_m ∨ Nil(V) for combinatorial V, and unique (n, m).
  inline CheckResult decomposition(Universe const& u) {
    CheckResult r{9, "F2: decomposition and uniqueness of (n,m)"};
    detail::Stopwatch sw;
    auto              rep = decomposition_check(u);
    r.notes               = rep.failures;
    r.notes.push_back(std::to_string(rep.checked) + " checks");
    detail::finish(r, sw, rep.passed());
    return r;
  }

  // 10. The labeled lattice does not change when the space grows.
  inline CheckResult stability(Universe const& u) {
    CheckResult r{10, "F2: degree bounds +2 give an isomorphic labeled lattice"};
    r.limit_seconds = 300;
    detail::Stopwatch sw;
    auto              spec = u.spec();
    spec.space             = spec.space.raised(2);
    auto big               = build_universe(spec);
    bool ok                = big.size() == u.size();
    if (!ok) {
      r.notes.push_back("element count " + std::to_string(u.size()) + " vs "
                        + std::to_string(big.size()));
    } else {
      std::vector<ElementId> image(u.size());
      for (ElementId e = 0; e < u.size() && ok; ++e) {
        auto f = big.find(u.name(e));
        if (!f || big.labels(*f) != u.labels(e)) {
          ok = false;
          r.notes.push_back("element " + u.name(e) + " has no matching counterpart");
          break;
        }
        image[e] = *f;
      }
      for (ElementId a = 0; a < u.size() && ok; ++a) {
        for (ElementId b = 0; b < u.size() && ok; ++b) {
          if (u.lattice().leq(a, b) != big.lattice().leq(image[a], image[b])) {
            ok = false;
            r.notes.push_back("order differs at " + u.name(a) + " <= " + u.name(b));
          }
        }
      }
    }
    r.notes.push_back(std::to_string(u.size()) + " elements, space "
                      + std::to_string(u.space().size()) + " -> "
                      + std::to_string(big.space().size()) + " identities");
    detail::finish(r, sw, ok);
    return r;
  }

  inline std::vector<std::string> suite_names() {
    return {"oracles", "paper-F2", "paper-F1", "lemma8", "all"};
  }

  inline Universe load_universe(std::filesystem::path const& spec_file) {
    return build_universe(universe_spec_from_json(read_json_file(spec_file.string())));
  }

  // Runs the named suite against the fixtures in `fixtures` (F2.json,
  // F1.json, lemma8.json, golden/). Unknown names raise UnknownName.
  inline std::vector<CheckResult> run_suite(std::string const&           suite,
                                            std::filesystem::path const& fixtures,
                                            std::function<void(CheckResult const&)> const& on_result
                                            = {}) {
    auto const names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
      throw UnknownName("unknown suite \"" + suite + "\"");
    }
    std::vector<CheckResult> out;
    auto emit = [&](CheckResult r) {
      if (on_result) {
        on_result(r);
      }
      out.push_back(std::move(r));
    };
    bool const all = suite == "all";
    if (all || suite == "oracles") {
      emit(oracles_on_random_lattices());
      emit(relational_vs_naive());
      emit(golden_formulas(fixtures / "golden"));
      emit(closed_forms_vs_derivation());
    }
    if (all || suite == "paper-F2") {
      auto f2 = load_universe(fixtures / "F2.json");
      emit(model_facts(f2));
      emit(definability_f2(f2));
      emit(decomposition(f2));
      emit(stability(f2));
    }
    if (all || suite == "paper-F1") {
      emit(definability_f1(load_universe(fixtures / "F1.json")));
    }
    if (all || suite == "lemma8") {
      emit(lemma8(load_universe(fixtures / "lemma8.json")));
    }
    std::sort(out.begin(), out.end(),
              [](CheckResult const& a, CheckResult const& b) { return a.criterion < b.criterion; });
    return out;
  }

  inline nlohmann::json to_json(CheckResult const& r) {
    return {{"criterion", r.criterion},
            {"title", r.title},
            {"passed", r.passed},
            {"seconds", r.seconds},
            {"notes", r.notes}};
  }

}  // namespace comlat::verify
