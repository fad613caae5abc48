#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "identity_space.hpp"
#include "lattice.hpp"
#include "lattice_io.hpp"
#include "variety.hpp"

namespace comlat {

  struct NilSpec {
    std::string              family;  // "D", "N", "N3c" or "custom"
    int                      k = 0;
    std::vector<std::string> basis;   // custom only
    std::string              name;    // custom only, optional
  };

  struct UniverseSpec {
    std::vector<int>     group_exponents = {1};
    int                  max_m           = 0;
    std::vector<NilSpec> nil;
    SpaceBounds          space;
    std::size_t          max_elements = 5000;
  };

  inline UniverseSpec universe_spec_from_json(nlohmann::json const& doc) {
    UniverseSpec spec;
    try {
      if (!doc.is_object()) {
        throw InputError("universe spec must be a JSON object");
      }
      spec.group_exponents = doc.value("group_exponents", std::vector<int>{1});
      spec.max_m           = doc.value("max_m", 0);
      spec.max_elements    = doc.value("max_elements", spec.max_elements);
      for (auto const& n : doc.value("nil", nlohmann::json::array())) {
        NilSpec ns;
        ns.family = n.at("family").get<std::string>();
        ns.k      = n.value("k", 0);
        ns.basis  = n.value("basis", std::vector<std::string>{});
        ns.name   = n.value("name", std::string{});
        spec.nil.push_back(std::move(ns));
      }
      if (doc.contains("space")) {
        auto const& s = doc.at("space");
        spec.space.dA = s.value("dA", spec.space.dA);
        spec.space.dB = s.value("dB", spec.space.dB);
        spec.space.dC = s.value("dC", spec.space.dC);
        spec.space.dS = s.value("dS", spec.space.dS);
      }
    } catch (nlohmann::json::exception const& e) {
      throw InputError(std::string("malformed universe spec: ") + e.what());
    }
    return spec;
  }

  inline nlohmann::json universe_spec_to_json(UniverseSpec const& spec) {
    nlohmann::json doc;
    doc["group_exponents"] = spec.group_exponents;
    doc["max_m"]           = spec.max_m;
    doc["nil"]             = nlohmann::json::array();
    for (auto const& n : spec.nil) {
      nlohmann::json e{{"family", n.family}};
      if (n.family == "D" || n.family == "N") {
        e["k"] = n.k;
      }
      if (n.family == "custom") {
        e["basis"] = n.basis;
        if (!n.name.empty()) {
          e["name"] = n.name;
        }
      }
      doc["nil"].push_back(std::move(e));
    }
    doc["space"] = {{"dA", spec.space.dA}, {"dB", spec.space.dB}, {"dC", spec.space.dC}};
    if (spec.space.dS > 0) {
      doc["space"]["dS"] = spec.space.dS;
    }
    return doc;
  }

  struct ElementLabels {
    std::string name;
    bool        is_atom         = false;
    bool        is_neutral      = false;
    bool        is_chain        = false;
    bool        is_group        = false;
    bool        is_comb         = false;
    bool        is_nil          = false;
    bool        is_zero_reduced = false;
    bool        is_periodic     = false;
    int         n               = 1;  // group exponent, periodic elements only
    int         m               = 0;  // cyclic monoid index, periodic elements only
    bool        monoid          = false;  // equal to A_n ∨ C_m

    friend bool operator==(ElementLabels const&, ElementLabels const&) = default;
  };

  enum class GeneratorRole { group, monoid, nil };

  struct Generator {
    VarietyDescriptor variety;
    GeneratorRole     role;
    IdentityProfile   profile;
  };

  struct ElementInfo {
    IdentityProfile          profile;
    std::vector<std::size_t> generators;  // indices of generators below
    bool                     is_top = false;
    ElementLabels            labels;
  };

  // A finite join-closed family of varieties ordered by inclusion, each
  // represented by the identities it satisfies inside a fixed space.
  class Universe {
   public:
    UniverseSpec const& spec() const noexcept {
      return _spec;
    }

    IdentitySpace const& space() const noexcept {
      return *_space;
    }

    FiniteLattice const& lattice() const noexcept {
      return _lattice;
    }

    std::vector<Generator> const& generators() const noexcept {
      return _generators;
    }

    std::size_t size() const noexcept {
      return _elements.size();
    }

    ElementInfo const& element(ElementId e) const {
      return _elements.at(e);
    }

    ElementLabels const& labels(ElementId e) const {
      return _elements.at(e).labels;
    }

    std::string const& name(ElementId e) const {
      return _elements.at(e).labels.name;
    }

    std::optional<ElementId> find(std::string const& name) const {
      return _lattice.find(name);
    }

    ElementId at(std::string const& name) const {
      if (auto e = find(name)) {
        return *e;
      }
      throw NotInUniverse(name + " is not an element of the universe");
    }

    std::optional<ElementId> element_of(IdentityProfile const& p) const {
      auto it = _by_profile.find(p);
      if (it == _by_profile.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    std::optional<ElementId> element_of(VarietyDescriptor const& d) const {
      return element_of(_space->profile(d));
    }

    // The join of the generators below e, as a variety (COM for the top).
    VarietyDescriptor descriptor(ElementId e) const {
      auto const& info = _elements.at(e);
      if (info.is_top) {
        return com_top();
      }
      std::vector<VarietyDescriptor> parts;
      for (auto g : maximal_generators(e)) {
        parts.push_back(_generators[g].variety);
      }
      return join_of(std::move(parts));
    }

    // The join of the nil generators below e.
    VarietyDescriptor nil_descriptor(ElementId e) const {
      std::vector<VarietyDescriptor> parts;
      for (auto g : _elements.at(e).generators) {
        if (_generators[g].role == GeneratorRole::nil) {
          parts.push_back(_generators[g].variety);
        }
      }
      return join_of(std::move(parts));
    }

    std::vector<std::size_t> maximal_generators(ElementId e) const {
      auto const&              below = _elements.at(e).generators;
      std::vector<std::size_t> out;
      for (auto g : below) {
        bool dominated = false;
        for (auto h : below) {
          if (h != g && _generators[h].profile.is_subset_of(_generators[g].profile)
              && _generators[h].profile != _generators[g].profile) {
            dominated = true;
            break;
          }
        }
        if (!dominated) {
          out.push_back(g);
        }
      }
      return out;
    }

    friend Universe build_universe(UniverseSpec const& spec);

   private:
    UniverseSpec                                                 _spec;
    std::shared_ptr<IdentitySpace>                               _space;
    std::vector<Generator>                                       _generators;
    std::vector<ElementInfo>                                     _elements;
    FiniteLattice                                                _lattice;
    std::unordered_map<IdentityProfile, ElementId, BitsetHash>   _by_profile;
  };

  namespace detail {

    inline bool is_prime(int p) {
      if (p < 2) {
        return false;
      }
      for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
          return false;
        }
      }
      return true;
    }

    inline bool is_prime_power(int q) {
      for (int p = 2; p <= q; ++p) {
        if (q % p == 0) {
          while (q % p == 0) {
            q /= p;
          }
          return q == 1;
        }
      }
      return false;
    }

    inline void check_exponents(std::vector<int> const& exps) {
      if (exps.empty()) {
        throw InputError("group_exponents must not be empty");
      }
      for (int a : exps) {
        if (a < 1) {
          throw InputError("group exponents must be positive");
        }
        auto has = [&](int v) { return std::find(exps.begin(), exps.end(), v) != exps.end(); };
        for (int d = 1; d <= a; ++d) {
          if (a % d == 0 && !has(d)) {
            throw InputError("group_exponents must be closed under divisors: "
                             + std::to_string(d) + " divides " + std::to_string(a));
          }
        }
        for (int b : exps) {
          if (!has(std::lcm(a, b))) {
            throw InputError("group_exponents must be closed under lcm: lcm("
                             + std::to_string(a) + ", " + std::to_string(b) + ")");
          }
        }
      }
    }

    inline VarietyDescriptor nil_generator(NilSpec const& n) {
      if (n.family == "D") {
        if (n.k < 2) {
          throw InputError("nil family D needs k >= 2");
        }
        return nil_d(n.k);
      }
      if (n.family == "N") {
        if (n.k < 2) {
          throw InputError("nil family N needs k >= 2");
        }
        return nil_n(n.k);
      }
      if (n.family == "N3c") {
        return nil_n3c();
      }
      if (n.family == "custom") {
        if (n.basis.empty()) {
          throw InputError("custom nil variety needs a basis");
        }
        std::vector<Identity> basis;
        for (auto const& b : n.basis) {
          basis.push_back(parse_identity(b));
        }
        bool has_zero = std::any_of(basis.begin(), basis.end(),
                                    [](Identity const& i) { return i.is_zero(); });
        if (!has_zero) {
          throw InputError("custom nil variety needs an identity of the form w = 0");
        }
        auto name = n.name;
        if (name.empty()) {
          name = "X[" + std::to_string(n.basis.size()) + "]";
          for (auto const& b : n.basis) {
            name += b + ";";
          }
        }
        return custom_variety(std::move(basis), std::move(name));
      }
      throw InputError("unknown nil family \"" + n.family + "\"");
    }

  }  // namespace detail

  inline Universe build_universe(UniverseSpec const& spec) {
    detail::check_exponents(spec.group_exponents);
    if (spec.max_m < 0) {
      throw InputError("max_m must be non-negative");
    }
    Universe u;
    u._spec  = spec;
    u._space = std::make_shared<IdentitySpace>(spec.space);
    auto const& space = *u._space;

    std::vector<std::pair<VarietyDescriptor, GeneratorRole>> candidates;
    candidates.emplace_back(trivial_variety(), GeneratorRole::group);
    auto exps = spec.group_exponents;
    std::sort(exps.begin(), exps.end());
    for (int n : exps) {
      if (n > 1) {
        candidates.emplace_back(abelian_group(n), GeneratorRole::group);
      }
    }
    for (int m = 1; m <= spec.max_m; ++m) {
      candidates.emplace_back(cyclic_monoid(m), GeneratorRole::monoid);
    }
    std::vector<VarietyDescriptor> hulls;
    for (auto const& n : spec.nil) {
      auto d = detail::nil_generator(n);
      if (d.kind() == VarietyKind::custom) {
        hulls.push_back(zr_hull(d));
      }
      candidates.emplace_back(std::move(d), GeneratorRole::nil);
    }
    for (auto& h : hulls) {
      candidates.emplace_back(std::move(h), GeneratorRole::nil);
    }

    for (auto const& [d, role] : candidates) {
      if (d.kind() == VarietyKind::zr_hull) {
        continue;
      }
      for (auto const& id : d.basis()) {
        if (!space.contains(id)) {
          throw InputError("basis identity " + to_string(id) + " of " + d.name()
                           + " lies outside the identity space");
        }
      }
    }

    std::unordered_map<IdentityProfile, std::size_t, BitsetHash> seen;
    for (auto& [d, role] : candidates) {
      auto p = space.profile(d);
      if (seen.contains(p)) {
        continue;
      }
      seen.emplace(p, u._generators.size());
      u._generators.push_back({std::move(d), role, std::move(p)});
    }

    std::vector<IdentityProfile>                                 profiles;
    std::unordered_map<IdentityProfile, std::size_t, BitsetHash> index;
    auto add = [&](IdentityProfile p) {
      if (index.contains(p)) {
        return;
      }
      if (profiles.size() >= spec.max_elements) {
        throw NotJoinClosed("the join closure exceeds "
                            + std::to_string(spec.max_elements) + " elements");
      }
      index.emplace(p, profiles.size());
      profiles.push_back(std::move(p));
    };
    for (auto const& g : u._generators) {
      add(g.profile);
    }
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      for (auto const& g : u._generators) {
        add(profiles[i] & g.profile);
      }
    }
    auto top = space.profile(com_top());
    if (index.contains(top)) {
      throw InputError("the identity space cannot separate the join of all generators from COM;"
                       " raise its degree bounds");
    }

    std::vector<ElementInfo> elements;
    for (auto& p : profiles) {
      ElementInfo info;
      info.profile = std::move(p);
      for (std::size_t g = 0; g < u._generators.size(); ++g) {
        if (info.profile.is_subset_of(u._generators[g].profile)) {
          info.generators.push_back(g);
        }
      }
      elements.push_back(std::move(info));
    }
    ElementInfo top_info;
    top_info.profile = top;
    top_info.is_top  = true;
    elements.push_back(std::move(top_info));

    // names: the maximal generators below, joined
    u._elements = std::move(elements);
    for (ElementId e = 0; e < u._elements.size(); ++e) {
      auto& info = u._elements[e];
      if (info.is_top) {
        info.labels.name = "COM";
        continue;
      }
      std::string name;
      for (auto g : u.maximal_generators(e)) {
        name += (name.empty() ? "" : "∨") + u._generators[g].variety.name();
      }
      info.labels.name = name;
    }

    std::vector<std::size_t> downsize(u._elements.size(), 0);
    for (std::size_t a = 0; a < u._elements.size(); ++a) {
      for (std::size_t b = 0; b < u._elements.size(); ++b) {
        if (u._elements[a].profile.is_subset_of(u._elements[b].profile)) {
          ++downsize[a];
        }
      }
    }
    std::vector<std::size_t> order(u._elements.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::pair(downsize[a], u._elements[a].labels.name)
             < std::pair(downsize[b], u._elements[b].labels.name);
    });
    std::vector<ElementInfo> sorted;
    for (auto i : order) {
      sorted.push_back(std::move(u._elements[i]));
    }
    u._elements = std::move(sorted);

    std::vector<std::string> names;
    for (ElementId e = 0; e < u._elements.size(); ++e) {
      names.push_back(u._elements[e].labels.name);
      u._by_profile.emplace(u._elements[e].profile, e);
    }
    u._lattice = build_from_order(names, [&](std::size_t a, std::size_t b) {
      return u._elements[b].profile.is_subset_of(u._elements[a].profile);
    });

    // labels
    std::vector<IdentityProfile> atom_profiles{space.profile(cyclic_monoid(1)),
                                               space.profile(nil_n(2))};
    std::vector<IdentityProfile> chain_profiles{space.profile(trivial_variety()),
                                                space.profile(cyclic_monoid(1)),
                                                space.profile(nil_d(2)),
                                                space.profile(nil_n3c())};
    for (int k = 2; k <= 6; ++k) {
      chain_profiles.push_back(space.profile(nil_n(k)));
    }
    for (int n : exps) {
      if (detail::is_prime(n)) {
        atom_profiles.push_back(space.profile(abelian_group(n)));
      }
      if (detail::is_prime_power(n)) {
        chain_profiles.push_back(space.profile(abelian_group(n)));
      }
    }
    auto x2y = Identity::zero(CommutativeWord::letter(0, 2) + CommutativeWord::letter(1));
    for (ElementId e = 0; e < u._elements.size(); ++e) {
      auto& info = u._elements[e];
      auto& l    = info.labels;
      if (info.is_top) {
        l.is_neutral = true;
        continue;
      }
      bool has_group = false;
      bool has_monoid = false;
      bool has_nil    = false;
      for (auto g : info.generators) {
        auto const& gen = u._generators[g];
        switch (gen.role) {
          case GeneratorRole::group:
            if (gen.variety.kind() == VarietyKind::abelian_group) {
              has_group = true;
              l.n       = std::lcm(l.n, gen.variety.param());
            }
            break;
          case GeneratorRole::monoid:
            has_monoid = true;
            l.m        = std::max(l.m, gen.variety.param());
            break;
          case GeneratorRole::nil:
            has_nil = true;
            break;
        }
      }
      auto const& p  = info.profile;
      auto const  eq = [&](IdentityProfile const& q) { return p == q; };
      l.is_periodic  = true;
      l.is_group     = !has_monoid && !has_nil;
      l.is_comb      = !has_group;
      l.is_nil       = !has_group && !has_monoid;
      l.is_atom      = std::any_of(atom_profiles.begin(), atom_profiles.end(), eq);
      l.is_chain     = std::any_of(chain_profiles.begin(), chain_profiles.end(), eq);
      l.monoid       = p == space.profile(join_of({abelian_group(l.n), cyclic_monoid(l.m)}));
      auto nil       = u.nil_descriptor(e);
      l.is_neutral   = !has_group && l.m <= 1 && nil.satisfies(x2y);
      l.is_zero_reduced = l.is_nil && p == space.profile(zr_hull(nil));
    }
    return u;
  }

  inline nlohmann::json labels_to_json(ElementLabels const& l) {
    nlohmann::json j{{"name", l.name},
                     {"is_atom", l.is_atom},
                     {"is_neutral", l.is_neutral},
                     {"is_chain", l.is_chain},
                     {"is_group", l.is_group},
                     {"is_comb", l.is_comb},
                     {"is_nil", l.is_nil},
                     {"is_zero_reduced", l.is_zero_reduced},
                     {"is_periodic", l.is_periodic}};
    if (l.is_periodic) {
      j["n"]      = l.n;
      j["m"]      = l.m;
      j["monoid"] = l.monoid;
    }
    return j;
  }

  // Lattice JSON with a "labels" object on every element.
  inline nlohmann::json universe_to_json(Universe const& u) {
    auto doc = lattice_to_json(u.lattice());
    for (auto& e : doc["elements"]) {
      e["labels"] = labels_to_json(u.labels(e.at("id").get<ElementId>()));
    }
    return doc;
  }

  // Greatest nil element below e.
  inline ElementId nil_part(Universe const& u, ElementId e) {
    if (u.element(e).is_top) {
      throw TopHasNoNilPart("COM has no greatest nil subvariety");
    }
    auto found = u.element_of(u.nil_descriptor(e));
    if (!found) {
      throw NotInUniverse("nil part of " + u.name(e) + " is missing");
    }
    return *found;
  }

  inline IdentityProfile zr_profile(Universe const& u, ElementId e) {
    if (!u.labels(e).is_nil) {
      throw NotNil(u.name(e) + " is not a nil variety");
    }
    return u.space().profile(zr_hull(u.nil_descriptor(e)));
  }

  // 0-reduced hull of a nil element.
  inline ElementId zr(Universe const& u, ElementId e) {
    auto found = u.element_of(zr_profile(u, e));
    if (!found) {
      throw NotInUniverse("the 0-reduced hull of " + u.name(e) + " is not in the universe");
    }
    return *found;
  }

  struct Lemma8Failure {
    std::string x;
    std::string nil_part;
    std::string zr;
  };

  struct Lemma8Report {
    int                        n = 0;
    int                        m = 0;
    std::size_t                checked = 0;
    std::vector<Lemma8Failure> failures;
    bool                       expect_equal = false;  // n >= m - 1
    bool                       witness_found = false;  // X_{n,m} among the failures

    bool all_equal() const noexcept {
      return failures.empty();
    }

    bool passed() const noexcept {
      return expect_equal ? all_equal() : witness_found;
    }
  };

  // Compares nil_part(A_n ∨ X) with zr(X) for every nil X below D_m.
  inline Lemma8Report lemma8_check(Universe const& u, int n, int m) {
    if (n < 2 || m < 3) {
      throw ParamOutOfRange("lemma8_check needs n >= 2 and m >= 3");
    }
    auto a = u.element_of(abelian_group(n));
    auto d = u.element_of(nil_d(m));
    if (!a || !d) {
      throw NotInUniverse("A_" + std::to_string(n) + " or D_" + std::to_string(m)
                          + " is not in the universe");
    }
    Lemma8Report r;
    r.n            = n;
    r.m            = m;
    r.expect_equal = n >= m - 1;
    auto witness   = u.element_of(x_variety(n, m));
    auto const& l  = u.lattice();
    for (ElementId x = 0; x < u.size(); ++x) {
      if (!u.labels(x).is_nil || !l.leq(x, *d)) {
        continue;
      }
      ++r.checked;
      auto np = nil_part(u, l.join(*a, x));
      auto z  = zr(u, x);
      if (np != z) {
        r.failures.push_back({u.name(x), u.name(np), u.name(z)});
        if (witness && x == *witness) {
          r.witness_found = true;
        }
      }
    }
    return r;
  }

  struct DecompositionReport {
    std::size_t              checked = 0;
    std::vector<std::string> failures;

    bool passed() const noexcept {
      return failures.empty();
    }
  };

  // Every combinatorial element is C_m ∨ its nil part, and the elements
  // A_n ∨ C_m are pairwise distinct.
  inline DecompositionReport decomposition_check(Universe const& u) {
    DecompositionReport r;
    auto const&         l = u.lattice();
    for (ElementId e = 0; e < u.size(); ++e) {
      auto const& lab = u.labels(e);
      if (!lab.is_comb || !lab.is_periodic) {
        continue;
      }
      ++r.checked;
      auto c = u.element_of(cyclic_monoid(lab.m));
      if (!c) {
        r.failures.push_back(lab.name + ": C_" + std::to_string(lab.m) + " missing");
        continue;
      }
      auto j = l.join(*c, nil_part(u, e));
      if (j != e) {
        r.failures.push_back(lab.name + " differs from C_" + std::to_string(lab.m)
                             + " ∨ nil part (" + u.name(j) + ")");
      }
    }
    std::map<ElementId, std::pair<int, int>> seen;
    for (int n : u.spec().group_exponents) {
      for (int m = 0; m <= u.spec().max_m; ++m) {
        ++r.checked;
        auto e = u.element_of(join_of({abelian_group(n), cyclic_monoid(m)}));
        auto tag = "A_" + std::to_string(n) + "∨C_" + std::to_string(m);
        if (!e) {
          r.failures.push_back(tag + " missing");
          continue;
        }
        if (!u.labels(*e).monoid || u.labels(*e).n != n || u.labels(*e).m != m) {
          r.failures.push_back(tag + " has parameters (" + std::to_string(u.labels(*e).n)
                               + "," + std::to_string(u.labels(*e).m) + ")");
        }
        auto [it, fresh] = seen.emplace(*e, std::pair{n, m});
        if (!fresh) {
          r.failures.push_back(tag + " coincides with A_" + std::to_string(it->second.first)
                               + "∨C_" + std::to_string(it->second.second));
        }
      }
    }
    return r;
  }

}  // namespace comlat
