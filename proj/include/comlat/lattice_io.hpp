#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "lattice.hpp"

namespace comlat {

  // {"elements": [{"id": int, "label": string}], "covers": [[int, int]]}
  // Ids in the file are arbitrary integers; they are renumbered densely in
  // order of appearance.
  inline FiniteLattice lattice_from_json(nlohmann::json const& doc) {
    if (!doc.is_object() || !doc.contains("elements")
        || !doc.contains("covers")) {
      throw InputError("lattice JSON needs \"elements\" and \"covers\"");
    }
    std::map<long long, ElementId> index;
    std::vector<std::string>       labels;
    try {
      for (auto const& e : doc.at("elements")) {
        auto id = e.at("id").get<long long>();
        if (!index.emplace(id, static_cast<ElementId>(labels.size())).second) {
          throw InputError("duplicate element id " + std::to_string(id));
        }
        labels.push_back(e.at("label").get<std::string>());
      }
      std::vector<Cover> covers;
      for (auto const& c : doc.at("covers")) {
        if (!c.is_array() || c.size() != 2) {
          throw InputError("each cover must be a pair [lower, upper]");
        }
        auto lo = index.find(c[0].get<long long>());
        auto hi = index.find(c[1].get<long long>());
        if (lo == index.end() || hi == index.end()) {
          throw InputError("cover references an unknown element id");
        }
        covers.emplace_back(lo->second, hi->second);
      }
      return build_from_covers(std::move(labels), covers);
    } catch (nlohmann::json::exception const& e) {
      throw InputError(std::string("malformed lattice JSON: ") + e.what());
    }
  }

  inline nlohmann::json lattice_to_json(FiniteLattice const& lattice) {
    nlohmann::json doc;
    doc["elements"] = nlohmann::json::array();
    for (ElementId a = 0; a < lattice.size(); ++a) {
      doc["elements"].push_back({{"id", a}, {"label", lattice.label(a)}});
    }
    doc["covers"] = nlohmann::json::array();
    for (auto [a, b] : lattice.covers()) {
      doc["covers"].push_back({a, b});
    }
    return doc;
  }

  inline nlohmann::json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot open " + path);
    }
    try {
      return nlohmann::json::parse(in);
    } catch (nlohmann::json::exception const& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  inline FiniteLattice read_lattice_file(std::string const& path) {
    return lattice_from_json(read_json_file(path));
  }

  namespace detail {
    inline std::string dot_escape(std::string const& s) {
      std::string out;
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out;
    }
  }  // namespace detail

  // Hasse diagram, bottom at the bottom.
  inline std::string to_dot(FiniteLattice const& lattice) {
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (ElementId a = 0; a < lattice.size(); ++a) {
      out << "  n" << a << " [label=\"" << detail::dot_escape(lattice.label(a))
          << "\"];\n";
    }
    for (auto [a, b] : lattice.covers()) {
      out << "  n" << a << " -> n" << b << " [arrowhead=none];\n";
    }
    out << "}\n";
    return out.str();
  }

}  // namespace comlat
