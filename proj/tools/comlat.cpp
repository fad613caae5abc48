#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <comlat/catalog.hpp>
#include <comlat/errors.hpp>
#include <comlat/eval.hpp>
#include <comlat/lattice_io.hpp>
#include <comlat/parser.hpp>
#include <comlat/universe.hpp>
#include <comlat/verify.hpp>

namespace {

  enum Exit { ok = 0, failed = 1, usage = 2, input = 3 };

  comlat::Formula read_formula(std::string const& ref) {
    if (auto builtin = comlat::parse_builtin_ref(ref)) {
      return comlat::build(*builtin);
    }
    return comlat::parse(ref);
  }

  void write_text(std::string const& path, std::string const& text) {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw comlat::InputError("cannot write " + path);
    }
    out << text;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definability experiments on finite lattices of commutative monoid varieties"};
  app.require_subcommand(1);

  auto* lat = app.add_subcommand("lattice", "Inspect a lattice file");
  lat->require_subcommand(1);
  std::string lattice_file;
  std::string out_file;
  auto* lat_validate = lat->add_subcommand("validate", "Check that a file describes a lattice");
  lat_validate->add_option("file", lattice_file)->required();
  auto* lat_dot = lat->add_subcommand("dot", "Write the Hasse diagram in DOT");
  lat_dot->add_option("file", lattice_file)->required();
  lat_dot->add_option("-o,--output", out_file);

  auto*       uni = app.add_subcommand("universe", "Labeled variety lattices");
  std::string spec_file;
  uni->require_subcommand(1);
  auto* uni_build = uni->add_subcommand("build", "Build a labeled lattice from a universe spec");
  uni_build->add_option("spec", spec_file)->required();
  uni_build->add_option("-o,--output", out_file);

  auto*       eval = app.add_subcommand("eval", "Print the set defined by a unary formula");
  std::string formula_ref;
  eval->add_option("--lattice", lattice_file)->required();
  eval->add_option("--formula", formula_ref, "formula text or builtin:Name[p,...]")->required();

  auto*       verify = app.add_subcommand("verify", "Run acceptance checks");
  std::string suite  = "all";
  std::string fixtures = COMLAT_FIXTURE_DIR;
  bool        as_json  = false;
  verify->add_option("--suite", suite)->check(CLI::IsMember(comlat::verify::suite_names()));
  verify->add_option("--fixtures", fixtures, "directory with F1.json, F2.json, lemma8.json, golden/");
  verify->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*lat_validate) {
      auto l = comlat::read_lattice_file(lattice_file);
      std::cout << "ok: " << l.size() << " elements\n";
    } else if (*lat_dot) {
      write_text(out_file, comlat::to_dot(comlat::read_lattice_file(lattice_file)));
    } else if (*uni_build) {
      auto spec = comlat::universe_spec_from_json(comlat::read_json_file(spec_file));
      auto u    = comlat::build_universe(spec);
      write_text(out_file, comlat::universe_to_json(u).dump(2) + "\n");
    } else if (*eval) {
      auto l   = comlat::read_lattice_file(lattice_file);
      auto f   = read_formula(formula_ref);
      auto set = comlat::RelationalEvaluator(l).defined_set(f).labels(l);
      std::sort(set.begin(), set.end());
      for (auto const& s : set) {
        std::cout << s << '\n';
      }
    } else if (*verify) {
      bool all = true;
      auto results = comlat::verify::run_suite(suite, fixtures, [&](auto const& r) {
        all = all && r.passed;
        if (!as_json) {
          std::cout << "criterion " << r.criterion << ": " << (r.passed ? "PASS" : "FAIL")
                    << "  " << r.title << std::endl;
          for (auto const& n : r.notes) {
            std::cout << "    " << n << '\n';
          }
        }
      });
      if (as_json) {
        nlohmann::json out = nlohmann::json::array();
        for (auto const& r : results) {
          out.push_back(comlat::verify::to_json(r));
        }
        std::cout << out.dump(2) << '\n';
      }
      return all ? Exit::ok : Exit::failed;
    }
  } catch (comlat::InputError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::input;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::input;
  }
  return Exit::ok;
}
