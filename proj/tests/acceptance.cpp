#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <comlat/verify.hpp>

int main(int argc, char** argv) {
  std::filesystem::path fixtures = argc > 1 ? argv[1] : COMLAT_FIXTURE_DIR;
  bool                  all_ok   = true;
  auto print = [&](comlat::verify::CheckResult const& r) {
    all_ok = all_ok && r.passed;
    std::printf("criterion %2d: %s  %s (%.2f s)\n", r.criterion, r.passed ? "PASS" : "FAIL",
                r.title.c_str(), r.seconds);
    for (auto const& n : r.notes) {
      std::printf("    %s\n", n.c_str());
    }
    std::fflush(stdout);
  };
  try {
    comlat::verify::run_suite("all", fixtures, print);
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return all_ok ? 0 : 1;
}
