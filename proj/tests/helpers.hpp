#pragma once

#include <string>
#include <vector>

#include "comlat/lattice.hpp"

namespace comlat::testing {

  inline FiniteLattice chain(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<Cover>       covers;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back("c" + std::to_string(i));
      if (i > 0) {
        covers.emplace_back(i - 1, i);
      }
    }
    return build_from_covers(labels, covers);
  }

  // 0, three atoms a, b, c, and 1
  inline FiniteLattice m3() {
    return build_from_covers({"0", "a", "b", "c", "1"},
                             {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  }

  // 0 < a < c < 1 and 0 < b < 1
  inline FiniteLattice n5() {
    return build_from_covers({"0", "a", "b", "c", "1"},
                             {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}});
  }

  // the four-element Boolean lattice
  inline FiniteLattice square() {
    return build_from_covers({"0", "p", "q", "1"},
                             {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  }

}  // namespace comlat::testing
