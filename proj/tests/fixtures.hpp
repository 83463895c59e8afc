#pragma once

#include <string>

#include "pda/document.hpp"
#include "pda/verify.hpp"

namespace fixtures {

/// The canonical 2-(4,4,2,4) base PDA used throughout the tests.
inline pda::PdaArray base44() {
  return pda::parse_grid(
      "* * 3 1\n"
      "2 * * 4\n"
      "1 3 * *\n"
      "* 2 4 *\n");
}

/// The 2-(2,2,1,1) MN PDA (not a base PDA).
inline pda::PdaArray mn22() { return pda::parse_grid("* 1\n1 *\n"); }

/// The 1-(2,2,1,2) base PDA that mn22 transforms into.
inline pda::PdaArray mn22_base() { return pda::parse_grid("* 2\n1 *\n"); }

inline pda::BasePda base44_base() { return pda::verify_base_pda(base44(), 1); }

/// 2x1 column (star; 1): the smallest verifiable PDA.
inline pda::PdaArray tiny() { return pda::parse_grid("*\n1\n"); }

}  // namespace fixtures
