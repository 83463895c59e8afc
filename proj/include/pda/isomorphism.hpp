#pragma once

#include <cstdint>

#include "pda/array.hpp"

namespace pda {

struct IsoOptions {
  int64_t cell_budget = 10'000;    // refuse larger arrays
  int64_t node_budget = 5'000'000; // backtracking nodes before giving up
};

/// True iff some row permutation, column permutation and symbol bijection
/// map `a` onto `b`. Both inputs must be valid PDAs. Intended for desk-scale
/// arrays; throws TooLargeError above the cell budget, or if the backtracking
/// search blows the node budget.
bool is_isomorphic(const PdaArray& a, const PdaArray& b, const IsoOptions& opts = {});

}  // namespace pda
