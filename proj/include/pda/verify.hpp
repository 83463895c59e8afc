#pragma once

#include <optional>
#include <set>
#include <vector>

#include "pda/array.hpp"

namespace pda {

/// Parameters of a verified (K,F,Z,S) placement delivery array.
struct PdaParams {
  int users = 0;            // K: columns
  int packets = 0;          // F: rows (subpacketization)
  int cached = 0;           // Z: stars per column
  int symbols = 0;          // S: distinct symbol ids
  std::optional<int> gain;  // g, present iff every symbol occurs equally often

  friend bool operator==(const PdaParams&, const PdaParams&) = default;
};

/// Checks C1 (uniform per-column star count), C2 (ids form [1:S] with no
/// gaps) and C3 (equal symbols sit in star-crossed 2x2 subarrays) and returns
/// the array parameters. Throws the first violation found, in C1, C2, C3
/// order; C3 pairs are reported in row-major occurrence order.
PdaParams verify_pda(const PdaArray& array);

/// Rows i such that every column containing `symbol` has a star in row i.
std::set<int> find_star_rows(const PdaArray& array, int symbol);

/// A PDA together with a verified lambda-periodic star pattern (C4) and a
/// uniform star-row assignment (C5).
struct BasePda {
  PdaArray array;
  PdaParams params;
  int lambda = 1;
  /// star_row[s-1] is the row in [1:F/lambda] assigned to symbol s.
  std::vector<int> star_row;
  /// blocks[j-1] lists, ascending, the symbols assigned to row j.
  std::vector<std::vector<int>> blocks;

  int block_rows() const { return params.packets / lambda; }
  int block_size() const { return lambda * params.symbols / params.packets; }
};

/// Verifies that `array` is a base PDA for the given lambda: runs verify_pda,
/// checks C4, then searches for a star-row assignment with exactly
/// lambda*S/F symbols per row (C5), formulated as a bipartite b-matching.
/// The returned assignment is the lexicographically least feasible one under
/// (symbol ascending, row ascending).
BasePda verify_base_pda(const PdaArray& array, int lambda);

/// Same checks, but validates a caller-supplied assignment instead of
/// searching for one.
BasePda verify_base_pda_with(const PdaArray& array, int lambda,
                             std::vector<int> star_row);

}  // namespace pda
