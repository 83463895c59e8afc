#pragma once

// Test-only oracles, kept independent of the library's verification and
// search paths: a naive C1-C3 checker, an exhaustive permutation-based
// isomorphism test for tiny arrays, and a direct enumeration of the vector
// symbol set of the union construction.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "pda/array.hpp"
#include "pda/verify.hpp"

namespace oracles {

/// Naive quadratic C1-C3 check over all cell pairs. O((FK)^2); tiny arrays
/// only.
inline bool brute_force_is_pda(const pda::PdaArray& a) {
  if (a.rows() < 1 || a.cols() < 1) return false;
  int ref = -1;
  for (int k = 1; k <= a.cols(); ++k) {
    int stars = 0;
    for (int j = 1; j <= a.rows(); ++j) stars += a.cell(j, k).is_star();
    if (ref == -1) ref = stars;
    if (stars != ref) return false;
  }
  int32_t max_id = 0;
  for (int j = 1; j <= a.rows(); ++j)
    for (int k = 1; k <= a.cols(); ++k) max_id = std::max(max_id, a.cell(j, k).id());
  if (max_id == 0) return false;
  for (int32_t s = 1; s <= max_id; ++s) {
    bool found = false;
    for (int j = 1; j <= a.rows() && !found; ++j)
      for (int k = 1; k <= a.cols() && !found; ++k)
        found = a.cell(j, k).id() == s;
    if (!found) return false;
  }
  for (int j1 = 1; j1 <= a.rows(); ++j1)
    for (int k1 = 1; k1 <= a.cols(); ++k1)
      for (int j2 = 1; j2 <= a.rows(); ++j2)
        for (int k2 = 1; k2 <= a.cols(); ++k2) {
          if (j1 == j2 && k1 == k2) continue;
          if (a.cell(j1, k1).is_star() || a.cell(j1, k1) != a.cell(j2, k2)) continue;
          if (j1 == j2 || k1 == k2) return false;
          if (!a.cell(j1, k2).is_star() || !a.cell(j2, k1).is_star()) return false;
        }
  return true;
}

/// Canonical symbol relabeling by first occurrence, for permutation
/// comparison.
inline std::vector<int32_t> canonical_cells(const pda::PdaArray& a,
                                            const std::vector<int>& row_perm,
                                            const std::vector<int>& col_perm) {
  std::vector<int32_t> out;
  std::vector<int32_t> rename(a.max_symbol() + 1, 0);
  int32_t next = 1;
  for (int j = 0; j < a.rows(); ++j)
    for (int k = 0; k < a.cols(); ++k) {
      const pda::Cell c = a.cell(row_perm[j] + 1, col_perm[k] + 1);
      if (c.is_star()) {
        out.push_back(0);
      } else {
        if (rename[c.id()] == 0) rename[c.id()] = next++;
        out.push_back(rename[c.id()]);
      }
    }
  return out;
}

/// Exhaustive isomorphism over all row and column permutations. Factorial
/// cost; use only on arrays with <= 6 rows and columns.
inline bool brute_force_isomorphic(const pda::PdaArray& a, const pda::PdaArray& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<int> id_rows(b.rows()), id_cols(b.cols());
  std::iota(id_rows.begin(), id_rows.end(), 0);
  std::iota(id_cols.begin(), id_cols.end(), 0);
  const auto target = canonical_cells(b, id_rows, id_cols);

  std::vector<int> row_perm = id_rows;
  do {
    std::vector<int> col_perm = id_cols;
    do {
      if (canonical_cells(a, row_perm, col_perm) == target) return true;
    } while (std::next_permutation(col_perm.begin(), col_perm.end()));
  } while (std::next_permutation(row_perm.begin(), row_perm.end()));
  return false;
}

/// Direct enumeration of the union construction's symbol vectors: every
/// choice of one block per coordinate and of ranks nu_1..nu_m with the first
/// m-t+1 equal.
inline std::set<std::vector<int64_t>> enumerate_symbol_vectors(const pda::BasePda& base,
                                                               int m, int t) {
  const int block_rows = base.block_rows();
  const int block_size = base.block_size();
  std::set<std::vector<int64_t>> out;

  std::vector<int> block(m, 1);
  while (true) {
    // nu: shared rank for coordinates 1..m-t+1, free ranks afterwards.
    std::vector<int> nu(t, 1);  // nu[0] shared, nu[1..t-1] for [m-t+2 : m]
    while (true) {
      std::vector<int64_t> e(m);
      for (int i = 0; i < m; ++i) {
        const int rank = i < m - t + 1 ? nu[0] : nu[i - (m - t + 1) + 1];
        e[i] = base.blocks[block[i] - 1][rank - 1];
      }
      out.insert(std::move(e));
      int i = t - 1;
      while (i >= 0 && nu[i] == block_size) nu[i--] = 1;
      if (i < 0) break;
      ++nu[i];
    }
    int i = m - 1;
    while (i >= 0 && block[i] == block_rows) block[i--] = 1;
    if (i < 0) break;
    ++block[i];
  }
  return out;
}

}  // namespace oracles
