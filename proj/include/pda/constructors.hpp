#pragma once

#include <cstdint>
#include <vector>

#include "pda/verify.hpp"

namespace pda {

struct ConstructOptions {
  /// Constructions refuse to materialize grids with more cells than this;
  /// parameter math for bigger regimes lives in the schemes module.
  int64_t cell_budget = 10'000'000;
};

/// Maddah-Ali--Niesen PDA: rows are the z-subsets of [1:q] in lexicographic
/// order; column k has a star in row A iff k is in A, and otherwise carries
/// the lexicographic rank of A plus k among the (z+1)-subsets. A
/// (z+1)-regular (q, C(q,z), C(q-1,z-1), C(q,z+1)) PDA with z stars per row.
PdaArray mn_pda(int q, int z, const ConstructOptions& opts = {});

/// Transposed grid; the result is verified, so a transpose with non-uniform
/// column star counts throws C1Violation.
PdaArray transpose_pda(const PdaArray& array);

/// Turns a g-regular PDA with uniform row star counts (g >= 2) into a
/// (g-1)-regular base PDA with lambda = g-1 by stacking g-1 copies: in copy
/// c, the v-th occurrence (row-major) of symbol s becomes the pair symbol
/// (s, <v+c>_g). Each pair symbol then shows up once per copy, skipping its
/// own occurrence, whose row becomes its star row.
BasePda transform_to_base(const PdaArray& array, const ConstructOptions& opts = {});

/// The 2-regular (q^2, 2q, 2, (q-1)q^2) base PDA family with lambda = 1.
/// Columns are indexed by pairs (a,b) in [1:q]^2 with stars in top-block row
/// a and bottom-block row q+b; symbols pair up the two columns that share a
/// star row. Validated by verify_base_pda before returning.
BasePda g2_base_pda(int q, const ConstructOptions& opts = {});

/// Cartesian product of raw grids: an F1*F2 x (K1+K2) array whose row block
/// for each row of `b` repeats all rows of `a` (the first factor's row index
/// varies fastest). Cell values are copied as-is; no PDA conditions are
/// implied.
PdaArray cartesian_product(const PdaArray& a, const PdaArray& b,
                           const ConstructOptions& opts = {});

/// m-fold Cartesian product of a grid with itself.
PdaArray m_fold_product(const PdaArray& a, int m, const ConstructOptions& opts = {});

/// Dimensions of one union construction, plus index bookkeeping. Rows are
/// pairs (block row tuple f in [1:F1/lambda]^m, copy tuple in [1:lambda]^t)
/// and columns are pairs (group set T in C([1:m],t), base column tuple in
/// [1:K1]^t), both enumerated lexicographically with the tuple's first
/// coordinate most significant.
struct PmtShape {
  int m = 0;
  int t = 0;
  int block_rows = 1;  // F1/lambda
  int lambda = 1;
  int base_cols = 1;  // K1

  int64_t rows() const;
  int64_t cols() const;
};

struct PmtRow {
  std::vector<int> block_row;  // f, length m
  std::vector<int> copy;       // epsilon, length t
};

struct PmtCol {
  std::vector<int> group;     // T, ascending, length t
  std::vector<int> base_col;  // b, length t
};

int64_t pmt_row_index(const PmtShape& shape, const PmtRow& row);   // 1-based
int64_t pmt_col_index(const PmtShape& shape, const PmtCol& col);   // 1-based
PmtRow pmt_row_at(const PmtShape& shape, int64_t index);
PmtCol pmt_col_at(const PmtShape& shape, int64_t index);

/// Split of a group set T: `within` counts |T intersect [1:m-t+1]| and
/// `outside_free` lists [m-t+2:m] \ T ascending (size within-1).
struct PmtColProfile {
  int within = 0;
  std::vector<int> outside_free;
};
PmtColProfile pmt_column_profile(int m, int t, const std::vector<int>& group);

/// The cache configuration array: rows indexed like the union construction,
/// columns by (group, base column), with cell ((f,eps),(g,b)) equal to the
/// base's first-block cell (f_g, b). Used to cross-check star patterns of
/// the union construction.
PdaArray build_cache_config_array(const BasePda& base, int m, int t,
                                  const ConstructOptions& opts = {});

/// Expected parameters of construct_pmt output.
PdaParams pmt_params(const BasePda& base, int m, int t);

/// The union-of-cache-configurations construction: from a g1-regular base
/// PDA with parameter lambda it builds a C(m,t)*g1^t-regular PDA with
/// C(m,t)*K1^t users. The output symbols are m-dimensional vectors, stored
/// as dense ids in lexicographic vector order with the vectors kept as
/// symbol keys. The result is verified against pmt_params before returning.
PdaArray construct_pmt(const BasePda& base, int m, int t,
                       const ConstructOptions& opts = {});

/// The t=1 specialization; also cross-checks the m-fold product parameter
/// tuple (m*K1, lambda*(F1/lambda)^m, Z1*(F1/lambda)^(m-1),
/// S1*(F1/lambda)^(m-1)).
PdaArray construct_pm(const BasePda& base, int m, const ConstructOptions& opts = {});

}  // namespace pda
