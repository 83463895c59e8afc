#include "pda/constructors.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "pda/rational.hpp"

namespace pda {

namespace {

/// <a>_q with multiples of q mapping to q instead of 0; defined for a >= 1.
int mod1(int a, int q) {
  const int r = a % q;
  return r == 0 ? q : r;
}

int64_t binom64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: prefix products are binomials
  }
  return r;
}

/// 0-based lexicographic rank of a sorted subset of [1:n].
int64_t subset_rank(const std::vector<int>& a, int n) {
  int64_t rank = 0;
  int prev = 0;
  const int m = static_cast<int>(a.size());
  for (int i = 0; i < m; ++i) {
    for (int v = prev + 1; v < a[i]; ++v) rank += binom64(n - v, m - 1 - i);
    prev = a[i];
  }
  return rank;
}

/// Inverse of subset_rank.
std::vector<int> subset_unrank(int64_t rank, int n, int m) {
  std::vector<int> a(m);
  int v = 1;
  for (int i = 0; i < m; ++i) {
    while (true) {
      const int64_t below = binom64(n - v, m - 1 - i);
      if (rank < below) break;
      rank -= below;
      ++v;
    }
    a[i] = v++;
  }
  return a;
}

bool next_subset(std::vector<int>& a, int n) {
  const int m = static_cast<int>(a.size());
  for (int i = m - 1; i >= 0; --i) {
    if (a[i] < n - (m - 1 - i)) {
      ++a[i];
      for (int j = i + 1; j < m; ++j) a[j] = a[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Odometer over [1:radix]^len, first coordinate most significant.
bool next_tuple(std::vector<int>& a, int radix) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] < radix) {
      ++a[i];
      std::fill(a.begin() + i + 1, a.end(), 1);
      return true;
    }
    a[i] = 1;
  }
  return false;
}

void check_budget(const BigInt& rows, const BigInt& cols, const ConstructOptions& opts) {
  const BigInt cells = rows * cols;
  if (cells > opts.cell_budget)
    throw CellBudgetError(cells.str() + " cells requested, budget is " +
                          std::to_string(opts.cell_budget));
}

struct VecHash {
  size_t operator()(const std::vector<int32_t>& v) const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (int32_t x : v) {
      h ^= static_cast<uint32_t>(x);
      h *= 0x100000001b3ULL;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

PdaArray mn_pda(int q, int z, const ConstructOptions& opts) {
  if (z < 1 || z >= q) throw InvalidRangeError("mn_pda needs 1 <= z < q");
  const BigInt rows = binomial(q, z);
  check_budget(rows, q, opts);
  const int f = static_cast<int>(rows);

  PdaArray out(f, q);
  std::vector<int> subset(z);
  for (int i = 0; i < z; ++i) subset[i] = i + 1;
  std::vector<int> merged(z + 1);
  for (int row = 1; row <= f; ++row) {
    for (int k = 1; k <= q; ++k) {
      if (std::binary_search(subset.begin(), subset.end(), k)) continue;  // star
      merged.assign(subset.begin(), subset.end());
      merged.insert(std::upper_bound(merged.begin(), merged.end(), k), k);
      out.set_cell(row, k, Cell::symbol(static_cast<int32_t>(subset_rank(merged, q) + 1)));
    }
    next_subset(subset, q);
  }
  return out;
}

PdaArray transpose_pda(const PdaArray& a) {
  PdaArray out(a.cols(), a.rows());
  for (int j = 1; j <= a.rows(); ++j)
    for (int k = 1; k <= a.cols(); ++k) out.set_cell(k, j, a.cell(j, k));
  for (int32_t s = 1; s <= a.max_symbol(); ++s)
    if (const SymbolKey* key = a.symbol_key(s)) out.set_symbol_key(s, *key);
  verify_pda(out);
  return out;
}

BasePda transform_to_base(const PdaArray& a, const ConstructOptions& opts) {
  const PdaParams params = verify_pda(a);
  if (!params.gain)
    throw NotRegularError("transform_to_base needs a g-regular PDA");
  const int g = *params.gain;
  if (g < 2) throw NotRegularError("transform_to_base needs gain >= 2");
  {
    int first_row_stars = -1;
    for (int j = 1; j <= a.rows(); ++j) {
      int stars = 0;
      for (int k = 1; k <= a.cols(); ++k)
        if (a.cell(j, k).is_star()) ++stars;
      if (j == 1)
        first_row_stars = stars;
      else if (stars != first_row_stars)
        throw UnevenStarRowsError();
    }
  }

  const int copies = g - 1;
  check_budget(BigInt(copies) * params.packets, params.users, opts);

  // Row-major occurrence rank of each non-star cell within its symbol.
  std::vector<int> seen(params.symbols + 1, 0);
  PdaArray out(copies * params.packets, params.users);
  std::vector<std::pair<int, int>> pair_of(params.symbols * g + 1);  // id -> (s,u)
  for (int j = 1; j <= params.packets; ++j)
    for (int k = 1; k <= params.users; ++k) {
      Cell c = a.cell(j, k);
      if (c.is_star()) continue;
      const int s = c.id();
      const int v = ++seen[s];
      for (int copy = 1; copy <= copies; ++copy) {
        const int u = mod1(v + copy, g);
        const int id = (s - 1) * g + u;  // dense, ordered by (s,u)
        out.set_cell((copy - 1) * params.packets + j, k, Cell::symbol(id));
        pair_of[id] = {s, u};
      }
    }
  for (int id = 1; id <= params.symbols * g; ++id)
    out.set_symbol_key(id, {pair_of[id].first, pair_of[id].second});

  BasePda base = [&] {
    try {
      return verify_base_pda(out, copies);
    } catch (const PdaError& e) {
      throw VerificationFailedError(std::string("transform_to_base: ") + e.what());
    }
  }();
  const PdaParams expect{params.users, copies * params.packets, copies * params.cached,
                         g * params.symbols, copies};
  if (base.params != expect)
    throw VerificationFailedError("transform_to_base produced unexpected parameters");
  return base;
}

BasePda g2_base_pda(int q, const ConstructOptions& opts) {
  if (q < 2) throw InvalidRangeError("g2_base_pda needs q >= 2");
  check_budget(BigInt(2) * q, BigInt(q) * q, opts);

  PdaArray out(2 * q, q * q);
  const auto col = [q](int a, int b) { return (a - 1) * q + b; };

  // Symbols pairing two columns that share their bottom star (q+b): ids are
  // assigned in lexicographic order of the keys {1, b, a, a'}, then of the
  // keys {2, a, b, b'} for the pairs sharing a top star.
  int32_t id = 0;
  for (int b = 1; b <= q; ++b)
    for (int a = 1; a <= q; ++a)
      for (int a2 = a + 1; a2 <= q; ++a2) {
        ++id;
        out.set_cell(a2, col(a, b), Cell::symbol(id));
        out.set_cell(a, col(a2, b), Cell::symbol(id));
        out.set_symbol_key(id, {1, b, a, a2});
      }
  for (int a = 1; a <= q; ++a)
    for (int b = 1; b <= q; ++b)
      for (int b2 = b + 1; b2 <= q; ++b2) {
        ++id;
        out.set_cell(q + b2, col(a, b), Cell::symbol(id));
        out.set_cell(q + b, col(a, b2), Cell::symbol(id));
        out.set_symbol_key(id, {2, a, b, b2});
      }

  BasePda base = [&] {
    try {
      return verify_base_pda(out, 1);
    } catch (const PdaError& e) {
      throw ConstructionFailedError(std::string("g2_base_pda: ") + e.what());
    }
  }();
  const PdaParams expect{q * q, 2 * q, 2, (q - 1) * q * q, 2};
  if (base.params != expect)
    throw ConstructionFailedError("g2_base_pda produced unexpected parameters");
  return base;
}

PdaArray cartesian_product(const PdaArray& a, const PdaArray& b,
                           const ConstructOptions& opts) {
  check_budget(BigInt(a.rows()) * b.rows(), BigInt(a.cols()) + b.cols(), opts);
  PdaArray out(a.rows() * b.rows(), a.cols() + b.cols());
  for (int fb = 1; fb <= b.rows(); ++fb)
    for (int fa = 1; fa <= a.rows(); ++fa) {
      const int row = (fb - 1) * a.rows() + fa;
      for (int k = 1; k <= a.cols(); ++k) out.set_cell(row, k, a.cell(fa, k));
      for (int k = 1; k <= b.cols(); ++k) out.set_cell(row, a.cols() + k, b.cell(fb, k));
    }
  return out;
}

PdaArray m_fold_product(const PdaArray& a, int m, const ConstructOptions& opts) {
  if (m < 1) throw InvalidRangeError("m_fold_product needs m >= 1");
  check_budget(int_pow(a.rows(), m), BigInt(m) * a.cols(), opts);
  PdaArray out = a;
  for (int i = 2; i <= m; ++i) out = cartesian_product(out, a, opts);
  return out;
}

int64_t PmtShape::rows() const {
  const BigInt r = int_pow(lambda, t) * int_pow(block_rows, m);
  if (r > std::numeric_limits<int64_t>::max())
    throw TooLargeError("row count overflows");
  return static_cast<int64_t>(r);
}

int64_t PmtShape::cols() const {
  const BigInt c = binomial(m, t) * int_pow(base_cols, t);
  if (c > std::numeric_limits<int64_t>::max())
    throw TooLargeError("column count overflows");
  return static_cast<int64_t>(c);
}

int64_t pmt_row_index(const PmtShape& shape, const PmtRow& row) {
  if (static_cast<int>(row.block_row.size()) != shape.m ||
      static_cast<int>(row.copy.size()) != shape.t)
    throw InvalidRangeError("row index tuple lengths do not match the shape");
  int64_t rank = 0;
  for (int v : row.block_row) {
    if (v < 1 || v > shape.block_rows) throw InvalidRangeError("block row out of range");
    rank = rank * shape.block_rows + (v - 1);
  }
  for (int v : row.copy) {
    if (v < 1 || v > shape.lambda) throw InvalidRangeError("copy index out of range");
    rank = rank * shape.lambda + (v - 1);
  }
  return rank + 1;
}

PmtRow pmt_row_at(const PmtShape& shape, int64_t index) {
  int64_t rank = index - 1;
  PmtRow row;
  row.copy.assign(shape.t, 1);
  row.block_row.assign(shape.m, 1);
  for (int i = shape.t - 1; i >= 0; --i) {
    row.copy[i] = static_cast<int>(rank % shape.lambda) + 1;
    rank /= shape.lambda;
  }
  for (int i = shape.m - 1; i >= 0; --i) {
    row.block_row[i] = static_cast<int>(rank % shape.block_rows) + 1;
    rank /= shape.block_rows;
  }
  return row;
}

int64_t pmt_col_index(const PmtShape& shape, const PmtCol& col) {
  if (static_cast<int>(col.group.size()) != shape.t ||
      static_cast<int>(col.base_col.size()) != shape.t)
    throw InvalidRangeError("column index tuple lengths do not match the shape");
  int64_t rank = subset_rank(col.group, shape.m);
  for (int v : col.base_col) {
    if (v < 1 || v > shape.base_cols) throw InvalidRangeError("base column out of range");
    rank = rank * shape.base_cols + (v - 1);
  }
  return rank + 1;
}

PmtCol pmt_col_at(const PmtShape& shape, int64_t index) {
  int64_t rank = index - 1;
  PmtCol col;
  col.base_col.assign(shape.t, 1);
  for (int i = shape.t - 1; i >= 0; --i) {
    col.base_col[i] = static_cast<int>(rank % shape.base_cols) + 1;
    rank /= shape.base_cols;
  }
  col.group = subset_unrank(rank, shape.m, shape.t);
  return col;
}

PmtColProfile pmt_column_profile(int m, int t, const std::vector<int>& group) {
  PmtColProfile p;
  for (int v : group)
    if (v <= m - t + 1) ++p.within;
  for (int v = m - t + 2; v <= m; ++v)
    if (!std::binary_search(group.begin(), group.end(), v)) p.outside_free.push_back(v);
  return p;
}

PdaArray build_cache_config_array(const BasePda& base, int m, int t,
                                  const ConstructOptions& opts) {
  if (t < 1 || t > m) throw InvalidRangeError("needs 1 <= t <= m");
  PmtShape shape{m, t, base.block_rows(), base.lambda, base.params.users};
  const BigInt rows = int_pow(shape.lambda, t) * int_pow(shape.block_rows, m);
  check_budget(rows, BigInt(m) * shape.base_cols, opts);

  PdaArray out(static_cast<int>(rows), m * shape.base_cols);
  std::vector<int> f(m, 1), eps(t, 1);
  for (int row = 1;; ++row) {
    for (int g = 1; g <= m; ++g)
      for (int b = 1; b <= shape.base_cols; ++b)
        out.set_cell(row, (g - 1) * shape.base_cols + b, base.array.cell(f[g - 1], b));
    if (!next_tuple(eps, shape.lambda) && !next_tuple(f, shape.block_rows)) break;
  }
  return out;
}

PdaParams pmt_params(const BasePda& base, int m, int t) {
  if (t < 1 || t > m) throw InvalidRangeError("needs 1 <= t <= m");
  if (!base.params.gain) throw NotRegularError("the base PDA must be regular");
  const int br = base.block_rows();
  const BigInt rows = int_pow(base.lambda, t) * int_pow(br, m);
  const BigInt cols = binomial(m, t) * int_pow(base.params.users, t);
  const BigInt nonstar =
      int_pow(base.params.packets - base.params.cached, t) * int_pow(br, m - t);
  const BigInt symbols = int_pow(br, m - t) * int_pow(base.params.symbols, t);
  const BigInt gain = binomial(m, t) * int_pow(*base.params.gain, t);
  const BigInt limit = std::numeric_limits<int>::max();
  if (rows > limit || cols > limit || symbols > limit || gain > limit)
    throw CellBudgetError("union construction parameters exceed materializable range");
  PdaParams p;
  p.users = static_cast<int>(cols);
  p.packets = static_cast<int>(rows);
  p.cached = static_cast<int>(rows - nonstar);
  p.symbols = static_cast<int>(symbols);
  p.gain = static_cast<int>(gain);
  return p;
}

PdaArray construct_pmt(const BasePda& base, int m, int t, const ConstructOptions& opts) {
  if (t < 1 || t > m) throw InvalidRangeError("needs 1 <= t <= m");
  if (!base.params.gain) throw NotRegularError("the base PDA must be regular");
  PmtShape shape{m, t, base.block_rows(), base.lambda, base.params.users};
  check_budget(int_pow(shape.lambda, t) * int_pow(shape.block_rows, m),
               binomial(m, t) * int_pow(shape.base_cols, t), opts);
  const int br = shape.block_rows;
  const int k1 = shape.base_cols;
  const int64_t rows = shape.rows();

  // Fast lookups into the base: first-block star pattern, full symbol grid,
  // and each symbol's block plus rank within it.
  std::vector<char> star1(static_cast<size_t>(k1) * br);
  for (int b = 1; b <= k1; ++b)
    for (int f = 1; f <= br; ++f)
      star1[static_cast<size_t>(b - 1) * br + (f - 1)] = base.array.cell(f, b).is_star();
  std::vector<int32_t> value(static_cast<size_t>(base.params.packets) * k1);
  for (int j = 1; j <= base.params.packets; ++j)
    for (int b = 1; b <= k1; ++b)
      value[static_cast<size_t>(j - 1) * k1 + (b - 1)] = base.array.cell(j, b).id();
  std::vector<int> block_of(base.params.symbols + 1), rank_of(base.params.symbols + 1);
  for (int j = 1; j <= br; ++j)
    for (size_t i = 0; i < base.blocks[j - 1].size(); ++i) {
      block_of[base.blocks[j - 1][i]] = j;
      rank_of[base.blocks[j - 1][i]] = static_cast<int>(i) + 1;
    }

  PdaArray out(static_cast<int>(rows), static_cast<int>(shape.cols()));
  std::unordered_map<std::vector<int32_t>, int32_t, VecHash> first_seen;
  std::vector<const std::vector<int32_t>*> vec_of;  // temp id -> vector

  std::vector<int> group(t);
  for (int i = 0; i < t; ++i) group[i] = i + 1;
  std::vector<int32_t> e(m);
  std::vector<int> blk(t), rnk(t);
  int col = 0;
  do {
    const PmtColProfile profile = pmt_column_profile(m, t, group);
    const int w = profile.within;
    std::vector<int> bcol(t, 1);
    do {
      ++col;
      std::vector<int> f(m, 1), eps(t, 1);
      for (int row = 1;; ++row) {
        bool star = false;
        for (int h = 0; h < t; ++h)
          if (star1[static_cast<size_t>(bcol[h] - 1) * br + (f[group[h] - 1] - 1)]) {
            star = true;
            break;
          }
        if (!star) {
          for (int h = 0; h < t; ++h) {
            const int j = f[group[h] - 1] + (eps[h] - 1) * br;
            const int32_t s = value[static_cast<size_t>(j - 1) * k1 + (bcol[h] - 1)];
            blk[h] = block_of[s];
            rnk[h] = rank_of[s];
          }
          // Coordinates outside the group set take the row's own block at
          // the shared rank; group coordinates take their occurrence's
          // block, the free outside coordinates the trailing ranks.
          {
            int h = 0;
            for (int i = 1; i <= m; ++i) {
              if (h < t && group[h] == i) {
                ++h;
                continue;
              }
              e[i - 1] = base.blocks[f[i - 1] - 1][rnk[0] - 1];
            }
          }
          for (int h = 0; h < w; ++h)
            e[group[h] - 1] = base.blocks[blk[h] - 1][rnk[0] - 1];
          for (int h = w; h < t; ++h)
            e[group[h] - 1] = base.blocks[blk[h] - 1][rnk[h] - 1];
          for (int h = 0; h + 1 < w; ++h)
            e[profile.outside_free[h] - 1] =
                base.blocks[f[profile.outside_free[h] - 1] - 1][rnk[h + 1] - 1];

          auto [it, inserted] =
              first_seen.emplace(e, static_cast<int32_t>(first_seen.size() + 1));
          if (inserted) vec_of.push_back(&it->first);
          out.set_cell(row, col, Cell::symbol(it->second));
        }
        if (!next_tuple(eps, shape.lambda) && !next_tuple(f, br)) break;
      }
    } while (next_tuple(bcol, k1));
  } while (next_subset(group, m));

  // Densify in lexicographic vector order.
  std::vector<int32_t> order(vec_of.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
  std::sort(order.begin(), order.end(),
            [&](int32_t x, int32_t y) { return *vec_of[x] < *vec_of[y]; });
  std::vector<int32_t> final_id(vec_of.size() + 1);
  for (size_t i = 0; i < order.size(); ++i) final_id[order[i] + 1] = static_cast<int32_t>(i) + 1;
  for (int row = 1; row <= out.rows(); ++row)
    for (int c = 1; c <= out.cols(); ++c) {
      Cell cell = out.cell(row, c);
      if (!cell.is_star()) out.set_cell(row, c, Cell::symbol(final_id[cell.id()]));
    }
  for (size_t i = 0; i < vec_of.size(); ++i) {
    SymbolKey key(vec_of[i]->begin(), vec_of[i]->end());
    out.set_symbol_key(final_id[i + 1], std::move(key));
  }

  const PdaParams expect = pmt_params(base, m, t);
  PdaParams got = [&] {
    try {
      return verify_pda(out);
    } catch (const PdaError& err) {
      throw VerificationFailedError(std::string("construct_pmt: ") + err.what());
    }
  }();
  if (got != expect)
    throw VerificationFailedError("construct_pmt produced unexpected parameters");
  return out;
}

PdaArray construct_pm(const BasePda& base, int m, const ConstructOptions& opts) {
  if (m < 1) throw InvalidRangeError("construct_pm needs m >= 1");
  PdaArray out = construct_pmt(base, m, 1, opts);
  const int br = base.block_rows();
  PdaParams product_tuple;
  product_tuple.users = m * base.params.users;
  product_tuple.packets = static_cast<int>(BigInt(base.lambda) * int_pow(br, m));
  product_tuple.cached = static_cast<int>(BigInt(base.params.cached) * int_pow(br, m - 1));
  product_tuple.symbols = static_cast<int>(BigInt(base.params.symbols) * int_pow(br, m - 1));
  product_tuple.gain = m * *base.params.gain;
  if (pmt_params(base, m, 1) != product_tuple)
    throw VerificationFailedError("m-fold product parameters disagree with the t=1 case");
  return out;
}

}  // namespace pda
