#include "pda/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pda/verify.hpp"

namespace pda {

namespace {

struct Grid {
  int rows = 0, cols = 0;
  std::vector<int32_t> cells;  // 0 = star, row-major, 0-based access

  int32_t at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }
};

Grid to_grid(const PdaArray& a) {
  Grid g;
  g.rows = a.rows();
  g.cols = a.cols();
  g.cells.reserve(a.cell_count());
  for (int j = 1; j <= a.rows(); ++j)
    for (int k = 1; k <= a.cols(); ++k) g.cells.push_back(a.cell(j, k).id());
  return g;
}

Grid transpose(const Grid& g) {
  Grid t;
  t.rows = g.cols;
  t.cols = g.rows;
  t.cells.resize(g.cells.size());
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c)
      t.cells[static_cast<size_t>(c) * t.cols + r] = g.at(r, c);
  return t;
}

uint64_t mix(uint64_t a, uint64_t b) {
  uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t fold_sorted(std::vector<uint64_t>& tokens) {
  std::sort(tokens.begin(), tokens.end());
  uint64_t h = 0x2545f4914f6cdd1dULL;
  for (uint64_t t : tokens) h = mix(h, t);
  return h;
}

struct Colors {
  std::vector<uint64_t> row, col, sym;  // 0-based; sym indexed by id-1
};

/// Joint 1-WL style refinement of row, column and symbol colors; a fixed
/// round count keeps the procedure identical on both inputs.
Colors refine(const Grid& g, int symbols) {
  Colors c;
  c.row.assign(g.rows, 0);
  c.col.assign(g.cols, 0);
  c.sym.assign(symbols, 0);
  for (int r = 0; r < g.rows; ++r) {
    int stars = 0;
    for (int k = 0; k < g.cols; ++k)
      if (g.at(r, k) == 0) ++stars;
    c.row[r] = mix(1, stars);
  }
  for (int k = 0; k < g.cols; ++k) {
    int stars = 0;
    for (int r = 0; r < g.rows; ++r)
      if (g.at(r, k) == 0) ++stars;
    c.col[k] = mix(2, stars);
  }
  std::vector<int> occ(symbols, 0);
  for (int32_t v : g.cells)
    if (v > 0) ++occ[v - 1];
  for (int s = 0; s < symbols; ++s) c.sym[s] = mix(3, occ[s]);

  for (int round = 0; round < 6; ++round) {
    Colors next = c;
    std::vector<uint64_t> tokens;
    for (int r = 0; r < g.rows; ++r) {
      tokens.clear();
      for (int k = 0; k < g.cols; ++k) {
        int32_t v = g.at(r, k);
        tokens.push_back(v == 0 ? mix(11, c.col[k]) : mix(c.col[k], c.sym[v - 1]));
      }
      next.row[r] = mix(c.row[r], fold_sorted(tokens));
    }
    for (int k = 0; k < g.cols; ++k) {
      tokens.clear();
      for (int r = 0; r < g.rows; ++r) {
        int32_t v = g.at(r, k);
        tokens.push_back(v == 0 ? mix(13, c.row[r]) : mix(c.row[r], c.sym[v - 1]));
      }
      next.col[k] = mix(c.col[k], fold_sorted(tokens));
    }
    std::vector<std::vector<uint64_t>> sym_tokens(symbols);
    for (int r = 0; r < g.rows; ++r)
      for (int k = 0; k < g.cols; ++k) {
        int32_t v = g.at(r, k);
        if (v > 0) sym_tokens[v - 1].push_back(mix(c.row[r], c.col[k]));
      }
    for (int s = 0; s < symbols; ++s)
      next.sym[s] = mix(c.sym[s], fold_sorted(sym_tokens[s]));
    c = std::move(next);
  }
  return c;
}

bool same_multiset(std::vector<uint64_t> a, std::vector<uint64_t> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

class Search {
 public:
  Search(const Grid& a, const Grid& b, const Colors& ca, const Colors& cb,
         int symbols, int64_t node_budget)
      : a_(a), b_(b), ca_(ca), cb_(cb),
        row_map_(a.rows, -1), row_used_(b.rows, false),
        col_map_(a.cols, -1), col_used_(b.cols, false),
        comp_(static_cast<size_t>(a.cols) * b.cols, 1),
        sym_ab_(symbols + 1, 0), sym_ba_(symbols + 1, 0),
        nodes_left_(node_budget) {
    for (int ka = 0; ka < a.cols; ++ka)
      for (int kb = 0; kb < b.cols; ++kb)
        comp_[idx(ka, kb)] = ca.col[ka] == cb.col[kb];
    row_order_.resize(a.rows);
    std::iota(row_order_.begin(), row_order_.end(), 0);
    std::map<uint64_t, int> class_size;
    for (uint64_t c : ca.row) ++class_size[c];
    std::stable_sort(row_order_.begin(), row_order_.end(), [&](int x, int y) {
      return class_size[ca.row[x]] < class_size[ca.row[y]];
    });
  }

  bool run() { return assign_row(0); }

 private:
  size_t idx(int ka, int kb) const { return static_cast<size_t>(ka) * b_.cols + kb; }

  bool spend_node() {
    if (--nodes_left_ < 0)
      throw TooLargeError("isomorphism search exceeded its node budget");
    return true;
  }

  bool assign_row(int depth) {
    if (depth == a_.rows) return assign_col(0);
    const int ra = row_order_[depth];
    for (int rb = 0; rb < b_.rows; ++rb) {
      if (row_used_[rb] || ca_.row[ra] != cb_.row[rb]) continue;
      spend_node();
      std::vector<size_t> disabled;
      if (restrict_columns(ra, rb, disabled)) {
        row_map_[ra] = rb;
        row_used_[rb] = true;
        if (assign_row(depth + 1)) return true;
        row_map_[ra] = -1;
        row_used_[rb] = false;
      }
      for (size_t i : disabled) comp_[i] = 1;
    }
    return false;
  }

  /// Marks column pairs that disagree on the star pattern of the newly
  /// mapped row pair; fails if some column loses its last candidate.
  bool restrict_columns(int ra, int rb, std::vector<size_t>& disabled) {
    for (int ka = 0; ka < a_.cols; ++ka) {
      bool any = false;
      for (int kb = 0; kb < b_.cols; ++kb) {
        size_t i = idx(ka, kb);
        if (!comp_[i]) continue;
        if ((a_.at(ra, ka) == 0) != (b_.at(rb, kb) == 0)) {
          comp_[i] = 0;
          disabled.push_back(i);
        } else {
          any = true;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  bool assign_col(int ka) {
    if (ka == a_.cols) return true;
    for (int kb = 0; kb < b_.cols; ++kb) {
      if (col_used_[kb] || !comp_[idx(ka, kb)]) continue;
      spend_node();
      std::vector<int32_t> touched;
      if (map_symbols(ka, kb, touched)) {
        col_map_[ka] = kb;
        col_used_[kb] = true;
        if (assign_col(ka + 1)) return true;
        col_map_[ka] = -1;
        col_used_[kb] = false;
      }
      for (int32_t s : touched) {
        sym_ba_[sym_ab_[s]] = 0;
        sym_ab_[s] = 0;
      }
    }
    return false;
  }

  bool map_symbols(int ka, int kb, std::vector<int32_t>& touched) {
    for (int ra = 0; ra < a_.rows; ++ra) {
      int32_t av = a_.at(ra, ka);
      int32_t bv = b_.at(row_map_[ra], kb);
      if ((av == 0) != (bv == 0)) return false;
      if (av == 0) continue;
      if (sym_ab_[av] == 0 && sym_ba_[bv] == 0) {
        sym_ab_[av] = bv;
        sym_ba_[bv] = av;
        touched.push_back(av);
      } else if (sym_ab_[av] != bv) {
        return false;
      }
    }
    return true;
  }

  const Grid &a_, &b_;
  Colors ca_, cb_;
  std::vector<int> row_map_;
  std::vector<char> row_used_;
  std::vector<int> col_map_;
  std::vector<char> col_used_;
  std::vector<char> comp_;
  std::vector<int32_t> sym_ab_, sym_ba_;
  std::vector<int> row_order_;
  int64_t nodes_left_;
};

}  // namespace

bool is_isomorphic(const PdaArray& a, const PdaArray& b, const IsoOptions& opts) {
  if (a.cell_count() > opts.cell_budget || b.cell_count() > opts.cell_budget)
    throw TooLargeError("array exceeds the isomorphism cell budget of " +
                        std::to_string(opts.cell_budget));
  PdaParams pa = verify_pda(a);
  PdaParams pb = verify_pda(b);
  if (pa != pb) return false;

  Grid ga = to_grid(a);
  Grid gb = to_grid(b);
  if (ga.rows > ga.cols) {
    ga = transpose(ga);
    gb = transpose(gb);
  }

  Colors ca = refine(ga, pa.symbols);
  Colors cb = refine(gb, pb.symbols);
  if (!same_multiset(ca.row, cb.row) || !same_multiset(ca.col, cb.col) ||
      !same_multiset(ca.sym, cb.sym))
    return false;

  Search search(ga, gb, ca, cb, pa.symbols, opts.node_budget);
  return search.run();
}

}  // namespace pda
