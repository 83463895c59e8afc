#include "pda/verify.hpp"

#include <algorithm>
#include <numeric>

namespace pda {

namespace {

struct Occurrence {
  int32_t row, col;  // 1-based
};

/// Occurrence lists per symbol id, in row-major scan order. Throws
/// C2Violation when the ids do not form [1:max] (checked here because a
/// sparse id set would make the per-id table unbounded).
std::vector<std::vector<Occurrence>> collect_occurrences(const PdaArray& a) {
  const int64_t cells = a.cell_count();
  const int32_t max_id = a.max_symbol();
  if (max_id == 0) throw C2Violation(1);  // all stars: S must be positive
  if (max_id > cells) {
    // Some id in [1:max_id] is missing; find the smallest.
    std::vector<int32_t> present;
    for (int j = 1; j <= a.rows(); ++j)
      for (int k = 1; k <= a.cols(); ++k)
        if (!a.cell(j, k).is_star()) present.push_back(a.cell(j, k).id());
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    for (size_t i = 0; i < present.size(); ++i)
      if (present[i] != static_cast<int32_t>(i) + 1)
        throw C2Violation(static_cast<int>(i) + 1);
    throw C2Violation(static_cast<int>(present.size()) + 1);
  }
  std::vector<std::vector<Occurrence>> occ(max_id + 1);
  for (int j = 1; j <= a.rows(); ++j)
    for (int k = 1; k <= a.cols(); ++k) {
      Cell c = a.cell(j, k);
      if (!c.is_star()) occ[c.id()].push_back({j, k});
    }
  return occ;
}

}  // namespace

PdaParams verify_pda(const PdaArray& a) {
  if (a.rows() < 1 || a.cols() < 1) throw EmptyArrayError();

  // C1: uniform star count per column; column 1 is the reference.
  std::vector<int> stars(a.cols() + 1, 0);
  for (int j = 1; j <= a.rows(); ++j)
    for (int k = 1; k <= a.cols(); ++k)
      if (a.cell(j, k).is_star()) ++stars[k];
  for (int k = 2; k <= a.cols(); ++k)
    if (stars[k] != stars[1]) throw C1Violation(k, stars[k], stars[1]);

  // C2.
  auto occ = collect_occurrences(a);
  const int32_t max_id = a.max_symbol();
  for (int32_t s = 1; s <= max_id; ++s)
    if (occ[s].empty()) throw C2Violation(s);

  // C3, pairwise within each symbol's occurrence list.
  for (int32_t s = 1; s <= max_id; ++s) {
    const auto& list = occ[s];
    for (size_t i = 0; i + 1 < list.size(); ++i)
      for (size_t l = i + 1; l < list.size(); ++l) {
        const auto [j1, k1] = list[i];
        const auto [j2, k2] = list[l];
        if (j1 == j2 || k1 == k2 || !a.cell(j1, k2).is_star() ||
            !a.cell(j2, k1).is_star())
          throw C3Violation(j1, k1, j2, k2);
      }
  }

  PdaParams p;
  p.users = a.cols();
  p.packets = a.rows();
  p.cached = stars[1];
  p.symbols = max_id;
  const size_t g = occ[1].size();
  bool regular = true;
  for (int32_t s = 2; s <= max_id && regular; ++s) regular = occ[s].size() == g;
  if (regular) p.gain = static_cast<int>(g);
  return p;
}

std::set<int> find_star_rows(const PdaArray& a, int symbol) {
  if (a.rows() < 1 || a.cols() < 1) throw EmptyArrayError();
  std::vector<int> cols_with;
  for (int k = 1; k <= a.cols(); ++k)
    for (int j = 1; j <= a.rows(); ++j)
      if (a.cell(j, k) == Cell::symbol(symbol)) {
        cols_with.push_back(k);
        break;
      }
  if (cols_with.empty()) throw UnknownSymbolError(symbol);

  std::set<int> rows;
  for (int j = 1; j <= a.rows(); ++j) {
    bool all = true;
    for (int k : cols_with)
      if (!a.cell(j, k).is_star()) {
        all = false;
        break;
      }
    if (all) rows.insert(j);
  }
  return rows;
}

namespace {

/// Bipartite b-matching of symbols onto rows with a uniform row capacity,
/// by augmenting paths. Rows and symbols are 1-based.
class RowMatcher {
 public:
  RowMatcher(const std::vector<std::vector<int>>& candidates, int row_count, int capacity)
      : cand_(candidates), capacity_(capacity), assigned_(row_count + 1),
        match_(candidates.size(), 0) {}

  /// Tries to place symbol s (1-based index into candidates, which holds
  /// entries for symbols 1..S at positions 1..S).
  bool place(int s) {
    visited_.assign(assigned_.size(), false);
    return augment(s);
  }

  int matched_row(int s) const { return match_[s]; }

  void preload(int row) { assigned_[row].push_back(0); }  // reserved slot

 private:
  bool augment(int s) {
    for (int r : cand_[s]) {
      if (visited_[r]) continue;
      visited_[r] = true;
      if (static_cast<int>(assigned_[r].size()) < capacity_) {
        assigned_[r].push_back(s);
        match_[s] = r;
        return true;
      }
    }
    for (int r : cand_[s]) {
      for (int& other : assigned_[r]) {
        if (other == 0) continue;  // reserved by a committed symbol
        if (augment(other)) {
          other = s;
          match_[s] = r;
          return true;
        }
      }
    }
    return false;
  }

  const std::vector<std::vector<int>>& cand_;
  int capacity_;
  std::vector<std::vector<int>> assigned_;  // row -> symbols placed there
  std::vector<int> match_;                  // symbol -> row (0 = unplaced)
  std::vector<bool> visited_;
};

/// True iff symbols [from:S] can all be placed given the rows already
/// consumed by commitments (counted in `committed`).
bool feasible(const std::vector<std::vector<int>>& cand, int row_count, int capacity,
              const std::vector<int>& committed, int from) {
  RowMatcher m(cand, row_count, capacity);
  for (int r = 1; r <= row_count; ++r)
    for (int i = 0; i < committed[r]; ++i) m.preload(r);
  for (int s = from; s < static_cast<int>(cand.size()); ++s)
    if (!m.place(s)) return false;
  return true;
}

BasePda finish_base(const PdaArray& array, PdaParams params, int lambda,
                    std::vector<int> star_row) {
  const int block_rows = params.packets / lambda;
  std::vector<std::vector<int>> blocks(block_rows);
  for (int s = 1; s <= params.symbols; ++s) blocks[star_row[s - 1] - 1].push_back(s);
  return BasePda{array, params, lambda, std::move(star_row), std::move(blocks)};
}

void check_c4(const PdaArray& a, int lambda, const PdaParams& params) {
  if (lambda < 1 || params.packets % lambda != 0)
    throw NonDivisibleLambdaError("lambda=" + std::to_string(lambda) +
                                  ", rows=" + std::to_string(params.packets));
  if (params.cached % lambda != 0)
    throw NonDivisibleLambdaError("lambda=" + std::to_string(lambda) +
                                  " does not divide the per-column star count " +
                                  std::to_string(params.cached));
  const int block_rows = params.packets / lambda;
  for (int j = block_rows + 1; j <= params.packets; ++j) {
    const int base_row = (j - 1) % block_rows + 1;
    for (int k = 1; k <= params.users; ++k)
      if (a.cell(j, k).is_star() != a.cell(base_row, k).is_star())
        throw C4Violation(j, k);
  }
}

/// Star rows of each symbol restricted to the first block. By C4 a row is a
/// star row iff its residue in the first block is, so nothing is lost.
std::vector<std::vector<int>> block_candidates(const PdaArray& a, const PdaParams& params,
                                               int block_rows) {
  std::vector<std::vector<int>> cols_with(params.symbols + 1);
  for (int k = 1; k <= params.users; ++k)
    for (int j = 1; j <= params.packets; ++j) {
      Cell c = a.cell(j, k);
      if (c.is_star()) continue;
      auto& v = cols_with[c.id()];
      if (v.empty() || v.back() != k) v.push_back(k);
    }
  std::vector<std::vector<int>> cand(params.symbols + 1);
  for (int s = 1; s <= params.symbols; ++s)
    for (int r = 1; r <= block_rows; ++r) {
      bool all = true;
      for (int k : cols_with[s])
        if (!a.cell(r, k).is_star()) {
          all = false;
          break;
        }
      if (all) cand[s].push_back(r);
    }
  return cand;
}

}  // namespace

BasePda verify_base_pda(const PdaArray& a, int lambda) {
  PdaParams params = verify_pda(a);
  check_c4(a, lambda, params);

  const int block_rows = params.packets / lambda;
  if ((static_cast<int64_t>(lambda) * params.symbols) % params.packets != 0)
    throw NoValidPhiError("lambda*S/F = " + std::to_string(lambda) + "*" +
                          std::to_string(params.symbols) + "/" +
                          std::to_string(params.packets) + " is not an integer");
  const int capacity = static_cast<int>(static_cast<int64_t>(lambda) * params.symbols /
                                        params.packets);

  auto cand = block_candidates(a, params, block_rows);
  for (int s = 1; s <= params.symbols; ++s)
    if (cand[s].empty())
      throw NoValidPhiError("no star row for symbol " + std::to_string(s));

  std::vector<int> committed(block_rows + 1, 0);
  if (!feasible(cand, block_rows, capacity, committed, 1))
    throw NoValidPhiError("no uniform assignment exists");

  // Lexicographically least assignment: fix symbols in order, trying rows
  // ascending, keeping only choices that leave the rest feasible.
  std::vector<int> star_row(params.symbols);
  for (int s = 1; s <= params.symbols; ++s) {
    bool placed = false;
    for (int r : cand[s]) {
      if (committed[r] == capacity) continue;
      ++committed[r];
      if (feasible(cand, block_rows, capacity, committed, s + 1)) {
        star_row[s - 1] = r;
        placed = true;
        break;
      }
      --committed[r];
    }
    if (!placed) throw NoValidPhiError("assignment search failed");  // unreachable
  }
  return finish_base(a, params, lambda, std::move(star_row));
}

BasePda verify_base_pda_with(const PdaArray& a, int lambda, std::vector<int> star_row) {
  PdaParams params = verify_pda(a);
  check_c4(a, lambda, params);

  const int block_rows = params.packets / lambda;
  if (static_cast<int>(star_row.size()) != params.symbols)
    throw NoValidPhiError("assignment covers " + std::to_string(star_row.size()) +
                          " symbols, expected " + std::to_string(params.symbols));
  if ((static_cast<int64_t>(lambda) * params.symbols) % params.packets != 0)
    throw NoValidPhiError("lambda*S/F is not an integer");
  const int capacity = static_cast<int>(static_cast<int64_t>(lambda) * params.symbols /
                                        params.packets);

  auto cand = block_candidates(a, params, block_rows);
  std::vector<int> load(block_rows + 1, 0);
  for (int s = 1; s <= params.symbols; ++s) {
    const int r = star_row[s - 1];
    if (r < 1 || r > block_rows ||
        !std::binary_search(cand[s].begin(), cand[s].end(), r))
      throw NoValidPhiError("row " + std::to_string(r) + " is not a star row for symbol " +
                            std::to_string(s));
    ++load[r];
  }
  for (int r = 1; r <= block_rows; ++r)
    if (load[r] != capacity)
      throw NoValidPhiError("row " + std::to_string(r) + " is assigned " +
                            std::to_string(load[r]) + " symbols, expected " +
                            std::to_string(capacity));
  return finish_base(a, params, lambda, std::move(star_row));
}

}  // namespace pda
