#pragma once

#include <cstdint>
#include <vector>

#include "pda/errors.hpp"

namespace pda {

/// One grid entry: the caching star, or a positive symbol id.
class Cell {
 public:
  constexpr Cell() = default;

  static constexpr Cell star() { return Cell(); }

  static Cell symbol(int32_t id) {
    if (id < 1) throw PdaError("symbol ids must be positive");
    Cell c;
    c.value_ = id;
    return c;
  }

  constexpr bool is_star() const { return value_ == 0; }

  /// Symbol id, or 0 for a star.
  constexpr int32_t id() const { return value_; }

  friend constexpr bool operator==(Cell a, Cell b) { return a.value_ == b.value_; }
  friend constexpr bool operator!=(Cell a, Cell b) { return a.value_ != b.value_; }

 private:
  int32_t value_ = 0;
};

/// Key a symbol id originated from (an integer, or a vector symbol from the
/// union construction), kept through relabeling.
using SymbolKey = std::vector<int64_t>;

/// Row-major grid of cells.
///
/// Rows, columns and symbol ids are 1-based everywhere in this library; that
/// is the coordinate convention of the verifier errors and of every golden
/// value in the test suite.
class PdaArray {
 public:
  PdaArray(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 0) throw PdaError("bad array shape");
    cells_.assign(static_cast<size_t>(rows) * cols, Cell::star());
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int64_t cell_count() const { return static_cast<int64_t>(rows_) * cols_; }

  Cell cell(int row, int col) const { return cells_[index(row, col)]; }
  void set_cell(int row, int col, Cell c) { cells_[index(row, col)] = c; }

  /// Largest symbol id present (0 if the grid is all stars).
  int32_t max_symbol() const {
    int32_t m = 0;
    for (Cell c : cells_)
      if (c.id() > m) m = c.id();
    return m;
  }

  bool has_symbol_keys() const { return !keys_.empty(); }

  /// Originating key of a symbol id, or nullptr when none is recorded.
  const SymbolKey* symbol_key(int32_t id) const {
    if (id < 1 || static_cast<size_t>(id) > keys_.size()) return nullptr;
    return keys_[id - 1].empty() ? nullptr : &keys_[id - 1];
  }

  void set_symbol_key(int32_t id, SymbolKey key) {
    if (id < 1) throw PdaError("symbol ids must be positive");
    if (static_cast<size_t>(id) > keys_.size()) keys_.resize(id);
    keys_[id - 1] = std::move(key);
  }

  void clear_symbol_keys() { keys_.clear(); }

  friend bool operator==(const PdaArray& a, const PdaArray& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_ &&
           a.keys_ == b.keys_;
  }

 private:
  size_t index(int row, int col) const {
    return static_cast<size_t>(row - 1) * cols_ + (col - 1);
  }

  int rows_;
  int cols_;
  std::vector<Cell> cells_;
  std::vector<SymbolKey> keys_;  // indexed by id-1; empty entry = no key
};

/// Densifies symbol ids to [1:S], ordered by their keys (the recorded
/// originating key when present, otherwise the id itself). Keys ride along in
/// the result, so the operation is idempotent. Returns the input unchanged
/// when the ids are already densely key-ordered.
PdaArray relabel_symbols(const PdaArray& array);

}  // namespace pda
