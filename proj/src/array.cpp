#include "pda/array.hpp"

#include <algorithm>
#include <map>

namespace pda {

PdaArray relabel_symbols(const PdaArray& array) {
  std::map<SymbolKey, int32_t> by_key;  // key -> original id
  for (int j = 1; j <= array.rows(); ++j) {
    for (int k = 1; k <= array.cols(); ++k) {
      Cell c = array.cell(j, k);
      if (c.is_star()) continue;
      SymbolKey key;
      if (const SymbolKey* recorded = array.symbol_key(c.id()))
        key = *recorded;
      else
        key = {c.id()};
      auto [it, inserted] = by_key.emplace(std::move(key), c.id());
      if (!inserted && it->second != c.id())
        throw PdaError("two symbol ids share the same key");
    }
  }

  std::vector<int32_t> new_id;  // indexed by old id
  new_id.assign(array.max_symbol() + 1, 0);
  int32_t next = 1;
  bool identity = true;
  for (const auto& [key, old] : by_key) {
    new_id[old] = next;
    if (old != next) identity = false;
    ++next;
  }
  if (identity) return array;

  PdaArray out(array.rows(), array.cols());
  for (int j = 1; j <= array.rows(); ++j)
    for (int k = 1; k <= array.cols(); ++k) {
      Cell c = array.cell(j, k);
      if (!c.is_star()) c = Cell::symbol(new_id[c.id()]);
      out.set_cell(j, k, c);
    }
  for (const auto& [key, old] : by_key) out.set_symbol_key(new_id[old], key);
  return out;
}

}  // namespace pda
