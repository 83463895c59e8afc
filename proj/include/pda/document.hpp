#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pda/verify.hpp"

namespace pda {

/// On-disk form of an array: declared parameters, optional base-PDA data
/// (lambda and the star-row assignment), optional provenance, symbol keys
/// and the grid itself. Parsing checks shape consistency only; C1-C3 are the
/// verifier's job, so invalid fixtures can be stored and loaded.
struct PdaDocument {
  int version = 1;
  PdaParams params;
  std::optional<int> lambda;
  std::vector<int> star_row;  // phi, one row per symbol; empty when absent
  std::string provenance;
  PdaArray array{1, 1};

  bool is_base() const { return lambda.has_value() && !star_row.empty(); }
};

/// Canonical text form; serialize/parse round-trip byte-identically.
std::string serialize(const PdaDocument& doc);
PdaDocument parse_document(const std::string& text);

/// Bare whitespace-separated grid ("*" or positive decimal ids).
PdaArray parse_grid(const std::string& text);
std::string grid_string(const PdaArray& array);

/// Builds a verified document from an array (or base) plus provenance.
PdaDocument document_for(const PdaArray& array, std::string provenance);
PdaDocument document_for(const BasePda& base, std::string provenance);

}  // namespace pda
