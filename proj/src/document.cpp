#include "pda/document.hpp"

#include <limits>
#include <sstream>

namespace pda {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int64_t parse_int64(const std::string& tok, int line, const char* what) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line, const char* what, int min_value) {
  const int64_t v = parse_int64(tok, line, what);
  if (v < min_value || v > std::numeric_limits<int>::max())
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  return static_cast<int>(v);
}

Cell parse_cell(const std::string& tok, int line) {
  if (tok == "*") return Cell::star();
  return Cell::symbol(parse_int(tok, line, "symbol (symbols are positive)", 1));
}

/// Reads grid rows from `lines[pos..]` into an array of the given shape.
PdaArray read_grid(const std::vector<std::string>& lines, size_t& pos, int rows,
                   int cols) {
  PdaArray array(rows, cols);
  for (int j = 1; j <= rows; ++j, ++pos) {
    if (pos >= lines.size()) throw ParseError(static_cast<int>(pos) + 1, "missing grid row");
    const auto toks = split_ws(lines[pos]);
    if (static_cast<int>(toks.size()) != cols)
      throw ParseError(static_cast<int>(pos) + 1,
                       "expected " + std::to_string(cols) + " cells, found " +
                           std::to_string(toks.size()));
    for (int k = 1; k <= cols; ++k)
      array.set_cell(j, k, parse_cell(toks[k - 1], static_cast<int>(pos) + 1));
  }
  return array;
}

}  // namespace

std::string grid_string(const PdaArray& array) {
  std::string out;
  for (int j = 1; j <= array.rows(); ++j) {
    for (int k = 1; k <= array.cols(); ++k) {
      if (k > 1) out += ' ';
      const Cell c = array.cell(j, k);
      out += c.is_star() ? "*" : std::to_string(c.id());
    }
    out += '\n';
  }
  return out;
}

PdaArray parse_grid(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!split_ws(line).empty()) lines.push_back(line);
  if (lines.empty()) throw ParseError(1, "empty grid");
  const auto first = split_ws(lines[0]);
  size_t pos = 0;
  return read_grid(lines, pos, static_cast<int>(lines.size()),
                   static_cast<int>(first.size()));
}

std::string serialize(const PdaDocument& doc) {
  std::ostringstream out;
  out << "pda " << doc.version << "\n";
  out << "params " << doc.params.users << " " << doc.params.packets << " "
      << doc.params.cached << " " << doc.params.symbols << " ";
  if (doc.params.gain)
    out << *doc.params.gain;
  else
    out << "-";
  out << "\n";
  if (doc.lambda) out << "lambda " << *doc.lambda << "\n";
  if (!doc.star_row.empty()) {
    out << "phi";
    for (int r : doc.star_row) out << " " << r;
    out << "\n";
  }
  if (!doc.provenance.empty()) out << "provenance " << doc.provenance << "\n";
  for (int32_t s = 1; s <= doc.array.max_symbol(); ++s)
    if (const SymbolKey* key = doc.array.symbol_key(s)) {
      out << "symbol " << s;
      for (int64_t v : *key) out << " " << v;
      out << "\n";
    }
  out << "grid " << doc.array.rows() << " " << doc.array.cols() << "\n";
  out << grid_string(doc.array);
  return out.str();
}

PdaDocument parse_document(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  size_t pos = 0;
  const auto next = [&]() -> std::vector<std::string> {
    if (pos >= lines.size()) throw ParseError(static_cast<int>(pos) + 1, "unexpected end of file");
    return split_ws(lines[pos++]);
  };

  PdaDocument doc;
  {
    const auto head = next();
    if (head.size() != 2 || head[0] != "pda")
      throw ParseError(1, "expected header 'pda <version>'");
    const int version = parse_int(head[1], 1, "version", 0);
    if (version != 1) throw VersionMismatchError("version " + head[1]);
    doc.version = version;
  }
  {
    const auto toks = next();
    if (toks.size() != 6 || toks[0] != "params")
      throw ParseError(static_cast<int>(pos), "expected 'params K F Z S g'");
    doc.params.users = parse_int(toks[1], static_cast<int>(pos), "user count", 1);
    doc.params.packets = parse_int(toks[2], static_cast<int>(pos), "packet count", 1);
    doc.params.cached = parse_int(toks[3], static_cast<int>(pos), "star count", 0);
    doc.params.symbols = parse_int(toks[4], static_cast<int>(pos), "symbol count", 1);
    if (toks[5] != "-")
      doc.params.gain = parse_int(toks[5], static_cast<int>(pos), "gain", 1);
  }

  std::vector<std::pair<int32_t, SymbolKey>> keys;
  std::vector<std::string> toks;
  while (true) {
    toks = next();
    if (toks.empty()) throw ParseError(static_cast<int>(pos), "unexpected blank line");
    if (toks[0] == "grid") break;
    if (toks[0] == "lambda") {
      if (toks.size() != 2) throw ParseError(static_cast<int>(pos), "expected 'lambda L'");
      doc.lambda = parse_int(toks[1], static_cast<int>(pos), "lambda", 1);
    } else if (toks[0] == "phi") {
      if (static_cast<int>(toks.size()) != doc.params.symbols + 1)
        throw ParseError(static_cast<int>(pos),
                         "phi must list one row per symbol (" +
                             std::to_string(doc.params.symbols) + ")");
      for (size_t i = 1; i < toks.size(); ++i)
        doc.star_row.push_back(parse_int(toks[i], static_cast<int>(pos), "phi row", 1));
    } else if (toks[0] == "provenance") {
      const std::string& line = lines[pos - 1];
      size_t start = line.find("provenance") + std::string("provenance").size();
      while (start < line.size() && line[start] == ' ') ++start;
      doc.provenance = line.substr(start);
    } else if (toks[0] == "symbol") {
      if (toks.size() < 3)
        throw ParseError(static_cast<int>(pos), "expected 'symbol <id> <key...>'");
      SymbolKey key;
      for (size_t i = 2; i < toks.size(); ++i)
        key.push_back(parse_int(toks[i], static_cast<int>(pos), "symbol key",
                                std::numeric_limits<int>::min()));
      keys.emplace_back(parse_int(toks[1], static_cast<int>(pos), "symbol id", 1),
                        std::move(key));
    } else {
      throw ParseError(static_cast<int>(pos), "unknown field '" + toks[0] + "'");
    }
  }

  if (toks.size() != 3) throw ParseError(static_cast<int>(pos), "expected 'grid F K'");
  const int rows = parse_int(toks[1], static_cast<int>(pos), "row count", 1);
  const int cols = parse_int(toks[2], static_cast<int>(pos), "column count", 1);
  if (rows != doc.params.packets || cols != doc.params.users)
    throw ParseError(static_cast<int>(pos), "grid shape disagrees with params");
  doc.array = read_grid(lines, pos, rows, cols);
  for (; pos < lines.size(); ++pos)
    if (!split_ws(lines[pos]).empty())
      throw ParseError(static_cast<int>(pos) + 1, "trailing content after grid");
  for (auto& [id, key] : keys) doc.array.set_symbol_key(id, std::move(key));
  return doc;
}

PdaDocument document_for(const PdaArray& array, std::string provenance) {
  PdaDocument doc;
  doc.params = verify_pda(array);
  doc.provenance = std::move(provenance);
  doc.array = array;
  return doc;
}

PdaDocument document_for(const BasePda& base, std::string provenance) {
  PdaDocument doc;
  doc.params = base.params;
  doc.lambda = base.lambda;
  doc.star_row = base.star_row;
  doc.provenance = std::move(provenance);
  doc.array = base.array;
  return doc;
}

}  // namespace pda
