#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psl2rc/chartab.hpp"
#include "psl2rc/rational.hpp"

namespace psl2rc {

/// One conjugacy class of an ingested table. All counts are exact integers
/// of arbitrary size; the interchange format carries them as decimal
/// strings so nothing ever passes through floating point.
struct ClassEntry {
  std::string name;
  Int size;
  Int element_order;
};

struct CharacterEntry {
  std::string name;
  std::vector<Cyc> values;  // one per class, in class order
};

/// In-memory form of a ".ctbl.json" character-table document.
struct TableDocument {
  std::string format_version = "1";
  std::string group_name;
  Int group_order;
  std::vector<ClassEntry> classes;
  std::vector<CharacterEntry> characters;

  bool operator==(const TableDocument& rhs) const;
};

/// Structured parse failure: kind is "SyntaxError", "SchemaError", or
/// "RaggedTable". Syntax errors carry line/col; schema errors carry the
/// JSON path of the offending node.
struct Diagnostic {
  std::string kind;
  int line = 0;
  int col = 0;
  std::string path;
  std::string reason;

  std::string to_string() const;
};

struct ParseResult {
  std::optional<TableDocument> doc;
  std::optional<Diagnostic> error;
  std::vector<std::string> warnings;  // lenient-mode normalizations

  bool ok() const { return doc.has_value(); }
};

enum class ParseMode { Strict, Lenient };

/// Parses document bytes. Strict mode (the default) rejects unknown fields
/// and anything not in canonical form; lenient mode normalizes and records a
/// warning instead. Never throws on malformed input.
ParseResult parse_table(std::string_view bytes, ParseMode mode = ParseMode::Strict);

/// Deterministic UTF-8 rendering: sorted keys, exponents ascending, rationals
/// in lowest terms with "/1" omitted, LF newlines, trailing newline.
/// parse(serialize(d)) == d and serialize is byte-stable across calls.
std::string serialize_table(const TableDocument& doc);

TableDocument to_document(const CharTable& t);

/// Row/column rationality census over an ingested grid; no structure beyond
/// the grid itself is assumed. Orthogonality validation failures are
/// reported as discrepancies.
RCReport census_document(const TableDocument& doc);

}  // namespace psl2rc
