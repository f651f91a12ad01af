#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psl2rc/numbers.hpp"

namespace psl2rc {

/// Restricted JSON value: objects, arrays, strings, and exact integers
/// (floats are rejected at the lexer). Booleans and null are lexed so the
/// schema layer can reject them with a path instead of a cryptic syntax
/// error. Object member order is preserved as parsed / as inserted.
struct JsonValue {
  enum class Kind { Null, Bool, Int, String, Array, Object };

  Kind kind = Kind::Null;
  bool bool_v = false;
  Int int_v;
  std::string str_v;
  std::vector<JsonValue> arr;
  std::vector<std::pair<std::string, JsonValue>> obj;

  static JsonValue str(std::string s);
  static JsonValue integer(Int v);
  static JsonValue array();
  static JsonValue object();

  JsonValue& set(std::string key, JsonValue v);  // appends; caller keeps keys sorted
  const JsonValue* find(std::string_view key) const;  // first match or nullptr

  const char* kind_name() const;
};

struct JsonError {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
  std::string reason;
};

struct JsonParseResult {
  std::optional<JsonValue> value;
  std::optional<JsonError> error;
  bool ok() const { return value.has_value(); }
};

/// Parses a complete document. Never throws; malformed input of any shape
/// (including binary noise) comes back as a positioned JsonError.
JsonParseResult json_parse(std::string_view text);

/// Canonical rendering: two-space indent, one element per line, members in
/// stored order, minimal escaping. No trailing newline.
std::string json_write(const JsonValue& v);

}  // namespace psl2rc
