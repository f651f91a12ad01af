#include "psl2rc/json.hpp"

#include <sstream>

namespace psl2rc {

JsonValue JsonValue::str(std::string s) {
  JsonValue v;
  v.kind = Kind::String;
  v.str_v = std::move(s);
  return v;
}

JsonValue JsonValue::integer(Int i) {
  JsonValue v;
  v.kind = Kind::Int;
  v.int_v = std::move(i);
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind = Kind::Array;
  return v;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind = Kind::Object;
  return v;
}

JsonValue& JsonValue::set(std::string key, JsonValue v) {
  obj.emplace_back(std::move(key), std::move(v));
  return obj.back().second;
}

const JsonValue* JsonValue::find(std::string_view key) const {
  for (const auto& [k, v] : obj)
    if (k == key) return &v;
  return nullptr;
}

const char* JsonValue::kind_name() const {
  switch (kind) {
    case Kind::Null: return "null";
    case Kind::Bool: return "boolean";
    case Kind::Int: return "integer";
    case Kind::String: return "string";
    case Kind::Array: return "array";
    case Kind::Object: return "object";
  }
  return "?";
}

namespace {

constexpr int kMaxDepth = 128;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  JsonParseResult run() {
    JsonParseResult result;
    JsonValue root;
    if (!parse_value(root, 0)) {
      result.error = error_;
      return result;
    }
    skip_ws();
    if (pos_ < text_.size()) {
      set_error("trailing data after the document");
      result.error = error_;
      return result;
    }
    result.value = std::move(root);
    return result;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  JsonError error_;

  bool set_error(const std::string& reason) {
    error_ = JsonError{line_, col_, reason};
    return false;
  }

  char peek() const { return text_[pos_]; }
  bool eof() const { return pos_ >= text_.size(); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        advance();
      else
        return;
    }
  }

  bool expect(char c, const char* what) {
    if (eof() || peek() != c) return set_error(std::string("expected ") + what);
    advance();
    return true;
  }

  bool parse_value(JsonValue& out, int depth) {
    if (depth > kMaxDepth) return set_error("nesting depth limit exceeded");
    skip_ws();
    if (eof()) return set_error("unexpected end of input");
    char c = peek();
    switch (c) {
      case '{': return parse_object(out, depth);
      case '[': return parse_array(out, depth);
      case '"': {
        out.kind = JsonValue::Kind::String;
        return parse_string(out.str_v);
      }
      case 't':
      case 'f': return parse_keyword(out, c == 't' ? "true" : "false");
      case 'n': return parse_keyword(out, "null");
      default:
        if (c == '-' || (c >= '0' && c <= '9')) return parse_int(out);
        return set_error(std::string("unexpected character '") + printable(c) + "'");
    }
  }

  static std::string printable(char c) {
    if (c >= 0x20 && c < 0x7f) return std::string(1, c);
    std::ostringstream os;
    os << "\\x" << std::hex << (static_cast<unsigned>(c) & 0xff);
    return os.str();
  }

  bool parse_keyword(JsonValue& out, std::string_view word) {
    for (char expected : word) {
      if (eof() || peek() != expected)
        return set_error("malformed literal (expected '" + std::string(word) + "')");
      advance();
    }
    if (word == "true" || word == "false") {
      out.kind = JsonValue::Kind::Bool;
      out.bool_v = word == "true";
    } else {
      out.kind = JsonValue::Kind::Null;
    }
    return true;
  }

  bool parse_int(JsonValue& out) {
    std::string digits;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      advance();
    }
    if (eof() || peek() < '0' || peek() > '9') return set_error("malformed number");
    while (!eof() && peek() >= '0' && peek() <= '9') {
      digits.push_back(peek());
      advance();
    }
    if (!eof() && (peek() == '.' || peek() == 'e' || peek() == 'E'))
      return set_error("floating point numbers are not part of this format");
    if (digits.size() > 1 && digits[0] == '0') return set_error("leading zeros are not allowed");
    out.kind = JsonValue::Kind::Int;
    out.int_v = Int(digits);
    if (neg) out.int_v = -out.int_v;
    return true;
  }

  bool parse_hex4(unsigned& value) {
    value = 0;
    for (int i = 0; i < 4; ++i) {
      if (eof()) return set_error("truncated \\u escape");
      char c = peek();
      unsigned digit;
      if (c >= '0' && c <= '9')
        digit = c - '0';
      else if (c >= 'a' && c <= 'f')
        digit = 10 + (c - 'a');
      else if (c >= 'A' && c <= 'F')
        digit = 10 + (c - 'A');
      else
        return set_error("invalid \\u escape digit");
      value = value * 16 + digit;
      advance();
    }
    return true;
  }

  static void append_utf8(std::string& out, unsigned cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  }

  bool parse_string(std::string& out) {
    if (!expect('"', "'\"'")) return false;
    out.clear();
    while (true) {
      if (eof()) return set_error("unterminated string");
      char c = peek();
      if (c == '"') {
        advance();
        return true;
      }
      if (c == '\\') {
        advance();
        if (eof()) return set_error("truncated escape");
        char esc = peek();
        switch (esc) {
          case '"': out.push_back('"'); advance(); break;
          case '\\': out.push_back('\\'); advance(); break;
          case '/': out.push_back('/'); advance(); break;
          case 'b': out.push_back('\b'); advance(); break;
          case 'f': out.push_back('\f'); advance(); break;
          case 'n': out.push_back('\n'); advance(); break;
          case 'r': out.push_back('\r'); advance(); break;
          case 't': out.push_back('\t'); advance(); break;
          case 'u': {
            advance();
            unsigned cp = 0;
            if (!parse_hex4(cp)) return false;
            if (cp >= 0xd800 && cp <= 0xdbff) {
              // surrogate pair
              if (eof() || peek() != '\\') return set_error("unpaired surrogate");
              advance();
              if (eof() || peek() != 'u') return set_error("unpaired surrogate");
              advance();
              unsigned low = 0;
              if (!parse_hex4(low)) return false;
              if (low < 0xdc00 || low > 0xdfff) return set_error("invalid low surrogate");
              cp = 0x10000 + ((cp - 0xd800) << 10) + (low - 0xdc00);
            } else if (cp >= 0xdc00 && cp <= 0xdfff) {
              return set_error("unpaired surrogate");
            }
            append_utf8(out, cp);
            break;
          }
          default: return set_error("unknown escape sequence");
        }
        continue;
      }
      if (static_cast<unsigned char>(c) < 0x20)
        return set_error("raw control character in string");
      out.push_back(c);
      advance();
    }
  }

  bool parse_object(JsonValue& out, int depth) {
    if (!expect('{', "'{'")) return false;
    out.kind = JsonValue::Kind::Object;
    skip_ws();
    if (!eof() && peek() == '}') {
      advance();
      return true;
    }
    while (true) {
      skip_ws();
      std::string key;
      if (eof() || peek() != '"') return set_error("expected object key");
      if (!parse_string(key)) return false;
      skip_ws();
      if (!expect(':', "':'")) return false;
      JsonValue child;
      if (!parse_value(child, depth + 1)) return false;
      out.obj.emplace_back(std::move(key), std::move(child));
      skip_ws();
      if (eof()) return set_error("unterminated object");
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == '}') {
        advance();
        return true;
      }
      return set_error("expected ',' or '}'");
    }
  }

  bool parse_array(JsonValue& out, int depth) {
    if (!expect('[', "'['")) return false;
    out.kind = JsonValue::Kind::Array;
    skip_ws();
    if (!eof() && peek() == ']') {
      advance();
      return true;
    }
    while (true) {
      JsonValue child;
      if (!parse_value(child, depth + 1)) return false;
      out.arr.push_back(std::move(child));
      skip_ws();
      if (eof()) return set_error("unterminated array");
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == ']') {
        advance();
        return true;
      }
      return set_error("expected ',' or ']'");
    }
  }
};

void write_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c & 0x1f);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void write_value(std::string& out, const JsonValue& v, int indent) {
  std::string pad(indent * 2, ' ');
  std::string pad_in((indent + 1) * 2, ' ');
  switch (v.kind) {
    case JsonValue::Kind::Null: out += "null"; break;
    case JsonValue::Kind::Bool: out += v.bool_v ? "true" : "false"; break;
    case JsonValue::Kind::Int: out += v.int_v.str(); break;
    case JsonValue::Kind::String: write_escaped(out, v.str_v); break;
    case JsonValue::Kind::Array:
      if (v.arr.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.arr.size(); ++i) {
        out += pad_in;
        write_value(out, v.arr[i], indent + 1);
        if (i + 1 < v.arr.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      break;
    case JsonValue::Kind::Object:
      if (v.obj.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < v.obj.size(); ++i) {
        out += pad_in;
        write_escaped(out, v.obj[i].first);
        out += ": ";
        write_value(out, v.obj[i].second, indent + 1);
        if (i + 1 < v.obj.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      break;
  }
}

}  // namespace

JsonParseResult json_parse(std::string_view text) { return Parser(text).run(); }

std::string json_write(const JsonValue& v) {
  std::string out;
  write_value(out, v, 0);
  return out;
}

}  // namespace psl2rc
