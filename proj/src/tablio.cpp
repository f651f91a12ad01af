#include "psl2rc/tablio.hpp"

#include <algorithm>
#include <sstream>

#include "psl2rc/json.hpp"

namespace psl2rc {

bool TableDocument::operator==(const TableDocument& rhs) const {
  if (format_version != rhs.format_version || group_name != rhs.group_name ||
      group_order != rhs.group_order || classes.size() != rhs.classes.size() ||
      characters.size() != rhs.characters.size())
    return false;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].name != rhs.classes[i].name || classes[i].size != rhs.classes[i].size ||
        classes[i].element_order != rhs.classes[i].element_order)
      return false;
  }
  for (std::size_t i = 0; i < characters.size(); ++i) {
    if (characters[i].name != rhs.characters[i].name ||
        characters[i].values != rhs.characters[i].values)
      return false;
  }
  return true;
}

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  os << kind;
  if (line > 0) os << " at line " << line << ", col " << col;
  if (!path.empty()) os << " at " << path;
  os << ": " << reason;
  return os.str();
}

namespace {

// Schema walker with strict/lenient behavior. Any hard failure aborts the
// walk through this sentinel exception (internal to this file).
struct SchemaFail {
  Diagnostic diag;
};

class SchemaReader {
 public:
  SchemaReader(ParseMode mode, std::vector<std::string>& warnings)
      : strict_(mode == ParseMode::Strict), warnings_(warnings) {}

  [[noreturn]] void reject(const std::string& path, const std::string& reason,
                           const char* kind = "SchemaError") const {
    throw SchemaFail{Diagnostic{kind, 0, 0, path, reason}};
  }

  // Returns true when the caller should normalize-and-continue.
  bool tolerate(const std::string& path, const std::string& reason) const {
    if (strict_) reject(path, reason);
    warnings_.push_back(path + ": " + reason);
    return true;
  }

  const JsonValue& member(const JsonValue& obj, const std::string& path, const char* key) const {
    const JsonValue* v = obj.find(key);
    if (!v) reject(path, std::string("missing required field \"") + key + "\"");
    return *v;
  }

  void check_members(const JsonValue& obj, const std::string& path,
                     std::initializer_list<const char*> allowed) const {
    std::vector<std::string> seen;
    for (const auto& [k, v] : obj.obj) {
      if (std::find(seen.begin(), seen.end(), k) != seen.end())
        tolerate(path, "duplicate field \"" + k + "\" (first occurrence wins)");
      seen.push_back(k);
      bool known = false;
      for (const char* a : allowed)
        if (k == a) known = true;
      if (!known) tolerate(path, "unknown field \"" + k + "\"");
    }
  }

  const JsonValue& expect_kind(const JsonValue& v, JsonValue::Kind kind, const std::string& path,
                               const char* what) const {
    if (v.kind != kind)
      reject(path, std::string("expected ") + what + ", found " + v.kind_name());
    return v;
  }

  std::string expect_string(const JsonValue& v, const std::string& path) const {
    expect_kind(v, JsonValue::Kind::String, path, "a string");
    return v.str_v;
  }

  Int expect_positive_decimal(const JsonValue& v, const std::string& path) const {
    expect_kind(v, JsonValue::Kind::String, path, "a decimal string");
    auto canonical = parse_canonical_uint(v.str_v);
    if (!canonical) {
      auto parsed = parse_rational(v.str_v);
      if (!parsed || denominator(parsed->value) != 1 || parsed->value <= 0)
        reject(path, "\"" + v.str_v + "\" is not a positive decimal integer");
      tolerate(path, "\"" + v.str_v + "\" is not in canonical decimal form");
      return numerator(parsed->value);
    }
    if (*canonical == 0) reject(path, "value must be positive");
    return *canonical;
  }

  Rat expect_rational(const JsonValue& v, const std::string& path) const {
    expect_kind(v, JsonValue::Kind::String, path, "a rational string");
    auto parsed = parse_rational(v.str_v);
    if (!parsed) reject(path, "\"" + v.str_v + "\" is not a rational number");
    if (!parsed->canonical)
      tolerate(path, "\"" + v.str_v + "\" normalized to \"" + rat_to_string(parsed->value) + "\"");
    return parsed->value;
  }

  Cyc read_cyc(const JsonValue& v, const std::string& path) const {
    if (v.kind == JsonValue::Kind::String) return Cyc::rational(expect_rational(v, path));
    if (v.kind != JsonValue::Kind::Object)
      reject(path, std::string("expected a rational string or a {coeffs, n} object, found ") +
                       v.kind_name());
    check_members(v, path, {"coeffs", "n"});
    const JsonValue& nval = member(v, path, "n");
    expect_kind(nval, JsonValue::Kind::Int, path + ".n", "an integer");
    if (nval.int_v < 1) reject(path + ".n", "conductor must be >= 1");
    if (nval.int_v > conductor_cap())
      reject(path + ".n", "conductor " + nval.int_v.str() + " exceeds the cap " +
                              std::to_string(conductor_cap()));
    std::int64_t n = nval.int_v.convert_to<std::int64_t>();
    if (n == 1) tolerate(path, "rational values should use the string shorthand");

    const JsonValue& coeffs = member(v, path, "coeffs");
    expect_kind(coeffs, JsonValue::Kind::Object, path + ".coeffs", "an object");
    std::int64_t phi = euler_phi(n);
    std::map<std::int64_t, Rat> raw;
    std::vector<std::string> seen;
    for (const auto& [key, cv] : coeffs.obj) {
      std::string cpath = path + ".coeffs[\"" + key + "\"]";
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
        tolerate(cpath, "duplicate exponent (first occurrence wins)");
        continue;
      }
      seen.push_back(key);
      auto exp = parse_canonical_uint(key);
      if (!exp) reject(cpath, "exponent is not a canonical decimal");
      if (*exp >= n) reject(cpath, "exponent must be < n");
      std::int64_t e = exp->convert_to<std::int64_t>();
      if (e >= phi) tolerate(cpath, "exponent not reduced to the power basis");
      Rat c = expect_rational(cv, cpath);
      if (c == 0) {
        tolerate(cpath, "zero coefficient dropped");
        continue;
      }
      raw[e] = c;
    }
    Cyc out = Cyc::make(n, std::move(raw));
    if (is_rational(out) && n != 1)
      tolerate(path, "value is rational; canonical form uses the string shorthand");
    return out;
  }

 private:
  bool strict_;
  std::vector<std::string>& warnings_;
};

}  // namespace

ParseResult parse_table(std::string_view bytes, ParseMode mode) {
  ParseResult result;
  JsonParseResult parsed = json_parse(bytes);
  if (!parsed.ok()) {
    result.error = Diagnostic{"SyntaxError", parsed.error->line, parsed.error->col, "",
                              parsed.error->reason};
    return result;
  }

  SchemaReader reader(mode, result.warnings);
  try {
    const JsonValue& root = *parsed.value;
    reader.expect_kind(root, JsonValue::Kind::Object, "$", "an object");
    reader.check_members(root, "$",
                         {"characters", "classes", "format_version", "group_name", "group_order"});

    TableDocument doc;
    doc.format_version = reader.expect_string(reader.member(root, "$", "format_version"),
                                              "$.format_version");
    if (doc.format_version != "1")
      reader.reject("$.format_version", "unsupported version \"" + doc.format_version + "\"");
    doc.group_name = reader.expect_string(reader.member(root, "$", "group_name"), "$.group_name");
    doc.group_order =
        reader.expect_positive_decimal(reader.member(root, "$", "group_order"), "$.group_order");

    const JsonValue& classes = reader.member(root, "$", "classes");
    reader.expect_kind(classes, JsonValue::Kind::Array, "$.classes", "an array");
    if (classes.arr.empty()) reader.reject("$.classes", "at least one class is required");
    for (std::size_t i = 0; i < classes.arr.size(); ++i) {
      std::string path = "$.classes[" + std::to_string(i) + "]";
      const JsonValue& c = classes.arr[i];
      reader.expect_kind(c, JsonValue::Kind::Object, path, "an object");
      reader.check_members(c, path, {"element_order", "name", "size"});
      ClassEntry entry;
      entry.name = reader.expect_string(reader.member(c, path, "name"), path + ".name");
      entry.size = reader.expect_positive_decimal(reader.member(c, path, "size"), path + ".size");
      entry.element_order = reader.expect_positive_decimal(
          reader.member(c, path, "element_order"), path + ".element_order");
      doc.classes.push_back(std::move(entry));
    }

    const JsonValue& characters = reader.member(root, "$", "characters");
    reader.expect_kind(characters, JsonValue::Kind::Array, "$.characters", "an array");
    if (characters.arr.empty()) reader.reject("$.characters", "at least one character is required");
    for (std::size_t i = 0; i < characters.arr.size(); ++i) {
      std::string path = "$.characters[" + std::to_string(i) + "]";
      const JsonValue& c = characters.arr[i];
      reader.expect_kind(c, JsonValue::Kind::Object, path, "an object");
      reader.check_members(c, path, {"name", "values"});
      CharacterEntry entry;
      entry.name = reader.expect_string(reader.member(c, path, "name"), path + ".name");
      const JsonValue& values = reader.member(c, path, "values");
      reader.expect_kind(values, JsonValue::Kind::Array, path + ".values", "an array");
      if (values.arr.size() != doc.classes.size())
        reader.reject(path + ".values",
                      "character has " + std::to_string(values.arr.size()) + " values but " +
                          std::to_string(doc.classes.size()) + " classes are declared",
                      "RaggedTable");
      for (std::size_t j = 0; j < values.arr.size(); ++j)
        entry.values.push_back(
            reader.read_cyc(values.arr[j], path + ".values[" + std::to_string(j) + "]"));
      doc.characters.push_back(std::move(entry));
    }

    result.doc = std::move(doc);
  } catch (const SchemaFail& f) {
    result.error = f.diag;
    result.warnings.clear();
  } catch (const Error& e) {
    result.error = Diagnostic{"SchemaError", 0, 0, "", e.what()};
    result.warnings.clear();
  }
  return result;
}

namespace {

JsonValue cyc_to_json(const Cyc& v) {
  if (auto r = is_rational(v)) return JsonValue::str(rat_to_string(*r));
  JsonValue out = JsonValue::object();
  JsonValue coeffs = JsonValue::object();
  for (const auto& [e, c] : v.coeffs())
    coeffs.set(std::to_string(e), JsonValue::str(rat_to_string(c)));
  out.set("coeffs", std::move(coeffs));
  out.set("n", JsonValue::integer(Int(v.conductor())));
  return out;
}

}  // namespace

std::string serialize_table(const TableDocument& doc) {
  JsonValue root = JsonValue::object();

  JsonValue characters = JsonValue::array();
  for (const auto& chi : doc.characters) {
    JsonValue c = JsonValue::object();
    c.set("name", JsonValue::str(chi.name));
    JsonValue values = JsonValue::array();
    for (const auto& v : chi.values) values.arr.push_back(cyc_to_json(v));
    c.set("values", std::move(values));
    characters.arr.push_back(std::move(c));
  }
  root.set("characters", std::move(characters));

  JsonValue classes = JsonValue::array();
  for (const auto& cls : doc.classes) {
    JsonValue c = JsonValue::object();
    c.set("element_order", JsonValue::str(cls.element_order.str()));
    c.set("name", JsonValue::str(cls.name));
    c.set("size", JsonValue::str(cls.size.str()));
    classes.arr.push_back(std::move(c));
  }
  root.set("classes", std::move(classes));

  root.set("format_version", JsonValue::str(doc.format_version));
  root.set("group_name", JsonValue::str(doc.group_name));
  root.set("group_order", JsonValue::str(doc.group_order.str()));

  return json_write(root) + "\n";
}

TableDocument to_document(const CharTable& t) {
  TableDocument doc;
  doc.group_name = t.group_name;
  doc.group_order = Int(t.group_order);
  for (const auto& cls : t.classes)
    doc.classes.push_back(ClassEntry{cls.label, Int(cls.size), Int(cls.elt_order)});
  for (std::size_t i = 0; i < t.characters.size(); ++i)
    doc.characters.push_back(CharacterEntry{t.characters[i].name, t.values[i]});
  return doc;
}

RCReport census_document(const TableDocument& doc) {
  RCReport report;
  report.q = 0;
  report.group_name = doc.group_name;
  report.group_order = doc.group_order;

  std::vector<std::vector<Cyc>> values;
  std::vector<std::string> char_names;
  for (const auto& chi : doc.characters) {
    values.push_back(chi.values);
    char_names.push_back(chi.name);
  }
  std::vector<Int> sizes;
  std::vector<std::string> class_names;
  for (const auto& cls : doc.classes) {
    sizes.push_back(cls.size);
    class_names.push_back(cls.name);
  }

  ValidationReport validation =
      validate_grid(doc.group_order, sizes, class_names, char_names, values);
  for (const auto& f : validation.failures) report.discrepancies.push_back("validation: " + f);

  for (std::size_t c : rational_column_indices(values))
    report.rational_class_labels.push_back(class_names[c]);
  for (std::size_t i : rational_row_indices(values))
    report.rational_character_labels.push_back(char_names[i]);
  report.n_rational_classes = static_cast<int>(report.rational_class_labels.size());
  report.n_rational_characters = static_cast<int>(report.rational_character_labels.size());
  if (!report.counts_equal()) {
    std::ostringstream os;
    os << "equality failure: " << report.n_rational_classes << " rational classes vs "
       << report.n_rational_characters << " rational characters";
    report.discrepancies.push_back(os.str());
  }
  return report;
}

}  // namespace psl2rc
