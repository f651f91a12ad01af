#include "psl2rc/tablio.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

using namespace psl2rc;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(PSL2RC_FIXTURES_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string psl2_doc_bytes(std::int64_t q) { return serialize_table(to_document(build_char_table(q))); }

}  // namespace

TEST_CASE("serialization is deterministic and round-trips") {
  std::string bytes = psl2_doc_bytes(4);
  CHECK(bytes == psl2_doc_bytes(4));
  CHECK(!bytes.empty());
  CHECK(bytes.back() == '\n');
  CHECK(bytes.find("\r") == std::string::npos);

  ParseResult parsed = parse_table(bytes);
  REQUIRE(parsed.ok());
  CHECK(parsed.warnings.empty());
  CHECK(*parsed.doc == to_document(build_char_table(4)));
  CHECK(serialize_table(*parsed.doc) == bytes);
}

TEST_CASE("steinberg values appear as canonical rational strings") {
  TableDocument doc = to_document(build_char_table(4));
  REQUIRE(doc.characters.size() == 5);
  const CharacterEntry& steinberg = doc.characters[1];
  CHECK(steinberg.name == "psi_q");
  std::vector<Cyc> expected{Cyc::from_int(4), Cyc::from_int(0), Cyc::from_int(1),
                            Cyc::from_int(-1), Cyc::from_int(-1)};
  CHECK(steinberg.values == expected);
  std::string bytes = serialize_table(doc);
  CHECK(bytes.find("\"psi_q\"") != std::string::npos);
  CHECK(bytes.find("\"-1\"") != std::string::npos);
}

TEST_CASE("parse reports positioned syntax errors") {
  std::string bytes = psl2_doc_bytes(7);
  ParseResult truncated = parse_table(bytes.substr(0, bytes.size() / 2));
  REQUIRE(!truncated.ok());
  CHECK(truncated.error->kind == "SyntaxError");
  CHECK(truncated.error->line > 0);

  ParseResult garbage = parse_table("not json at all");
  REQUIRE(!garbage.ok());
  CHECK(garbage.error->kind == "SyntaxError");
  CHECK(garbage.error->line == 1);
}

TEST_CASE("floats and unknown literals are rejected") {
  CHECK(!parse_table(R"({"format_version": 1.5})").ok());
  ParseResult r = parse_table(R"({"format_version": null})");
  REQUIRE(!r.ok());
}

TEST_CASE("ragged tables are flagged") {
  std::string doc = R"({
  "characters": [
    {"name": "chi", "values": ["1"]}
  ],
  "classes": [
    {"element_order": "1", "name": "1a", "size": "1"},
    {"element_order": "2", "name": "2a", "size": "1"}
  ],
  "format_version": "1",
  "group_name": "X",
  "group_order": "2"
})";
  ParseResult r = parse_table(doc);
  REQUIRE(!r.ok());
  CHECK(r.error->kind == "RaggedTable");
  CHECK(r.error->path.find("values") != std::string::npos);
}

TEST_CASE("unknown fields: rejected strictly, tolerated leniently") {
  std::string doc = R"({
  "characters": [
    {"name": "chi", "values": ["1"]}
  ],
  "classes": [
    {"element_order": "1", "name": "1a", "size": "1"}
  ],
  "format_version": "1",
  "group_name": "X",
  "group_order": "1",
  "comment": "extra"
})";
  ParseResult strict = parse_table(doc, ParseMode::Strict);
  REQUIRE(!strict.ok());
  CHECK(strict.error->kind == "SchemaError");
  CHECK(strict.error->reason.find("comment") != std::string::npos);

  ParseResult lenient = parse_table(doc, ParseMode::Lenient);
  REQUIRE(lenient.ok());
  CHECK(lenient.warnings.size() == 1);
}

TEST_CASE("non-canonical rationals: rejected strictly, normalized leniently") {
  std::string doc = R"({
  "characters": [
    {"name": "chi", "values": ["2/4"]}
  ],
  "classes": [
    {"element_order": "1", "name": "1a", "size": "1"}
  ],
  "format_version": "1",
  "group_name": "X",
  "group_order": "1"
})";
  ParseResult strict = parse_table(doc, ParseMode::Strict);
  REQUIRE(!strict.ok());
  CHECK(strict.error->kind == "SchemaError");

  ParseResult lenient = parse_table(doc, ParseMode::Lenient);
  REQUIRE(lenient.ok());
  REQUIRE(!lenient.warnings.empty());
  CHECK(lenient.doc->characters[0].values[0] == Cyc::rational(Rat(1, 2)));
}

TEST_CASE("huge exact integers survive the round trip") {
  std::string doc = R"({
  "characters": [
    {"name": "chi", "values": ["1"]}
  ],
  "classes": [
    {"element_order": "1", "name": "1a", "size": "1"}
  ],
  "format_version": "1",
  "group_name": "big",
  "group_order": "808017424794512875886459904961710757005754368000000000"
})";
  ParseResult r = parse_table(doc);
  REQUIRE(r.ok());
  CHECK(r.doc->group_order == Int("808017424794512875886459904961710757005754368000000000"));
  ParseResult again = parse_table(serialize_table(*r.doc));
  REQUIRE(again.ok());
  CHECK(*again.doc == *r.doc);
}

TEST_CASE("ingested census agrees with the native census") {
  for (std::int64_t q : {7, 11}) {
    ParseResult parsed = parse_table(psl2_doc_bytes(q));
    REQUIRE(parsed.ok());
    RCReport ingested = census_document(*parsed.doc);
    RCReport native = rc_census(q);
    CHECK(ingested.n_rational_classes == native.n_rational_classes);
    CHECK(ingested.n_rational_characters == native.n_rational_characters);
    CHECK(ingested.rational_class_labels == native.rational_class_labels);
    CHECK(ingested.n_rational_classes == 4);
  }
}

TEST_CASE("cyclic group fixture parses and censuses to (1, 1)") {
  std::string bytes = read_fixture("c3.ctbl.json");
  ParseResult parsed = parse_table(bytes);
  REQUIRE(parsed.ok());
  CHECK(parsed.warnings.empty());
  RCReport report = census_document(*parsed.doc);
  CHECK(report.n_rational_classes == 1);
  CHECK(report.n_rational_characters == 1);
  CHECK(report.rational_class_labels == std::vector<std::string>{"1a"});
  CHECK(report.rational_character_labels == std::vector<std::string>{"chi_0"});
  CHECK(report.discrepancies.empty());  // orthogonality holds for this table
  // round trip through the canonical writer
  ParseResult again = parse_table(serialize_table(*parsed.doc));
  REQUIRE(again.ok());
  CHECK(*again.doc == *parsed.doc);
}

TEST_CASE("byte fuzzing never crashes the parser") {
  std::string base = psl2_doc_bytes(5);
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<std::size_t> pos_dist(0, base.size() - 1);
  std::uniform_int_distribution<int> byte_dist(0, 255);
  std::uniform_int_distribution<int> op_dist(0, 3);
  int parsed_ok = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    std::string mutated = base;
    int edits = 1 + iter % 8;
    for (int e = 0; e < edits; ++e) {
      switch (op_dist(rng)) {
        case 0: mutated[pos_dist(rng) % mutated.size()] = static_cast<char>(byte_dist(rng)); break;
        case 1: mutated.insert(pos_dist(rng) % mutated.size(), 1, static_cast<char>(byte_dist(rng))); break;
        case 2: mutated.erase(pos_dist(rng) % mutated.size(), 1); break;
        default: mutated = mutated.substr(0, pos_dist(rng) % mutated.size()); break;
      }
      if (mutated.empty()) mutated = "x";
    }
    ParseResult r = parse_table(mutated, iter % 2 == 0 ? ParseMode::Strict : ParseMode::Lenient);
    if (r.ok())
      ++parsed_ok;
    else
      CHECK(!r.error->kind.empty());
  }
  // Most mutations must fail; the loop itself not crashing is the real check.
  CHECK(parsed_ok < 2000);
}
