#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psl2rc/json.hpp"
#include "psl2rc/rational.hpp"
#include "psl2rc/tablio.hpp"

namespace {

using namespace psl2rc;

constexpr int kExitOk = 0;
constexpr int kExitEqualityViolated = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::int64_t oracle_cap = kDefaultOracleCap;
  std::int64_t conductor_cap = std::int64_t(1) << 16;
  bool no_oracle = false;
  bool json = false;
  bool lenient = false;
  int jobs = 1;
};

CensusOptions census_options(const GlobalOptions& g) {
  CensusOptions o;
  o.oracle_cap = g.oracle_cap;
  o.use_oracle = !g.no_oracle;
  return o;
}

std::string render_entry(const CharTable& t, const Cyc& v) {
  if (auto r = is_rational(v)) return rat_to_string(*r);
  if (t.q % 2 == 1) {
    if (v == t.omega) return "w";
    if (v == t.omega_star) return "w*";
    if (v == -t.omega) return "-w";
    if (v == -t.omega_star) return "-w*";
  }
  return v.to_string();
}

JsonValue strings_json(const std::vector<std::string>& xs) {
  JsonValue out = JsonValue::array();
  for (const auto& s : xs) out.arr.push_back(JsonValue::str(s));
  return out;
}

JsonValue report_json(const RCReport& r) {
  JsonValue out = JsonValue::object();
  out.set("discrepancies", strings_json(r.discrepancies));
  out.set("group_name", JsonValue::str(r.group_name));
  out.set("group_order", JsonValue::str(r.group_order.str()));
  out.set("n_rational_characters", JsonValue::integer(Int(r.n_rational_characters)));
  out.set("n_rational_classes", JsonValue::integer(Int(r.n_rational_classes)));
  out.set("notes", strings_json(r.notes));
  if (r.oracle_count) out.set("oracle_count", JsonValue::integer(Int(*r.oracle_count)));
  if (r.predicted) {
    JsonValue p = JsonValue::object();
    p.set("case", JsonValue::str(r.predicted->case_id));
    p.set("conflicts", strings_json(r.predicted->conflicts));
    p.set("rc", JsonValue::integer(Int(r.predicted->rc)));
    out.set("predicted", std::move(p));
  }
  if (r.q > 0) out.set("q", JsonValue::integer(Int(r.q)));
  out.set("rational_character_labels", strings_json(r.rational_character_labels));
  out.set("rational_class_labels", strings_json(r.rational_class_labels));
  return out;
}

std::string joined(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& s : xs) {
    if (!out.empty()) out += " ";
    out += s;
  }
  return out.empty() ? "(none)" : out;
}

std::string report_line(const RCReport& r) {
  std::ostringstream os;
  os << "classes=" << r.n_rational_classes << " characters=" << r.n_rational_characters;
  if (r.predicted) {
    os << " predicted=" << r.predicted->rc << " (case " << r.predicted->case_id << ")";
  }
  if (r.oracle_count) os << " oracle=" << *r.oracle_count;
  return os.str();
}

void print_report_details(const RCReport& r, std::ostream& out) {
  out << "rational classes:    " << joined(r.rational_class_labels) << "\n";
  out << "rational characters: " << joined(r.rational_character_labels) << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  for (const auto& d : r.discrepancies) out << "discrepancy: " << d << "\n";
}

int cmd_table(std::int64_t q, const GlobalOptions& g) {
  CharTable t = build_char_table(q);
  if (g.json) {
    std::cout << serialize_table(to_document(t));
    return kExitOk;
  }

  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> head{"class"}, sizes{"size"}, orders{"order"};
  for (const auto& c : t.classes) {
    head.push_back(c.label);
    sizes.push_back(std::to_string(c.size));
    orders.push_back(std::to_string(c.elt_order));
  }
  grid.push_back(head);
  grid.push_back(sizes);
  grid.push_back(orders);
  for (std::size_t i = 0; i < t.characters.size(); ++i) {
    std::vector<std::string> row{t.characters[i].name};
    for (const auto& v : t.values[i]) row.push_back(render_entry(t, v));
    grid.push_back(std::move(row));
  }
  std::vector<std::size_t> width(grid[0].size(), 0);
  for (const auto& row : grid)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

  std::cout << t.group_name << "  order " << t.group_order << "  (" << t.classes.size()
            << " classes)\n";
  if (t.q % 2 == 1) {
    std::int64_t p = 0;
    int m = 0;
    prime_power_decompose(t.q, &p, &m);
    std::string radical =
        t.q % 4 == 1 ? "sqrt(" + std::to_string(t.q) + ")" : "sqrt(-" + std::to_string(t.q) + ")";
    std::cout << "legend: w = (1+" << radical << ")/2, w* = (1-" << radical << ")/2\n";
  }
  for (const auto& row : grid) {
    std::ostringstream os;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << "  ";
      os << row[c] << std::string(width[c] - row[c].size(), ' ');
    }
    std::string line = os.str();
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << "\n";
  }
  return kExitOk;
}

int cmd_rc(std::int64_t q, const GlobalOptions& g) {
  RCReport r = rc_census(q, census_options(g));
  if (g.json) {
    std::cout << json_write(report_json(r)) << "\n";
  } else {
    std::cout << r.group_name << ": " << report_line(r) << "\n";
    print_report_details(r, std::cout);
  }
  return r.counts_equal() ? kExitOk : kExitEqualityViolated;
}

int cmd_verify(const std::string& range, const GlobalOptions& g) {
  auto dots = range.find("..");
  std::int64_t lo = 0, hi = 0;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoll(range);
    } else {
      lo = std::stoll(range.substr(0, dots));
      hi = std::stoll(range.substr(dots + 2));
    }
  } catch (const std::exception&) {
    std::cerr << "invalid range '" << range << "' (expected lo..hi)\n";
    return kExitUsage;
  }
  if (lo > hi) {
    std::cerr << "invalid range '" << range << "': lower bound exceeds upper bound\n";
    return kExitUsage;
  }

  std::vector<std::int64_t> qs;
  for (std::int64_t q = std::max<std::int64_t>(2, lo); q <= hi; ++q)
    if (prime_power_decompose(q, nullptr, nullptr)) qs.push_back(q);
  if (qs.empty()) {
    std::cerr << "warning: no prime powers in " << range << "\n";
    if (g.json) std::cout << "{}\n";
    return kExitOk;
  }

  VerifySummary summary = verify_range(qs, g.jobs, census_options(g));
  if (g.json) {
    JsonValue out = JsonValue::object();
    JsonValue reports = JsonValue::array();
    for (const auto& r : summary.reports) reports.arr.push_back(report_json(r));
    out.set("reports", std::move(reports));
    JsonValue sum = JsonValue::object();
    sum.set("equality_failures", strings_json(summary.equality_failures));
    sum.set("oracle_mismatches", strings_json(summary.oracle_mismatches));
    sum.set("prediction_mismatches", strings_json(summary.prediction_mismatches));
    out.set("summary", std::move(sum));
    std::cout << json_write(out) << "\n";
  } else {
    for (const auto& r : summary.reports) {
      std::cout << "q=" << r.q << ": " << report_line(r)
                << (r.counts_equal() ? "" : "  EQUALITY VIOLATED") << "\n";
    }
    std::cout << "checked " << summary.reports.size() << " prime powers; equality failures: "
              << summary.equality_failures.size() << ", prediction mismatches: "
              << summary.prediction_mismatches.size() << ", oracle mismatches: "
              << summary.oracle_mismatches.size() << "\n";
    for (const auto& s : summary.equality_failures) std::cout << "equality failure: " << s << "\n";
    for (const auto& s : summary.prediction_mismatches)
      std::cout << "prediction mismatch: " << s << "\n";
    for (const auto& s : summary.oracle_mismatches) std::cout << "oracle mismatch: " << s << "\n";
  }
  return summary.equality_failures.empty() ? kExitOk : kExitEqualityViolated;
}

int cmd_census(const std::string& path, const GlobalOptions& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read '" << path << "'\n";
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();

  ParseResult parsed = parse_table(bytes, g.lenient ? ParseMode::Lenient : ParseMode::Strict);
  if (!parsed.ok()) {
    std::cerr << parsed.error->to_string() << "\n";
    return kExitUsage;
  }
  RCReport r = census_document(*parsed.doc);
  for (const auto& w : parsed.warnings) r.notes.push_back("parse warning: " + w);
  if (g.json) {
    std::cout << json_write(report_json(r)) << "\n";
  } else {
    std::cout << r.group_name << ": counts (c, r) = (" << r.n_rational_classes << ", "
              << r.n_rational_characters << ")\n";
    print_report_details(r, std::cout);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rationality census for character tables of PSL(2,q)"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GlobalOptions g;
  app.add_flag("--json", g.json, "machine-readable output")->envname("PSL2RC_JSON");
  app.add_option("--oracle-cap", g.oracle_cap, "largest group order the exhaustive oracle accepts")
      ->envname("PSL2RC_ORACLE_CAP");
  app.add_flag("--no-oracle", g.no_oracle, "skip the exhaustive oracle cross-check")
      ->envname("PSL2RC_NO_ORACLE");
  app.add_option("--conductor-cap", g.conductor_cap, "largest cyclotomic conductor allowed")
      ->envname("PSL2RC_CONDUCTOR_CAP");
  app.add_option("--jobs", g.jobs, "worker threads for verify")
      ->envname("PSL2RC_JOBS")
      ->check(CLI::PositiveNumber);
  app.add_flag("--lenient,!--strict", g.lenient,
               "normalize non-canonical input instead of rejecting it")
      ->envname("PSL2RC_LENIENT");

  std::int64_t table_q = 0, rc_q = 0;
  std::string verify_range_arg, census_path;

  CLI::App* table_cmd = app.add_subcommand("table", "print the character table of PSL(2,q)");
  table_cmd->add_option("q", table_q, "prime power")->required();
  CLI::App* rc_cmd = app.add_subcommand("rc", "rational classes/characters census for one q");
  rc_cmd->add_option("q", rc_q, "prime power")->required();
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the census over every prime power in a range");
  verify_cmd->add_option("range", verify_range_arg, "range lo..hi")->required();
  CLI::App* census_cmd = app.add_subcommand("census", "census an ingested character table file");
  census_cmd->add_option("file", census_path, "path to a .ctbl.json document")->required();
  for (CLI::App* sub : {table_cmd, rc_cmd, verify_cmd, census_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  set_conductor_cap(g.conductor_cap);
  try {
    if (table_cmd->parsed()) return cmd_table(table_q, g);
    if (rc_cmd->parsed()) return cmd_rc(rc_q, g);
    if (verify_cmd->parsed()) return cmd_verify(verify_range_arg, g);
    if (census_cmd->parsed()) return cmd_census(census_path, g);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
