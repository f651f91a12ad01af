#include "psl2rc/rational.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "psl2rc/numbers.hpp"

namespace psl2rc {

std::vector<std::size_t> rational_column_indices(const std::vector<std::vector<Cyc>>& values) {
  std::vector<std::size_t> out;
  if (values.empty()) return out;
  std::size_t n_cols = values[0].size();
  for (std::size_t c = 0; c < n_cols; ++c) {
    bool all = true;
    for (const auto& row : values) {
      if (c >= row.size() || !is_rational(row[c])) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> rational_row_indices(const std::vector<std::vector<Cyc>>& values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool all = true;
    for (const auto& v : values[i]) {
      if (!is_rational(v)) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(i);
  }
  return out;
}

std::vector<std::string> rational_classes(const CharTable& t) {
  std::vector<std::string> out;
  for (std::size_t c : rational_column_indices(t.values)) out.push_back(t.classes[c].label);
  return out;
}

std::vector<std::string> rational_characters(const CharTable& t) {
  std::vector<std::string> out;
  for (std::size_t i : rational_row_indices(t.values)) out.push_back(t.characters[i].name);
  return out;
}

namespace {

// Cheap rationality census working purely on exponent fractions: every
// irrational table entry is a sum of two conjugate roots of unity or one of
// the omega pair, so column/row rationality reduces to trig_is_rational
// checks plus the (ir)rationality of omega. Cross-checked against the exact
// scan on every census; never used alone.
struct FastCensus {
  std::vector<std::string> class_labels;
  std::vector<std::string> char_labels;
};

FastCensus fast_census(const CharTable& t) {
  const std::int64_t q = t.q;
  const bool omega_rational = is_rational(t.omega).has_value();

  std::vector<std::int64_t> split_params, nonsplit_params;       // generic families
  std::vector<std::int64_t> principal_params, discrete_params;
  for (const auto& cls : t.classes) {
    if (cls.family == ConjugacyClass::Family::Split &&
        !(q % 4 == 1 && cls.param == (q - 1) / 4))
      split_params.push_back(cls.param);
    if (cls.family == ConjugacyClass::Family::NonSplit &&
        !(q % 4 == 3 && cls.param == (q + 1) / 4))
      nonsplit_params.push_back(cls.param);
  }
  for (const auto& chi : t.characters) {
    if (chi.kind == CharKind::PrincipalSeries) principal_params.push_back(chi.param);
    if (chi.kind == CharKind::DiscreteSeries) discrete_params.push_back(chi.param);
  }

  FastCensus out;
  for (const auto& cls : t.classes) {
    bool rational = false;
    switch (cls.family) {
      case ConjugacyClass::Family::Identity:
        rational = true;
        break;
      case ConjugacyClass::Family::UnipotentN:
      case ConjugacyClass::Family::UnipotentNPrime:
        rational = q % 2 == 0 || omega_rational;
        break;
      case ConjugacyClass::Family::Split:
        if (q % 4 == 1 && cls.param == (q - 1) / 4) {
          rational = true;  // entries are +-2 and signs only
        } else {
          rational = std::all_of(principal_params.begin(), principal_params.end(),
                                 [&](std::int64_t k) { return trig_is_rational(q - 1, cls.param * k); });
        }
        break;
      case ConjugacyClass::Family::NonSplit:
        if (q % 4 == 3 && cls.param == (q + 1) / 4) {
          rational = true;
        } else {
          rational = std::all_of(discrete_params.begin(), discrete_params.end(),
                                 [&](std::int64_t j) { return trig_is_rational(q + 1, cls.param * j); });
        }
        break;
    }
    if (rational) out.class_labels.push_back(cls.label);
  }
  for (const auto& chi : t.characters) {
    bool rational = false;
    switch (chi.kind) {
      case CharKind::Trivial:
      case CharKind::Steinberg:
        rational = true;
        break;
      case CharKind::PrincipalSeries:
        rational = std::all_of(split_params.begin(), split_params.end(),
                               [&](std::int64_t a) { return trig_is_rational(q - 1, a * chi.param); });
        break;
      case CharKind::DiscreteSeries:
        rational = std::all_of(nonsplit_params.begin(), nonsplit_params.end(),
                               [&](std::int64_t b) { return trig_is_rational(q + 1, b * chi.param); });
        break;
      case CharKind::HalfPlus1:
      case CharKind::HalfPlus2:
      case CharKind::HalfMinus1:
      case CharKind::HalfMinus2:
        rational = omega_rational;
        break;
    }
    if (rational) out.char_labels.push_back(chi.name);
  }
  return out;
}

struct CaseRule {
  const char* id;
  int rc;
  bool (*matches)(std::int64_t q, std::int64_t p, int m);
};

// The five count cases in written order. 4b carries the odd-exponent
// hypothesis of its proof (even powers of primes > 3 are always 1 mod 24 yet
// belong to the last case).
constexpr CaseRule kCases[] = {
    {"1", 2, [](std::int64_t, std::int64_t p, int m) { return p == 3 && m % 2 == 1; }},
    {"2a", 3, [](std::int64_t, std::int64_t p, int) { return p == 2; }},
    {"2b", 3, [](std::int64_t q, std::int64_t, int) { return q % 3 == 1 && q % 4 == 3; }},
    {"2c", 3, [](std::int64_t q, std::int64_t, int) { return q % 3 == 2 && q % 4 == 1; }},
    {"3", 4,
     [](std::int64_t q, std::int64_t, int) {
       std::int64_t r12 = q % 12, r24 = q % 24;
       return (r12 == 1 || r12 == 5 || r12 == 7 || r12 == 11) && r24 != 1 && r24 != 23;
     }},
    {"4a", 5, [](std::int64_t, std::int64_t p, int m) { return p == 3 && m % 2 == 0; }},
    {"4b", 5,
     [](std::int64_t q, std::int64_t, int m) {
       return m % 2 == 1 && (q % 24 == 1 || q % 24 == 23);
     }},
    {"5", 7,
     [](std::int64_t q, std::int64_t, int m) { return m % 2 == 0 && q % 2 == 1 && q > 13; }},
};

}  // namespace

PredictedCase predict_rc(std::int64_t q) {
  std::int64_t p = 0;
  int m = 0;
  if (!prime_power_decompose(q, &p, &m))
    fail(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  PredictedCase out;
  for (const auto& rule : kCases) {
    if (!rule.matches(q, p, m)) continue;
    if (out.case_id.empty()) {
      out.case_id = rule.id;
      out.rc = rule.rc;
    } else {
      out.conflicts.push_back(rule.id);
    }
  }
  if (out.case_id.empty())
    fail(Errc::NoCaseMatched, "no case matches q = " + std::to_string(q));
  return out;
}

RCReport rc_census(std::int64_t q, const CensusOptions& options) {
  CharTable t = build_char_table(q);
  RCReport report;
  report.q = q;
  report.group_name = t.group_name;
  report.group_order = t.group_order;

  ValidationReport validation = validate_table(t);
  for (const auto& f : validation.failures) report.discrepancies.push_back("validation: " + f);

  report.rational_class_labels = rational_classes(t);
  report.rational_character_labels = rational_characters(t);
  report.n_rational_classes = static_cast<int>(report.rational_class_labels.size());
  report.n_rational_characters = static_cast<int>(report.rational_character_labels.size());

  // The trig shortcut must agree with the exact scan; a disagreement is an
  // internal inconsistency, not a reportable finding.
  FastCensus fast = fast_census(t);
  if (fast.class_labels != report.rational_class_labels ||
      fast.char_labels != report.rational_character_labels)
    throw std::logic_error("trig rationality shortcut disagrees with the exact column scan at q=" +
                           std::to_string(q));

  if (!report.counts_equal()) {
    std::ostringstream os;
    os << "equality failure: " << report.n_rational_classes << " rational classes vs "
       << report.n_rational_characters << " rational characters";
    report.discrepancies.push_back(os.str());
  }

  report.predicted = predict_rc(q);
  if (report.predicted->rc != report.n_rational_classes ||
      report.predicted->rc != report.n_rational_characters) {
    std::ostringstream os;
    os << "prediction mismatch: case " << report.predicted->case_id << " expects "
       << report.predicted->rc << ", computed (" << report.n_rational_classes << ", "
       << report.n_rational_characters << ")";
    report.discrepancies.push_back(os.str());
  }
  if (!report.predicted->conflicts.empty()) {
    std::ostringstream os;
    os << "case overlap: q = " << q << " also matches case";
    if (report.predicted->conflicts.size() > 1) os << "s";
    for (const auto& c : report.predicted->conflicts) os << " " << c;
    report.notes.push_back(os.str());
  }
  {
    std::int64_t p = 0;
    int m = 0;
    prime_power_decompose(q, &p, &m);
    if (p == 3 && m % 2 == 0)
      report.notes.push_back(
          "q is an even power of 3, so the q = 1 mod 4 table applies and the "
          "rational half-degree pair is psi_+' / psi_+'' (not the psi_- pair)");
  }

  if (options.use_oracle && group_order(q) <= options.oracle_cap) {
    int oracle = count_rational_classes_oracle(q, options.oracle_cap);
    report.oracle_count = oracle;
    if (oracle != report.n_rational_classes) {
      std::ostringstream os;
      os << "oracle mismatch: exhaustive count " << oracle << " vs table count "
         << report.n_rational_classes;
      report.discrepancies.push_back(os.str());
    }
  }
  return report;
}

LemmaReport lemma_equivalence_check(std::int64_t q, std::int64_t oracle_cap) {
  LemmaReport report;
  report.q = q;

  CharTable t = build_char_table(q);
  std::vector<std::size_t> rational_cols = rational_column_indices(t.values);
  std::vector<bool> col_rational(t.classes.size(), false);
  for (std::size_t c : rational_cols) col_rational[c] = true;

  // Invariant key (size, element order, trace up to sign) per table column;
  // colliding keys (the two unipotent classes share one) fall back to an
  // explicit conjugacy search.
  std::map<std::tuple<std::int64_t, int, std::int64_t>, std::vector<std::size_t>> by_key;
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    const auto& cls = t.classes[c];
    by_key[{cls.size, cls.elt_order, cls.rep.trace_key()}].push_back(c);
  }

  auto orbits = enumerate_classes_bruteforce(q, oracle_cap);
  if (orbits.size() != t.classes.size()) {
    std::ostringstream os;
    os << "orbit count " << orbits.size() << " != table class count " << t.classes.size();
    report.mismatches.push_back(os.str());
  }

  std::vector<bool> matched(t.classes.size(), false);
  for (const auto& orbit : orbits) {
    auto key = std::make_tuple(orbit.size, orbit.elt_order, orbit.rep.trace_key());
    std::size_t col = t.classes.size();
    auto it = by_key.find(key);
    if (it != by_key.end() && it->second.size() == 1 && !matched[it->second.front()]) {
      col = it->second.front();
    } else {
      // ambiguous or missing key: decide by conjugacy against explicit reps
      for (std::size_t c = 0; c < t.classes.size(); ++c) {
        if (matched[c]) continue;
        if (t.classes[c].size == orbit.size && t.classes[c].elt_order == orbit.elt_order &&
            conjugate_test(t.classes[c].rep, orbit.rep, oracle_cap)) {
          col = c;
          break;
        }
      }
    }
    if (col == t.classes.size()) {
      report.mismatches.push_back("orbit of order-" + std::to_string(orbit.elt_order) +
                                  " elements (size " + std::to_string(orbit.size) +
                                  ") matches no table column");
      continue;
    }
    matched[col] = true;

    LemmaClassReport entry;
    entry.table_label = t.classes[col].label;
    entry.size = orbit.size;
    entry.elt_order = orbit.elt_order;
    entry.element_rational = is_rational_element(orbit.rep, oracle_cap);
    entry.column_rational = col_rational[col];
    if (entry.element_rational != entry.column_rational) {
      std::ostringstream os;
      os << "class " << entry.table_label << ": element-level rationality "
         << (entry.element_rational ? "true" : "false") << " but column-level "
         << (entry.column_rational ? "true" : "false");
      report.mismatches.push_back(os.str());
    }
    report.classes.push_back(std::move(entry));
  }
  return report;
}

VerifySummary verify_range(std::vector<std::int64_t> qs, int jobs, const CensusOptions& options) {
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  VerifySummary summary;
  summary.reports.resize(qs.size());
  if (qs.empty()) return summary;

  jobs = std::max(1, jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(qs.size());
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= qs.size()) return;
      try {
        summary.reports[i] = rc_census(qs[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  for (const auto& r : summary.reports) {
    std::string prefix = "q=" + std::to_string(r.q) + ": ";
    if (!r.counts_equal())
      summary.equality_failures.push_back(prefix + std::to_string(r.n_rational_classes) +
                                          " classes vs " +
                                          std::to_string(r.n_rational_characters) + " characters");
    if (r.predicted && r.predicted->rc != r.n_rational_classes)
      summary.prediction_mismatches.push_back(prefix + "case " + r.predicted->case_id +
                                              " expects " + std::to_string(r.predicted->rc) +
                                              ", computed " +
                                              std::to_string(r.n_rational_classes));
    if (r.oracle_count && *r.oracle_count != r.n_rational_classes)
      summary.oracle_mismatches.push_back(prefix + "oracle " + std::to_string(*r.oracle_count) +
                                          " vs table " + std::to_string(r.n_rational_classes));
  }
  return summary;
}

}  // namespace psl2rc
