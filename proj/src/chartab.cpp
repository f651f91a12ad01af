#include "psl2rc/chartab.hpp"

#include <sstream>

#include "psl2rc/numbers.hpp"

namespace psl2rc {

namespace {

Cyc sign_pow(std::int64_t e) { return Cyc::from_int(e % 2 == 0 ? 1 : -1); }

std::string series_name(bool principal, std::int64_t param) {
  std::ostringstream os;
  os << "psi_(q" << (principal ? "+" : "-") << "1)^(" << param << ")";
  return os.str();
}

}  // namespace

const Cyc& CharTable::entry(std::size_t char_index, std::size_t class_index) const {
  if (char_index >= values.size() || class_index >= classes.size())
    fail(Errc::IndexOutOfRange,
         "entry (" + std::to_string(char_index) + ", " + std::to_string(class_index) +
             ") outside a " + std::to_string(values.size()) + "x" +
             std::to_string(classes.size()) + " table");
  return values[char_index][class_index];
}

Int CharTable::degree(std::size_t char_index) const {
  auto r = is_rational(entry(char_index, 0));
  if (!r || denominator(*r) != 1)
    fail(Errc::InvalidMatrix, "character degree is not an integer");
  return numerator(*r);
}

CharTable build_char_table(std::int64_t q) {
  constexpr std::int64_t kTableCap = 1024;
  if (q > kTableCap) fail(Errc::CapExceeded, "q exceeds the table cap " + std::to_string(kTableCap));
  std::int64_t p = 0;
  int m = 0;
  if (!prime_power_decompose(q, &p, &m))
    fail(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");

  CharTable t;
  t.q = q;
  t.group_name = "PSL(2," + std::to_string(q) + ")";
  t.group_order = group_order(q);
  t.classes = class_reps(q);

  const std::int64_t eps_n = q - 1;  // conductor of the split-side root of unity
  const std::int64_t eta_n = q + 1;  // conductor of the nonsplit-side root

  if (q % 2 == 1) {
    t.omega = (Cyc::from_int(1) + sqrt_signed_q(p, m)) * Cyc::rational(Rat(1, 2));
    t.omega_star = Cyc::from_int(1) - t.omega;
  } else {
    t.omega = Cyc();
    t.omega_star = Cyc();
  }

  // Row labels in fixed order.
  t.characters.push_back({CharKind::Trivial, 0, "psi_1"});
  t.characters.push_back({CharKind::Steinberg, 0, "psi_q"});
  if (q % 2 == 0) {
    for (std::int64_t k = 1; k <= q / 2 - 1; ++k)
      t.characters.push_back({CharKind::PrincipalSeries, k, series_name(true, k)});
    for (std::int64_t j = 1; j <= q / 2; ++j)
      t.characters.push_back({CharKind::DiscreteSeries, j, series_name(false, j)});
  } else if (q % 4 == 1) {
    for (std::int64_t k = 2; k <= (q - 5) / 2; k += 2)
      t.characters.push_back({CharKind::PrincipalSeries, k, series_name(true, k)});
    for (std::int64_t j = 2; j <= (q - 1) / 2; j += 2)
      t.characters.push_back({CharKind::DiscreteSeries, j, series_name(false, j)});
    t.characters.push_back({CharKind::HalfPlus1, 0, "psi_+'"});
    t.characters.push_back({CharKind::HalfPlus2, 0, "psi_+''"});
  } else {
    for (std::int64_t k = 2; k <= (q - 3) / 2; k += 2)
      t.characters.push_back({CharKind::PrincipalSeries, k, series_name(true, k)});
    for (std::int64_t j = 2; j <= (q - 3) / 2; j += 2)
      t.characters.push_back({CharKind::DiscreteSeries, j, series_name(false, j)});
    t.characters.push_back({CharKind::HalfMinus1, 0, "psi_-'"});
    t.characters.push_back({CharKind::HalfMinus2, 0, "psi_-''"});
  }

  if (t.characters.size() != t.classes.size())
    fail(Errc::InvalidMatrix, "character count does not match class count");

  const bool split_special_exists = q % 4 == 1;   // half-size split class present
  const bool nonsplit_special_exists = q % 4 == 3;  // half-size nonsplit class present

  auto value_at = [&](const CharLabel& chi, const ConjugacyClass& cls) -> Cyc {
    using Family = ConjugacyClass::Family;
    const bool split_special =
        split_special_exists && cls.family == Family::Split && cls.param == (q - 1) / 4;
    const bool nonsplit_special =
        nonsplit_special_exists && cls.family == Family::NonSplit && cls.param == (q + 1) / 4;
    switch (chi.kind) {
      case CharKind::Trivial:
        return Cyc::from_int(1);
      case CharKind::Steinberg:
        switch (cls.family) {
          case Family::Identity: return Cyc::from_int(q);
          case Family::UnipotentN:
          case Family::UnipotentNPrime: return Cyc();
          case Family::Split: return Cyc::from_int(1);
          case Family::NonSplit: return Cyc::from_int(-1);
        }
        break;
      case CharKind::PrincipalSeries:
        switch (cls.family) {
          case Family::Identity: return Cyc::from_int(q + 1);
          case Family::UnipotentN:
          case Family::UnipotentNPrime: return Cyc::from_int(1);
          case Family::Split:
            if (split_special)
              return Cyc::from_int(2) * root_of_unity(eps_n, (q - 1) / 4 * chi.param);
            return two_cos(eps_n, cls.param * chi.param);
          case Family::NonSplit: return Cyc();
        }
        break;
      case CharKind::DiscreteSeries:
        switch (cls.family) {
          case Family::Identity: return Cyc::from_int(q - 1);
          case Family::UnipotentN:
          case Family::UnipotentNPrime: return Cyc::from_int(-1);
          case Family::Split: return Cyc();
          case Family::NonSplit:
            if (nonsplit_special)
              return Cyc::from_int(-2) * root_of_unity(eta_n, (q + 1) / 4 * chi.param);
            return -two_cos(eta_n, cls.param * chi.param);
        }
        break;
      case CharKind::HalfPlus1:
      case CharKind::HalfPlus2: {
        const bool first = chi.kind == CharKind::HalfPlus1;
        switch (cls.family) {
          case Family::Identity: return Cyc::rational(Rat(q + 1, 2));
          case Family::UnipotentN: return first ? t.omega : t.omega_star;
          case Family::UnipotentNPrime: return first ? t.omega_star : t.omega;
          case Family::Split:
            return split_special ? sign_pow((q - 1) / 4) : sign_pow(cls.param);
          case Family::NonSplit: return Cyc();
        }
        break;
      }
      case CharKind::HalfMinus1:
      case CharKind::HalfMinus2: {
        const bool first = chi.kind == CharKind::HalfMinus1;
        switch (cls.family) {
          case Family::Identity: return Cyc::rational(Rat(q - 1, 2));
          case Family::UnipotentN: return first ? -t.omega_star : -t.omega;
          case Family::UnipotentNPrime: return first ? -t.omega : -t.omega_star;
          case Family::Split: return Cyc();
          case Family::NonSplit:
            return nonsplit_special ? sign_pow((q + 5) / 4) : sign_pow(cls.param + 1);
        }
        break;
      }
    }
    fail(Errc::InvalidMatrix, "unhandled table entry");
  };

  t.values.reserve(t.characters.size());
  for (const auto& chi : t.characters) {
    std::vector<Cyc> row;
    row.reserve(t.classes.size());
    for (const auto& cls : t.classes) row.push_back(value_at(chi, cls));
    t.values.push_back(std::move(row));
  }
  return t;
}

ValidationReport validate_grid(const Int& group_order, const std::vector<Int>& class_sizes,
                               const std::vector<std::string>& class_names,
                               const std::vector<std::string>& char_names,
                               const std::vector<std::vector<Cyc>>& values) {
  ValidationReport report;
  auto flag = [&](const std::string& msg) { report.failures.push_back(msg); };

  const std::size_t n_chars = values.size();
  const std::size_t n_classes = class_sizes.size();
  if (n_chars != n_classes)
    flag("grid is not square: " + std::to_string(n_chars) + " characters vs " +
         std::to_string(n_classes) + " classes");

  // (1) sum of squared degrees
  Rat deg_sum;
  bool degrees_ok = true;
  for (std::size_t i = 0; i < n_chars; ++i) {
    if (values[i].empty()) continue;
    auto d = is_rational(values[i][0]);
    if (!d) {
      flag("degree of " + char_names[i] + " is not rational");
      degrees_ok = false;
      continue;
    }
    deg_sum += (*d) * (*d);
  }
  if (degrees_ok && deg_sum != Rat(group_order))
    flag("sum of squared degrees " + rat_to_string(deg_sum) + " != group order " +
         group_order.str());

  // (4) class sizes
  Int size_sum = 0;
  for (const auto& s : class_sizes) size_sum += s;
  if (size_sum != group_order)
    flag("class sizes sum to " + size_sum.str() + " != group order " + group_order.str());

  // Conjugate rows once; conjugation is the Galois map zeta -> zeta^-1.
  std::vector<std::vector<Cyc>> conj_rows(n_chars);
  for (std::size_t i = 0; i < n_chars; ++i) {
    conj_rows[i].reserve(values[i].size());
    for (const auto& v : values[i]) conj_rows[i].push_back(galois(v, -1));
  }

  // (2) row orthogonality: sum_c |c| chi(c) conj(chi'(c)) = |G| delta
  for (std::size_t i = 0; i < n_chars; ++i) {
    for (std::size_t j = i; j < n_chars; ++j) {
      CycSum sum;
      for (std::size_t c = 0; c < n_classes && c < values[i].size() && c < values[j].size(); ++c)
        sum.add_product(values[i][c], conj_rows[j][c], Rat(class_sizes[c]));
      Cyc expected = i == j ? Cyc::rational(Rat(group_order)) : Cyc();
      if (sum.finalize() != expected)
        flag("row orthogonality failed for (" + char_names[i] + ", " + char_names[j] + ")");
    }
  }

  // (3) column orthogonality: sum_chi chi(c) conj(chi(c')) = delta |G| / |c|
  for (std::size_t c1 = 0; c1 < n_classes; ++c1) {
    for (std::size_t c2 = c1; c2 < n_classes; ++c2) {
      CycSum sum;
      for (std::size_t i = 0; i < n_chars; ++i) {
        if (c1 >= values[i].size() || c2 >= values[i].size()) continue;
        sum.add_product(values[i][c1], conj_rows[i][c2]);
      }
      Cyc expected =
          c1 == c2 ? Cyc::rational(Rat(group_order, class_sizes[c1])) : Cyc();
      if (sum.finalize() != expected)
        flag("column orthogonality failed for (" + class_names[c1] + ", " + class_names[c2] + ")");
    }
  }

  return report;
}

ValidationReport validate_table(const CharTable& t) {
  std::vector<Int> sizes;
  std::vector<std::string> class_names;
  for (const auto& c : t.classes) {
    sizes.emplace_back(c.size);
    class_names.push_back(c.label);
  }
  std::vector<std::string> char_names;
  for (const auto& chi : t.characters) char_names.push_back(chi.name);
  return validate_grid(Int(t.group_order), sizes, class_names, char_names, t.values);
}

}  // namespace psl2rc
