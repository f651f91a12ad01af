#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psl2rc {

// Exact arbitrary-precision integers and rationals. All arithmetic in the
// library goes through these; floating point never touches a value.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Renders "p" for integers and "p/q" otherwise (q > 1, lowest terms).
std::string rat_to_string(const Rat& r);

struct ParsedRat {
  Rat value;
  // True when the input already was in canonical form: optional leading '-',
  // no leading zeros, lowest terms, and no "/1" suffix.
  bool canonical = false;
};

/// Parses "num" or "num/den" with decimal digits. Returns nullopt on any
/// malformed input (empty, signs on the denominator, zero denominator, ...).
std::optional<ParsedRat> parse_rational(std::string_view text);

/// Strict unsigned decimal (no sign, no leading zeros except "0" itself).
std::optional<Int> parse_canonical_uint(std::string_view text);

bool is_prime(std::int64_t n);

/// Writes p, m with n = p^m when n is a prime power (m >= 1); false otherwise.
bool prime_power_decompose(std::int64_t n, std::int64_t* p, int* m);

/// Distinct prime factors, ascending.
std::vector<std::int64_t> prime_factors(std::int64_t n);

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t mod);

/// Legendre symbol (a|p) for odd prime p: +1, -1, or 0.
int legendre_symbol(std::int64_t a, std::int64_t p);

}  // namespace psl2rc
