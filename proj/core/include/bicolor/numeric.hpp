#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace bicolor {

using BigInt = mpz_class;
using Rational = mpq_class;

inline int sgn(const BigInt& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rational& x) { return mpq_sgn(x.get_mpq_t()); }

BigInt isqrt(const BigInt& x);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt floor_div(const BigInt& a, const BigInt& b);

bool fits_int64(const BigInt& x);
std::int64_t to_int64(const BigInt& x);  // throws kInvalidInput on overflow

// Accepts "p" or "p/q" with an optional leading '-' (ASCII or U+2212).
// The result is reduced; q must be positive.
Rational parse_rational(std::string_view text);
// Canonical form: "p" for integers, "p/q" otherwise, lowest terms.
std::string format_rational(const Rational& x);

BigInt parse_integer(std::string_view text);

}  // namespace bicolor
