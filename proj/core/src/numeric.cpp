#include "bicolor/numeric.hpp"

#include <limits>

#include "bicolor/error.hpp"

namespace bicolor {

BigInt isqrt(const BigInt& x) {
  require(sgn(x) >= 0, ErrorCode::kInternal, "isqrt of a negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool fits_int64(const BigInt& x) {
  static const BigInt kMax(std::to_string(std::numeric_limits<std::int64_t>::max()));
  static const BigInt kMin(std::to_string(std::numeric_limits<std::int64_t>::min()));
  return x >= kMin && x <= kMax;
}

std::int64_t to_int64(const BigInt& x) {
  require(fits_int64(x), ErrorCode::kInvalidInput, "integer out of 64-bit range: " + x.get_str());
  return std::stoll(x.get_str());
}

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

BigInt parse_integer(std::string_view text) {
  bool negative = false;
  if (text.substr(0, 3) == "\xE2\x88\x92") {
    negative = true;
    text.remove_prefix(3);
  } else if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  require(is_digits(text), ErrorCode::kSchema, "malformed integer '" + std::string(text) + "'");
  BigInt value(std::string(text), 10);
  return negative ? BigInt(-value) : value;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  require(is_digits(den_text), ErrorCode::kSchema,
          "malformed denominator in '" + std::string(text) + "'");
  BigInt den(std::string(den_text), 10);
  require(sgn(den) > 0, ErrorCode::kSchema, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  Rational x = value;  // callers may hand over a non-canonical mpq
  x.canonicalize();
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace bicolor
