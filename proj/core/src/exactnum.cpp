#include "bicolor/exactnum.hpp"

#include <cmath>

#include "bicolor/error.hpp"

namespace bicolor {
namespace {

bool squarefree(const BigInt& d) {
  for (BigInt k = 2; k * k <= d; ++k) {
    if (d % (k * k) == 0) return false;
  }
  return true;
}

std::strong_ordering ordering_of(int s) {
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string alpha_term(const BigInt& coef) {
  if (coef == 1) return "alpha";
  if (coef == -1) return "-alpha";
  return coef.get_str() + "*alpha";
}

}  // namespace

int sign_with_sqrt(const BigInt& u, const BigInt& v, const BigInt& d) {
  int su = sgn(u);
  int sv = sgn(v);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  // Opposite signs: the larger magnitude wins; equality cannot occur.
  BigInt lhs = u * u;
  BigInt rhs = v * v * d;
  return lhs > rhs ? su : sv;
}

Alpha Alpha::rational(const BigInt& num, const BigInt& den) {
  require(sgn(den) > 0, ErrorCode::kInvalidInput, "alpha denominator must be positive");
  require(sgn(num) > 0, ErrorCode::kInvalidInput, "alpha must be positive");
  require(num <= den, ErrorCode::kInvalidInput, "alpha must not exceed 1");
  require(gcd(num, den) == 1, ErrorCode::kInvalidInput, "alpha must be in lowest terms");
  Alpha alpha;
  alpha.kind_ = Kind::kRational;
  alpha.a_ = num;
  alpha.c_ = den;
  alpha.b_ = 0;
  alpha.d_ = 1;
  if (fits_int64(num) && fits_int64(den)) {
    alpha.small_ = true;
    alpha.small_num_ = to_int64(num);
    alpha.small_den_ = to_int64(den);
  }
  return alpha;
}

Alpha Alpha::quadratic(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  require(d > 1 && squarefree(d), ErrorCode::kInvalidInput,
          "quadratic alpha needs a squarefree radicand > 1");
  require(sgn(b) != 0, ErrorCode::kInvalidInput, "quadratic alpha needs b != 0");
  require(sgn(c) > 0, ErrorCode::kInvalidInput, "quadratic alpha needs c > 0");
  require(gcd(gcd(a, b), c) == 1, ErrorCode::kInvalidInput,
          "quadratic alpha must be in lowest terms");
  require(sign_with_sqrt(a, b, d) > 0, ErrorCode::kInvalidInput, "alpha must be positive");
  require(sign_with_sqrt(c - a, -b, d) > 0, ErrorCode::kInvalidInput, "alpha must be below 1");
  Alpha alpha;
  alpha.kind_ = Kind::kQuadratic;
  alpha.a_ = a;
  alpha.b_ = b;
  alpha.c_ = c;
  alpha.d_ = d;
  return alpha;
}

int Alpha::sign(std::int64_t dim, std::int64_t color) const {
  if (small_) {
    __int128 lhs = static_cast<__int128>(small_den_) * dim;
    __int128 rhs = static_cast<__int128>(small_num_) * color;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  return sign(BigInt(std::to_string(dim)), BigInt(std::to_string(color)));
}

int Alpha::sign(const BigInt& dim, const BigInt& color) const {
  if (kind_ == Kind::kRational) {
    BigInt diff = c_ * dim - a_ * color;
    return sgn(diff);
  }
  // c*(dim - alpha*color) = (c*dim - a*color) - b*color*sqrt(d).
  return sign_with_sqrt(c_ * dim - a_ * color, -b_ * color, d_);
}

BigInt Alpha::floor_multiple(const BigInt& k) const {
  if (kind_ == Kind::kRational) return floor_div(k * a_, c_);
  BigInt big_a = k * a_;
  BigInt big_b = k * b_;
  // t = floor(B*sqrt(d)); B*sqrt(d) is irrational unless B = 0.
  BigInt t = isqrt(big_b * big_b * d_);
  if (sgn(big_b) < 0) t = -t - 1;
  return floor_div(big_a + t, c_);
}

double Alpha::approx() const {
  if (kind_ == Kind::kRational) return a_.get_d() / c_.get_d();
  return (a_.get_d() + b_.get_d() * std::sqrt(d_.get_d())) / c_.get_d();
}

std::string Alpha::to_string() const {
  if (kind_ == Kind::kRational) {
    return c_ == 1 ? a_.get_str() : a_.get_str() + "/" + c_.get_str();
  }
  std::string num = (sgn(a_) != 0 ? a_.get_str() + (sgn(b_) > 0 ? " + " : " - ") : (sgn(b_) < 0 ? "-" : ""));
  BigInt mag = abs(b_);
  num += (mag == 1 ? std::string() : mag.get_str() + "*") + "sqrt(" + d_.get_str() + ")";
  if (c_ == 1) return num;
  if (sgn(a_) == 0 && sgn(b_) > 0) return num + "/" + c_.get_str();
  return "(" + num + ")/" + c_.get_str();
}

bool Alpha::operator==(const Alpha& other) const {
  return kind_ == other.kind_ && a_ == other.a_ && b_ == other.b_ && c_ == other.c_ &&
         d_ == other.d_;
}

std::string PreDimValue::to_string() const {
  if (color == 0) return std::to_string(dim);
  std::string term = alpha_term(BigInt(std::to_string(color < 0 ? -color : color)));
  if (dim == 0) return (color < 0 ? "" : "-") + term;
  return std::to_string(dim) + (color < 0 ? " + " : " - ") + term;
}

std::strong_ordering compare(const PreDimValue& x, const PreDimValue& y, const Alpha& alpha) {
  return ordering_of(alpha.sign(x.dim - y.dim, x.color - y.color));
}

ExactValue ExactValue::of(const PreDimValue& v) {
  return {BigInt(std::to_string(v.dim)), BigInt(std::to_string(v.color)), BigInt(1)};
}

ExactValue ExactValue::of(const Rational& r) { return {r.get_num(), BigInt(0), r.get_den()}; }

ExactValue ExactValue::alpha() { return {BigInt(0), BigInt(-1), BigInt(1)}; }

namespace {

ExactValue normalized(ExactValue v) {
  BigInt g = gcd(gcd(v.dim, v.color), v.denom);
  if (g > 1) {
    v.dim /= g;
    v.color /= g;
    v.denom /= g;
  }
  return v;
}

}  // namespace

ExactValue ExactValue::operator+(const ExactValue& o) const {
  return normalized({dim * o.denom + o.dim * denom, color * o.denom + o.color * denom,
                     denom * o.denom});
}

ExactValue ExactValue::operator-(const ExactValue& o) const {
  return normalized({dim * o.denom - o.dim * denom, color * o.denom - o.color * denom,
                     denom * o.denom});
}

ExactValue ExactValue::scaled(const Rational& factor) const {
  require(sgn(factor) != 0, ErrorCode::kInternal, "scaling by zero");
  // mpq keeps the denominator positive, so denom stays positive.
  return normalized({dim * factor.get_num(), color * factor.get_num(), denom * factor.get_den()});
}

std::string ExactValue::to_string() const {
  std::string body;
  if (sgn(color) == 0) {
    body = dim.get_str();
  } else {
    std::string term = alpha_term(abs(color));
    if (sgn(dim) == 0) {
      body = (sgn(color) < 0 ? "" : "-") + term;
    } else {
      body = dim.get_str() + (sgn(color) < 0 ? " + " : " - ") + term;
    }
  }
  if (denom == 1) return body;
  return "(" + body + ")/" + denom.get_str();
}

std::strong_ordering compare(const ExactValue& x, const ExactValue& y, const Alpha& alpha) {
  return ordering_of(
      alpha.sign(x.dim * y.denom - y.dim * x.denom, x.color * y.denom - y.color * x.denom));
}

int sign(const ExactValue& x, const Alpha& alpha) { return alpha.sign(x.dim, x.color); }

const ExactValue& min_value(const ExactValue& x, const ExactValue& y, const Alpha& alpha) {
  return compare(x, y, alpha) <= 0 ? x : y;
}

PreDimValue epsilon_bound(int n, const Alpha& alpha) {
  require(n >= 2, ErrorCode::kNoNegativeValue,
          "no negative value d - alpha*c with 0 <= d, c <= n-1 for n = " + std::to_string(n));
  bool found = false;
  PreDimValue best;  // the largest negative d - alpha*c
  for (std::int64_t c = 0; c < n; ++c) {
    for (std::int64_t d = 0; d < n; ++d) {
      PreDimValue v{d, c};
      if (sign(v, alpha) >= 0) continue;
      if (!found || compare(v, best, alpha) > 0) {
        best = v;
        found = true;
      }
    }
  }
  check_invariant(found, "epsilon_bound: (0, 1) always yields -alpha");
  return -best;
}

ApproximationPair dirichlet_window(const Alpha& alpha, const Rational& epsilon) {
  return dirichlet_window(alpha, ExactValue::of(epsilon));
}

ApproximationPair dirichlet_window(const Alpha& alpha, const ExactValue& epsilon) {
  require(!alpha.is_rational(), ErrorCode::kRationalAlpha,
          "dirichlet_window needs an irrational alpha");
  require(sign(epsilon, alpha) > 0 && compare(epsilon, ExactValue::alpha(), alpha) < 0,
          ErrorCode::kBadEpsilon, "epsilon must satisfy 0 < epsilon < alpha");
  for (BigInt k = 2;; ++k) {
    BigInt s = alpha.floor_multiple(k);
    // k*alpha - s = (-s) - alpha*(-k).
    ExactValue gap{-s, -k, BigInt(1)};
    if (compare(gap, epsilon, alpha) < 0) return {s, k};
  }
}

ApproximationPair rational_pair(const Alpha& alpha, unsigned t) {
  require(alpha.is_rational(), ErrorCode::kIrrationalAlpha,
          "rational_pair needs a rational alpha");
  require(alpha.num() != alpha.den(), ErrorCode::kAlphaOne, "rational_pair needs alpha < 1");
  const BigInt& m = alpha.num();
  const BigInt& n = alpha.den();
  BigInt m_pow, n_pow, m_t, n_t;
  mpz_pow_ui(m_pow.get_mpz_t(), m.get_mpz_t(), t + 1);
  mpz_pow_ui(n_pow.get_mpz_t(), n.get_mpz_t(), t + 1);
  mpz_pow_ui(m_t.get_mpz_t(), m.get_mpz_t(), t);
  mpz_pow_ui(n_t.get_mpz_t(), n.get_mpz_t(), t);
  BigInt k_prime;
  int ok = mpz_invert(k_prime.get_mpz_t(), m_pow.get_mpz_t(), n_pow.get_mpz_t());
  check_invariant(ok != 0, "rational_pair: m and n must be coprime");
  if (sgn(k_prime) == 0) k_prime = n_pow;
  BigInt s_prime = (m_pow * k_prime - 1) / n_pow;
  // With m = 1 the least inverse is k' = 1 and s' = 0; step to the next solution.
  if (sgn(s_prime) == 0) {
    k_prime += n_pow;
    s_prime = (m_pow * k_prime - 1) / n_pow;
  }
  check_invariant(m_pow * k_prime - 1 == s_prime * n_pow, "rational_pair: congruence");
  return {s_prime * n_t, k_prime * m_t};
}

}  // namespace bicolor
