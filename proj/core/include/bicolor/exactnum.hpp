#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "bicolor/numeric.hpp"

namespace bicolor {

// The weight of a colored point: a rational p/q in (0, 1] or a quadratic
// irrational (a + b*sqrt(d))/c in (0, 1). Factories reject anything else.
class Alpha {
 public:
  enum class Kind { kRational, kQuadratic };

  static Alpha rational(const BigInt& num, const BigInt& den);
  static Alpha quadratic(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::kRational; }

  // Rational parts; meaningful only when is_rational().
  const BigInt& num() const { return a_; }
  const BigInt& den() const { return c_; }
  // Quadratic parts.
  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  // Sign of dim - alpha * color, exactly.
  int sign(std::int64_t dim, std::int64_t color) const;
  int sign(const BigInt& dim, const BigInt& color) const;

  // floor(k * alpha).
  BigInt floor_multiple(const BigInt& k) const;

  double approx() const;
  std::string to_string() const;

  bool operator==(const Alpha& other) const;

 private:
  Alpha() = default;

  Kind kind_ = Kind::kRational;
  BigInt a_, b_, c_, d_;
  // Fast path for rationals whose parts fit in 64 bits.
  bool small_ = false;
  std::int64_t small_num_ = 0, small_den_ = 1;
};

// Sign of u + v*sqrt(d) for non-square d > 1.
int sign_with_sqrt(const BigInt& u, const BigInt& v, const BigInt& d);

// An element dim - alpha*color of Z + Z*alpha. Every delta value lives here.
struct PreDimValue {
  std::int64_t dim = 0;
  std::int64_t color = 0;

  PreDimValue operator+(const PreDimValue& o) const { return {dim + o.dim, color + o.color}; }
  PreDimValue operator-(const PreDimValue& o) const { return {dim - o.dim, color - o.color}; }
  PreDimValue operator-() const { return {-dim, -color}; }
  PreDimValue operator*(std::int64_t k) const { return {dim * k, color * k}; }
  PreDimValue& operator+=(const PreDimValue& o) {
    dim += o.dim;
    color += o.color;
    return *this;
  }
  bool operator==(const PreDimValue&) const = default;

  std::string to_string() const;
};

std::strong_ordering compare(const PreDimValue& x, const PreDimValue& y, const Alpha& alpha);
inline int sign(const PreDimValue& x, const Alpha& alpha) { return alpha.sign(x.dim, x.color); }

// (dim - alpha*color) / denom with denom > 0: the closure of PreDimValue
// under rational scaling. Used where thresholds such as (1 - alpha)/2^n or
// half of a delta value must stay exact.
struct ExactValue {
  BigInt dim = 0;
  BigInt color = 0;
  BigInt denom = 1;

  static ExactValue of(const PreDimValue& v);
  static ExactValue of(const Rational& r);
  static ExactValue alpha();

  ExactValue operator+(const ExactValue& o) const;
  ExactValue operator-(const ExactValue& o) const;
  ExactValue scaled(const Rational& factor) const;
  bool is_rational() const { return sgn(color) == 0; }

  std::string to_string() const;
};

std::strong_ordering compare(const ExactValue& x, const ExactValue& y, const Alpha& alpha);
int sign(const ExactValue& x, const Alpha& alpha);
const ExactValue& min_value(const ExactValue& x, const ExactValue& y, const Alpha& alpha);

// Smallest positive |d - alpha*c| over 0 <= d, c <= n-1 with d - alpha*c < 0,
// returned as the pair (-d, -c).
PreDimValue epsilon_bound(int n, const Alpha& alpha);

struct ApproximationPair {
  BigInt s;
  BigInt k;
  bool operator==(const ApproximationPair&) const = default;
};

// Least k >= 2 with 0 < k*alpha - s < epsilon, s = floor(k*alpha).
ApproximationPair dirichlet_window(const Alpha& alpha, const Rational& epsilon);
ApproximationPair dirichlet_window(const Alpha& alpha, const ExactValue& epsilon);

// For alpha = m/n < 1: k'*m^(t+1) - 1 = s'*n^(t+1) with the least k' >= 1
// giving s' >= 1; returns s = s'*n^t, k = k'*m^t, so that s - alpha*k = -1/n.
ApproximationPair rational_pair(const Alpha& alpha, unsigned t);

}  // namespace bicolor
