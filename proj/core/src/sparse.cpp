#include "bicolor/sparse.hpp"

#include <algorithm>

namespace bicolor {
namespace {

const BigInt* find_entry(const SparseVector& v, std::uint32_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const SparseEntry& e, std::uint32_t c) { return e.col < c; });
  if (it == v.end() || it->col != col) return nullptr;
  return &it->val;
}

}  // namespace

SparseVector scaled_difference(const BigInt& a, const SparseVector& x, const BigInt& b,
                     const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) {
      out.push_back({x[i].col, a * x[i].val});
      ++i;
    } else if (i == x.size() || y[j].col < x[i].col) {
      out.push_back({y[j].col, -b * y[j].val});
      ++j;
    } else {
      BigInt v = a * x[i].val - b * y[j].val;
      if (sgn(v) != 0) out.push_back({x[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_primitive(SparseVector& v) {
  if (v.empty()) return;
  BigInt g = 0;
  for (const auto& e : v) {
    g = gcd(g, e.val);
    if (g == 1) break;
  }
  if (sgn(v.front().val) < 0) g = -g;
  if (g != 1) {
    for (auto& e : v) mpz_divexact(e.val.get_mpz_t(), e.val.get_mpz_t(), g.get_mpz_t());
  }
}

SparseVector primitive_from_rational(const std::vector<Rational>& vec) {
  BigInt lcm = 1;
  for (const auto& x : vec) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  SparseVector out;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (sgn(vec[i]) == 0) continue;
    BigInt scaled = vec[i].get_num() * (lcm / vec[i].get_den());
    out.push_back({static_cast<std::uint32_t>(i), std::move(scaled)});
  }
  make_primitive(out);
  return out;
}

SparseVector EchelonSpan::reduce(SparseVector v) const {
  for (const auto& row : rows_) {
    if (v.empty()) break;
    const BigInt* hit = find_entry(v, row.front().col);
    if (hit == nullptr) continue;
    BigInt coef = *hit;
    v = scaled_difference(row.front().val, v, coef, row);
    make_primitive(v);
  }
  return v;
}

bool EchelonSpan::push(const SparseVector& v) {
  SparseVector r = reduce(v);
  bool grew = !r.empty();
  if (grew) {
    // Keep the row's first entry at the smallest column so that later
    // reductions can key on it.
    rows_.push_back(std::move(r));
  }
  grew_.push_back(grew);
  return grew;
}

void EchelonSpan::pop() {
  if (grew_.back()) rows_.pop_back();
  grew_.pop_back();
}

std::size_t bareiss_rank(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m.front().size();
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        BigInt v = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[r][c] = std::move(v);
      }
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace bicolor
