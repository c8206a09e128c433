#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bicolor/numeric.hpp"

namespace bicolor {

struct SparseEntry {
  std::uint32_t col;
  BigInt val;
};

// Integer vector as (column, nonzero value) pairs sorted by column.
using SparseVector = std::vector<SparseEntry>;

// Divides out the gcd of the entries and makes the leading entry positive.
void make_primitive(SparseVector& v);

// a*x - b*y with zero entries dropped.
SparseVector scaled_difference(const BigInt& a, const SparseVector& x, const BigInt& b,
                               const SparseVector& y);

// Integer vector with the same direction as a rational vector.
SparseVector primitive_from_rational(const std::vector<Rational>& vec);

// Row-echelon basis built by fraction-free elimination. Rows are kept
// primitive; push/pop make it usable as a depth-first search stack.
class EchelonSpan {
 public:
  // Residual of v after elimination against the stored rows; empty iff v is
  // in the span.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  // Returns true when v enlarged the span. Every push is undone by one pop.
  bool push(const SparseVector& v);
  void pop();

  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVector>& rows() const { return rows_; }

 private:
  std::vector<SparseVector> rows_;
  std::vector<bool> grew_;
};

// Rank of a dense integer matrix by Bareiss elimination, pivoting on the
// first nonzero entry by row then column.
std::size_t bareiss_rank(std::vector<std::vector<BigInt>> rows);

}  // namespace bicolor
