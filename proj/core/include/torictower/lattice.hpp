#pragma once

// Exact integer and rational linear algebra over arbitrary-precision
// integers. Everything in the library sits on these types; no floating
// point is used anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torictower {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Raised when an input exceeds a configured resource cap (dimension, ray count).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on mismatched dimensions between lattice objects.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Process-wide caps guarding combinatorial blowup.
struct Limits {
  std::size_t max_dim = 10;
  std::size_t max_rays = 500;
};

Limits current_limits();
void set_limits(const Limits& limits);

/// An element of N or M: a fixed-length vector of integers.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dim) : entries_(dim, 0) {}
  explicit LatticeVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
  LatticeVector(std::initializer_list<long> entries);

  static LatticeVector unit(std::size_t dim, std::size_t index);

  std::size_t dim() const { return entries_.size(); }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Integer>& entries() const { return entries_; }

  bool is_zero() const;
  Integer content() const;  // gcd of entries, 0 for the zero vector

  /// Appends one coordinate (N_{i-1} -> N_{i-1} + Z).
  LatticeVector extended(const Integer& last) const;
  /// Drops the last coordinate.
  LatticeVector truncated() const;

  LatticeVector& operator+=(const LatticeVector& other);
  LatticeVector& operator-=(const LatticeVector& other);
  LatticeVector& operator*=(const Integer& k);

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) { return a *= k; }
  LatticeVector operator-() const;

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }
  /// Lexicographic on entries; vectors of different length order by length first.
  friend bool operator<(const LatticeVector& a, const LatticeVector& b);

  std::string to_string() const;

 private:
  std::vector<Integer> entries_;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

Integer dot(const LatticeVector& a, const LatticeVector& b);
Rational dot(const RationalVector& a, const LatticeVector& b);

/// v divided by the gcd of its entries. Throws std::invalid_argument on zero.
LatticeVector primitive(const LatticeVector& v);

/// Clears denominators of a rational vector and returns the primitive
/// integer vector in the same direction. Zero maps to zero.
LatticeVector primitive_from_rational(const RationalVector& v);

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<LatticeVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const;
  LatticeVector column(std::size_t c) const;
  IntMatrix transposed() const;

  /// Matrix-vector product M * v (v as a column).
  LatticeVector apply(const LatticeVector& v) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

/// Row Hermite normal form: returns (H, U) with U unimodular and H = U * m.
/// H is upper echelon with positive pivots, entries above each pivot reduced
/// into [0, pivot), and zero rows at the bottom.
std::pair<IntMatrix, IntMatrix> hnf(const IntMatrix& m);

/// True iff h satisfies the row Hermite normal form predicate used by hnf().
bool is_hermite_normal_form(const IntMatrix& h);

struct SmithForm {
  IntMatrix diagonal;  // S
  IntMatrix left;      // U
  IntMatrix right;     // V, with S = U * m * V
};

/// Smith normal form with non-negative diagonal, each entry dividing the next.
SmithForm snf(const IntMatrix& m);

/// Rank over Q.
std::size_t rank(const std::vector<LatticeVector>& rows, std::size_t dim);
std::size_t rank(const IntMatrix& m);

/// Reduced row echelon basis (over Q) of the span of `rows`, each row scaled
/// to a primitive integer vector. Canonical for the subspace.
std::vector<LatticeVector> canonical_span_basis(const std::vector<LatticeVector>& rows,
                                                std::size_t dim);

/// One solution x of A x = b over Q (A given by rows), or nullopt-like empty
/// vector with `solvable` false.
struct RationalSolution {
  bool solvable = false;
  RationalVector x;
};
RationalSolution solve_rational(const std::vector<LatticeVector>& rows, const RationalVector& rhs,
                                std::size_t dim);

/// Integer basis of the kernel {x : A x = 0} (A given by rows), saturated.
std::vector<LatticeVector> integer_kernel(const std::vector<LatticeVector>& rows, std::size_t dim);

}  // namespace torictower
