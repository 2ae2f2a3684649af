#include "torictower/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <sstream>

namespace torictower {

namespace {

std::atomic<std::size_t> g_max_dim{Limits{}.max_dim};
std::atomic<std::size_t> g_max_rays{Limits{}.max_rays};

}  // namespace

Limits current_limits() {
  return Limits{g_max_dim.load(std::memory_order_relaxed), g_max_rays.load(std::memory_order_relaxed)};
}

void set_limits(const Limits& limits) {
  g_max_dim.store(limits.max_dim, std::memory_order_relaxed);
  g_max_rays.store(limits.max_rays, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// LatticeVector

LatticeVector::LatticeVector(std::initializer_list<long> entries) {
  entries_.reserve(entries.size());
  for (long e : entries) entries_.emplace_back(e);
}

LatticeVector LatticeVector::unit(std::size_t dim, std::size_t index) {
  LatticeVector v(dim);
  v[index] = 1;
  return v;
}

bool LatticeVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

Integer LatticeVector::content() const {
  Integer g = 0;
  for (const auto& x : entries_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

LatticeVector LatticeVector::extended(const Integer& last) const {
  auto e = entries_;
  e.push_back(last);
  return LatticeVector(std::move(e));
}

LatticeVector LatticeVector::truncated() const {
  if (entries_.empty()) throw DimensionError("cannot truncate a zero-dimensional vector");
  return LatticeVector(std::vector<Integer>(entries_.begin(), entries_.end() - 1));
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
  if (dim() != other.dim()) throw DimensionError("vector dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
  if (dim() != other.dim()) throw DimensionError("vector dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

LatticeVector& LatticeVector::operator*=(const Integer& k) {
  for (auto& x : entries_) x *= k;
  return *this;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector r(*this);
  for (auto& x : r.entries_) x = -x;
  return r;
}

bool operator<(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os << ')';
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("pairing dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const LatticeVector& b) {
  if (a.size() != b.dim()) throw DimensionError("pairing dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

LatticeVector primitive(const LatticeVector& v) {
  Integer g = v.content();
  if (sgn(g) == 0) throw std::invalid_argument("zero vector has no primitive representative");
  LatticeVector r(v);
  for (std::size_t i = 0; i < r.dim(); ++i) mpz_divexact(r[i].get_mpz_t(), r[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

LatticeVector primitive_from_rational(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  LatticeVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * l;
    r[i] = scaled.get_num();
  }
  if (r.is_zero()) return r;
  return primitive(r);
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    for (long x : r) entries_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != cols) throw DimensionError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

LatticeVector IntMatrix::row(std::size_t r) const {
  return LatticeVector(std::vector<Integer>(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_));
}

LatticeVector IntMatrix::column(std::size_t c) const {
  LatticeVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

LatticeVector IntMatrix::apply(const LatticeVector& v) const {
  if (v.dim() != cols_) throw DimensionError("matrix-vector dimension mismatch");
  LatticeVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Integer s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (sgn(k) == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (sgn(k) == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ',';
    os << m.row(r);
  }
  return os << ']';
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && sgn(a(swap, k)) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Hermite normal form

std::pair<IntMatrix, IntMatrix> hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  const std::size_t rows = m.rows();
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < m.cols() && pivot < rows; ++col) {
    // Euclid on column `col` among rows pivot..rows-1.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t r = pivot; r < rows; ++r) {
        if (sgn(h(r, col)) == 0) continue;
        if (best == rows || mpz_cmpabs(h(r, col).get_mpz_t(), h(best, col).get_mpz_t()) < 0) best = r;
      }
      if (best == rows) break;
      h.swap_rows(pivot, best);
      u.swap_rows(pivot, best);
      bool cleared = true;
      for (std::size_t r = pivot + 1; r < rows; ++r) {
        if (sgn(h(r, col)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), h(pivot, col).get_mpz_t());
        h.add_row_multiple(r, pivot, -q);
        u.add_row_multiple(r, pivot, -q);
        if (sgn(h(r, col)) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (sgn(h(pivot, col)) == 0) continue;
    if (sgn(h(pivot, col)) < 0) {
      h.negate_row(pivot);
      u.negate_row(pivot);
    }
    for (std::size_t r = 0; r < pivot; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), h(pivot, col).get_mpz_t());
      h.add_row_multiple(r, pivot, -q);
      u.add_row_multiple(r, pivot, -q);
    }
    ++pivot;
  }
  return {std::move(h), std::move(u)};
}

bool is_hermite_normal_form(const IntMatrix& h) {
  std::size_t last_pivot_col = 0;
  bool seen_pivot = false;
  bool seen_zero_row = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && sgn(h(r, c)) == 0) ++c;
    if (c == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (seen_pivot && c <= last_pivot_col) return false;
    if (sgn(h(r, c)) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above) {
      if (sgn(h(above, c)) < 0 || cmp(h(above, c), h(r, c)) >= 0) return false;
    }
    seen_pivot = true;
    last_pivot_col = c;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithForm snf(const IntMatrix& m) {
  SmithForm f{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& s = f.diagonal;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t br = rows, bc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (sgn(s(i, j)) == 0) continue;
          if (br == rows || mpz_cmpabs(s(i, j).get_mpz_t(), s(br, bc).get_mpz_t()) < 0) {
            br = i;
            bc = j;
          }
        }
      if (br == rows) return f;
      s.swap_rows(t, br);
      f.left.swap_rows(t, br);
      s.swap_cols(t, bc);
      f.right.swap_cols(t, bc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(s(i, t)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_row_multiple(i, t, -q);
        f.left.add_row_multiple(i, t, -q);
        if (sgn(s(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(s(t, j)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_col_multiple(j, t, -q);
        f.right.add_col_multiple(j, t, -q);
        if (sgn(s(t, j)) != 0) dirty = true;
      }
      if (dirty) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            s.add_row_multiple(t, i, 1);
            f.left.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
        }
      if (divisible) break;
    }
    if (sgn(s(t, t)) < 0) {
      s.negate_row(t);
      f.left.negate_row(t);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Rational elimination helpers

namespace {

using RationalRows = std::vector<RationalVector>;

RationalRows to_rational(const std::vector<LatticeVector>& rows, std::size_t dim) {
  RationalRows out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.dim() != dim) throw DimensionError("row length mismatch");
    RationalVector q(dim);
    for (std::size_t i = 0; i < dim; ++i) q[i] = r[i];
    out.push_back(std::move(q));
  }
  return out;
}

// In-place reduced row echelon form over the first `cols` columns. Returns
// pivot columns in order.
std::vector<std::size_t> rref(RationalRows& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < a[r].size(); ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const std::vector<LatticeVector>& rows, std::size_t dim) {
  auto a = to_rational(rows, dim);
  return rref(a, dim).size();
}

std::size_t rank(const IntMatrix& m) {
  std::vector<LatticeVector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rank(rows, m.cols());
}

std::vector<LatticeVector> canonical_span_basis(const std::vector<LatticeVector>& rows, std::size_t dim) {
  auto a = to_rational(rows, dim);
  auto pivots = rref(a, dim);
  std::vector<LatticeVector> basis;
  for (std::size_t i = 0; i < pivots.size(); ++i) basis.push_back(primitive_from_rational(a[i]));
  return basis;
}

RationalSolution solve_rational(const std::vector<LatticeVector>& rows, const RationalVector& rhs,
                                std::size_t dim) {
  if (rows.size() != rhs.size()) throw DimensionError("right-hand side length mismatch");
  auto a = to_rational(rows, dim);
  for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(rhs[r]);
  auto pivots = rref(a, dim + 1);
  RationalSolution sol;
  if (!pivots.empty() && pivots.back() == dim) return sol;
  sol.solvable = true;
  sol.x.assign(dim, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.x[pivots[i]] = a[i][dim];
  return sol;
}

std::vector<LatticeVector> integer_kernel(const std::vector<LatticeVector>& rows, std::size_t dim) {
  // U * A^T = H; rows of U facing zero rows of H span the saturated kernel.
  IntMatrix at(dim, rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != dim) throw DimensionError("row length mismatch");
    for (std::size_t c = 0; c < dim; ++c) at(c, r) = rows[r][c];
  }
  auto [h, u] = hnf(at);
  std::vector<LatticeVector> kernel;
  for (std::size_t r = 0; r < dim; ++r) {
    if (h.row(r).is_zero()) kernel.push_back(u.row(r));
  }
  return kernel;
}

}  // namespace torictower
