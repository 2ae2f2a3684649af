#include <gtest/gtest.h>

#include "torictower/cone.hpp"
#include "torictower/lattice.hpp"
#include "torictower/random.hpp"
#include "torictower/reference.hpp"

using namespace torictower;

namespace {

IntMatrix diag(std::initializer_list<long> d) {
  IntMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (long x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

// Independent of is_hermite_normal_form.
bool row_echelon_normal(const IntMatrix& h) {
  long last_pivot = -1;
  bool seen_zero_row = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    long pivot = -1;
    for (std::size_t c = 0; c < h.cols(); ++c)
      if (h(r, c) != 0) {
        pivot = static_cast<long>(c);
        break;
      }
    if (pivot < 0) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row || pivot <= last_pivot || h(r, pivot) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, pivot) < 0 || h(above, pivot) >= h(r, pivot)) return false;
    last_pivot = pivot;
  }
  return true;
}

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng.uniform(-bound, bound));
  return m;
}

IntMatrix random_unimodular(Rng& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (int step = 0; step < 6; ++step) {
    const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    const auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    if (a == b) u.negate_row(a);
    else u.add_row_multiple(a, b, static_cast<long>(rng.uniform(-2, 2)));
  }
  return u;
}

}  // namespace

TEST(Hnf, IdentityIsFixed) {
  const auto [h, u] = hnf(IntMatrix::identity(3));
  EXPECT_EQ(h, IntMatrix::identity(3));
  EXPECT_EQ(u, IntMatrix::identity(3));
}

TEST(Hnf, DiagonalAlreadyNormal) {
  const auto [h, u] = hnf(diag({2, 3}));
  EXPECT_EQ(h, diag({2, 3}));
  EXPECT_EQ(u, IntMatrix::identity(2));
}

TEST(Hnf, ExhaustiveTwoByTwoMatchesSearchOracle) {
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c)
        for (long d = -3; d <= 3; ++d) {
          const IntMatrix m{{a, b}, {c, d}};
          const auto [h, u] = hnf(m);
          const auto expected = reference::hnf_by_search({a, b, c, d});
          ASSERT_TRUE(expected.has_value()) << m;
          const IntMatrix e{{static_cast<long>((*expected)[0]), static_cast<long>((*expected)[1])},
                            {static_cast<long>((*expected)[2]), static_cast<long>((*expected)[3])}};
          ASSERT_EQ(h, e) << m;
          ASSERT_EQ(u * m, h);
        }
}

TEST(Hnf, RandomThreeByThreeSatisfiesPredicateAndIsUnique) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix m = random_matrix(rng, 3, 3, 5);
    const auto [h, u] = hnf(m);
    EXPECT_TRUE(row_echelon_normal(h)) << m;
    EXPECT_TRUE(is_hermite_normal_form(h)) << m;
    EXPECT_EQ(Integer(abs(determinant(u))), 1) << m;
    EXPECT_EQ(u * m, h) << m;
    // Same row lattice, same normal form.
    EXPECT_EQ(hnf(random_unimodular(rng, 3) * m).first, h) << m;
  }
}

TEST(Hnf, FrozenThreeByThree) {
  // Each row of m is an integer combination of the rows of H and the
  // determinants agree (15), so both span the same lattice.
  const IntMatrix m{{2, 3, 1}, {-1, 4, 0}, {5, -2, 3}};
  const auto [h, u] = hnf(m);
  EXPECT_EQ(h, (IntMatrix{{1, 0, 14}, {0, 1, 11}, {0, 0, 15}}));
  EXPECT_EQ(u * m, h);
}

TEST(Snf, SmallExamples) {
  EXPECT_EQ(snf(diag({1, 1})).diagonal, diag({1, 1}));
  EXPECT_EQ(snf(diag({2, 3})).diagonal, diag({1, 6}));
  EXPECT_EQ(snf(IntMatrix(2, 3)).diagonal, IntMatrix(2, 3));
}

TEST(Snf, MatchesGcdOfMinorsOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 4));
    const IntMatrix m = random_matrix(rng, rows, cols, 6);
    const auto s = snf(m);
    EXPECT_EQ(s.left * m * s.right, s.diagonal) << m;
    EXPECT_EQ(Integer(abs(determinant(s.left))), 1);
    EXPECT_EQ(Integer(abs(determinant(s.right))), 1);
    const auto factors = reference::invariant_factors_by_minors(m);
    for (std::size_t k = 0; k < factors.size(); ++k) EXPECT_EQ(s.diagonal(k, k), factors[k]) << m;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) EXPECT_EQ(s.diagonal(i, j), 0);
  }
}

TEST(Determinant, AgreesWithLaplace) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    const IntMatrix m = random_matrix(rng, n, n, 7);
    std::vector<std::vector<Integer>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i].push_back(m(i, j));
    EXPECT_EQ(determinant(m), reference::laplace_determinant(rows)) << m;
  }
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive(LatticeVector{2, 4}), (LatticeVector{1, 2}));
  EXPECT_EQ(primitive(LatticeVector{1, 0}), (LatticeVector{1, 0}));
  EXPECT_EQ(primitive(LatticeVector{-3, 6, -9}), (LatticeVector{-1, 2, -3}));
}

TEST(Primitive, ZeroVectorIsAnError) {
  try {
    primitive(LatticeVector{0, 0});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "zero vector has no primitive representative");
  }
}

TEST(Kernel, SaturatedBasis) {
  const auto k = integer_kernel({LatticeVector{2, 4, 6}}, 3);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_EQ(dot(v, LatticeVector{1, 2, 3}), 0);
  // Saturated: the kernel basis spans a primitive sublattice (SNF all ones).
  const auto s = snf(IntMatrix::from_rows(k, 3));
  EXPECT_EQ(s.diagonal(0, 0), 1);
  EXPECT_EQ(s.diagonal(1, 1), 1);
}

TEST(SolveRational, UnderdeterminedAndInconsistent) {
  const auto ok = solve_rational({LatticeVector{1, 1}}, {Rational(3)}, 2);
  ASSERT_TRUE(ok.solvable);
  EXPECT_EQ(dot(ok.x, LatticeVector{1, 1}), 3);
  const auto bad = solve_rational({LatticeVector{1, 1}, LatticeVector{2, 2}}, {Rational(1), Rational(3)}, 2);
  EXPECT_FALSE(bad.solvable);
}

TEST(Limits, DimensionCapRaises) {
  const auto saved = current_limits();
  set_limits({3, saved.max_rays});
  EXPECT_THROW(double_description({LatticeVector{1, 0, 0, 0}}, 4), ResourceError);
  set_limits(saved);
}
