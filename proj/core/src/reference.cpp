#include "torictower/reference.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace torictower::reference {

namespace {

bool small_hnf_predicate(const Small2x2& h) {
  const std::int64_t r[2][2] = {{h[0], h[1]}, {h[2], h[3]}};
  int pivot_col[2] = {-1, -1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (r[i][j] != 0) {
        pivot_col[i] = j;
        break;
      }
  if (pivot_col[0] == -1 && pivot_col[1] != -1) return false;  // zero row above a nonzero row
  for (int i = 0; i < 2; ++i) {
    if (pivot_col[i] == -1) continue;
    const std::int64_t p = r[i][pivot_col[i]];
    if (p <= 0) return false;
    if (i == 1) {
      if (pivot_col[1] <= pivot_col[0]) return false;
      const std::int64_t above = r[0][pivot_col[1]];
      if (above < 0 || above >= p) return false;
    }
  }
  return true;
}

const std::vector<Small2x2>& unimodular_matrices(std::int64_t bound) {
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<Small2x2>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& list = cache[bound];
  if (list.empty()) {
    for (std::int64_t a = -bound; a <= bound; ++a)
      for (std::int64_t b = -bound; b <= bound; ++b)
        for (std::int64_t c = -bound; c <= bound; ++c)
          for (std::int64_t d = -bound; d <= bound; ++d)
            if (a * d - b * c == 1 || a * d - b * c == -1) list.push_back({a, b, c, d});
    auto height = [](const Small2x2& u) {
      std::int64_t h = 0;
      for (auto x : u) h = std::max(h, x < 0 ? -x : x);
      return h;
    };
    std::stable_sort(list.begin(), list.end(), [&](const Small2x2& x, const Small2x2& y) { return height(x) < height(y); });
  }
  return list;
}

// All k-subsets of {0..n-1}, lexicographic.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == k) {
      fn(pick);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::optional<Small2x2> hnf_by_search(const Small2x2& m, std::int64_t bound) {
  for (const auto& u : unimodular_matrices(bound)) {
    Small2x2 h = {u[0] * m[0] + u[1] * m[2], u[0] * m[1] + u[1] * m[3], u[2] * m[0] + u[3] * m[2],
                  u[2] * m[1] + u[3] * m[3]};
    if (small_hnf_predicate(h)) return h;
  }
  return std::nullopt;
}

Integer laplace_determinant(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (sgn(m[0][col]) == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Integer term = m[0][col] * laplace_determinant(minor);
    if (col % 2) total -= term;
    else total += term;
  }
  return total;
}

std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  const std::size_t r = std::min(m.rows(), m.cols());
  std::vector<Integer> factors(r, 0);
  Integer prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::vector<Integer>> sub;
        for (auto i : rows) {
          std::vector<Integer> row;
          for (auto j : cols) row.push_back(m(i, j));
          sub.push_back(std::move(row));
        }
        Integer d = laplace_determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (sgn(g) == 0) break;
    factors[k - 1] = g / prev;
    prev = g;
  }
  return factors;
}

std::optional<std::vector<Rational>> cramer_coefficients(const std::vector<LatticeVector>& rays, const LatticeVector& e) {
  const std::size_t k = rays.size();
  const std::size_t n = e.dim();
  if (k == 0) {
    if (e.is_zero()) return std::vector<Rational>{};
    return std::nullopt;
  }
  if (k > n) return std::nullopt;
  std::optional<std::vector<Rational>> found;
  for_each_subset(n, k, [&](const std::vector<std::size_t>& coords) {
    if (found) return;
    std::vector<std::vector<Integer>> a(k, std::vector<Integer>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t i = 0; i < k; ++i) a[r][i] = rays[i][coords[r]];
    Integer det = laplace_determinant(a);
    if (sgn(det) == 0) return;
    std::vector<Rational> alpha(k);
    for (std::size_t i = 0; i < k; ++i) {
      auto ai = a;
      for (std::size_t r = 0; r < k; ++r) ai[r][i] = e[coords[r]];
      alpha[i] = Rational(laplace_determinant(ai), det);
      alpha[i].canonicalize();
    }
    found = std::move(alpha);
  });
  if (!found) return std::nullopt;
  for (std::size_t c = 0; c < n; ++c) {
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += (*found)[i] * Rational(rays[i][c]);
    if (s != Rational(e[c])) return std::nullopt;
  }
  return found;
}

bool caratheodory_contains(const std::vector<LatticeVector>& gens, const LatticeVector& v) {
  if (v.is_zero()) return true;
  const std::size_t n = v.dim();
  bool inside = false;
  for (std::size_t k = 1; k <= std::min(n, gens.size()) && !inside; ++k) {
    for_each_subset(gens.size(), k, [&](const std::vector<std::size_t>& idx) {
      if (inside) return;
      std::vector<LatticeVector> sub;
      for (auto i : idx) sub.push_back(gens[i]);
      auto alpha = cramer_coefficients(sub, v);
      if (alpha && std::all_of(alpha->begin(), alpha->end(), [](const Rational& a) { return sgn(a) >= 0; }))
        inside = true;
    });
  }
  return inside;
}

std::vector<LatticeVector> facet_normals_by_enumeration(const std::vector<LatticeVector>& gens, std::size_t dim) {
  std::vector<LatticeVector> normals;
  if (dim == 0) return normals;
  for_each_subset(gens.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    LatticeVector w(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<std::vector<Integer>> minor;
      for (auto i : idx) {
        std::vector<Integer> row;
        for (std::size_t c = 0; c < dim; ++c)
          if (c != j) row.push_back(gens[i][c]);
        minor.push_back(std::move(row));
      }
      w[j] = laplace_determinant(minor);
      if (j % 2) w[j] = -w[j];
    }
    if (w.is_zero()) return;
    bool nonneg = true, nonpos = true;
    for (const auto& g : gens) {
      int s = sgn(dot(w, g));
      if (s < 0) nonneg = false;
      if (s > 0) nonpos = false;
    }
    if (nonneg) normals.push_back(primitive(w));
    else if (nonpos) normals.push_back(primitive(-w));
  });
  std::sort(normals.begin(), normals.end());
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  return normals;
}

std::optional<Rational> simplicial_log_discrepancy(const std::vector<LatticeVector>& rays,
                                                   const std::vector<Rational>& boundary, const LatticeVector& e) {
  auto alpha = cramer_coefficients(rays, e);
  if (!alpha) return std::nullopt;
  Rational a = 0;
  for (std::size_t i = 0; i < rays.size(); ++i) a += (*alpha)[i] * (1 - boundary.at(i));
  return a;
}

}  // namespace torictower::reference
