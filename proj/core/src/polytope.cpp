#include "torictower/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace torictower {

namespace {

LatticeVector homogenize(const RationalVector& v) {
  RationalVector h = v;
  h.push_back(1);
  return primitive_from_rational(h);
}

RationalVector dehomogenize(const LatticeVector& h) {
  const std::size_t n = h.dim() - 1;
  RationalVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = Rational(h[i], h[n]);
    v[i].canonicalize();
  }
  return v;
}

RationalVector difference(const RationalVector& a, const RationalVector& b) {
  RationalVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

long affine_dim(const std::vector<RationalVector>& pts, const std::vector<std::size_t>& idx, std::size_t n) {
  if (idx.empty()) return -1;
  std::vector<LatticeVector> diffs;
  for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(primitive_from_rational(difference(pts[idx[i]], pts[idx[0]])));
  return static_cast<long>(rank(diffs, n));
}

Rational rational_det(std::vector<RationalVector> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

LatticePolytope LatticePolytope::from_points(std::size_t ambient_dim, const std::vector<RationalVector>& points) {
  LatticePolytope p;
  p.ambient_dim_ = ambient_dim;
  if (points.empty()) return p;
  std::vector<LatticeVector> lifted;
  for (const auto& pt : points) {
    if (pt.size() != ambient_dim) throw DimensionError("polytope point dimension mismatch");
    lifted.push_back(homogenize(pt));
  }
  // Extreme rays of the cone over the points are the vertices.
  const Cone hull = dual_cone(dual_cone(Cone::from_rays(ambient_dim + 1, lifted)));
  for (const auto& g : hull.generators()) p.vertices_.push_back(dehomogenize(g));
  std::sort(p.vertices_.begin(), p.vertices_.end());
  return p;
}

long LatticePolytope::dim() const {
  std::vector<std::size_t> idx(vertices_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return affine_dim(vertices_, idx, ambient_dim_);
}

std::vector<std::vector<std::size_t>> LatticePolytope::facets() const {
  std::vector<LatticeVector> lifted;
  for (const auto& v : vertices_) lifted.push_back(homogenize(v));
  const auto normals = double_description(lifted, ambient_dim_ + 1);
  std::vector<std::vector<std::size_t>> out;
  for (const auto& n : normals.rays) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (sgn(dot(n, lifted[i])) == 0) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Result<LatticePolytope> divisor_polytope(const Fan& f, const ToricDivisor& d) {
  const std::size_t n = f.ambient_dim();
  const auto& rays = f.all_rays();
  for (const auto& [ray, value] : d.coefficients())
    if (!std::binary_search(rays.begin(), rays.end(), ray))
      throw std::invalid_argument("divisor coefficient on " + ray.to_string() + " which is not a ray of the fan");

  const auto recession = double_description(rays, n);
  if (!recession.rays.empty() || !recession.lineality.empty())
    return Failure{FailureKind::unbounded, "divisor not bounded above"};

  std::vector<RationalVector> vertices;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (pick.size() == n) {
      std::vector<LatticeVector> rows;
      RationalVector rhs;
      for (auto i : pick) {
        rows.push_back(rays[i]);
        rhs.push_back(-d.coefficient(rays[i]));
      }
      if (rank(rows, n) != n) return;
      auto sol = solve_rational(rows, rhs, n);
      for (const auto& u : rays)
        if (dot(sol.x, u) < -d.coefficient(u)) return;
      vertices.push_back(std::move(sol.x));
      return;
    }
    for (std::size_t i = start; i < rays.size(); ++i) {
      pick.push_back(i);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return LatticePolytope::from_points(n, vertices);
}

Rational normalized_volume(const LatticePolytope& p) {
  const std::size_t n = p.ambient_dim();
  if (p.empty()) return 0;
  if (p.dim() < static_cast<long>(n)) return 0;
  if (n == 0) return 1;
  const auto& pts = p.vertices();
  const auto facets = p.facets();

  // Pulling triangulation: cone from the first vertex over the facets of the
  // current face that miss it, recursively.
  std::function<std::vector<std::vector<std::size_t>>(const std::vector<std::size_t>&, long)> triangulate =
      [&](const std::vector<std::size_t>& face, long k) -> std::vector<std::vector<std::size_t>> {
    if (static_cast<long>(face.size()) == k + 1) return {face};
    const std::size_t apex = face.front();
    std::set<std::vector<std::size_t>> sub_faces;
    for (const auto& g : facets) {
      std::vector<std::size_t> meet;
      std::set_intersection(face.begin(), face.end(), g.begin(), g.end(), std::back_inserter(meet));
      if (std::binary_search(meet.begin(), meet.end(), apex)) continue;
      if (affine_dim(pts, meet, n) != k - 1) continue;
      sub_faces.insert(std::move(meet));
    }
    std::vector<std::vector<std::size_t>> simplices;
    for (const auto& sf : sub_faces)
      for (auto s : triangulate(sf, k - 1)) {
        s.insert(s.begin(), apex);
        simplices.push_back(std::move(s));
      }
    return simplices;
  };

  std::vector<std::size_t> all(pts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Rational total = 0;
  for (const auto& simplex : triangulate(all, static_cast<long>(n))) {
    std::vector<RationalVector> rows;
    for (std::size_t i = 1; i < simplex.size(); ++i) rows.push_back(difference(pts[simplex[i]], pts[simplex[0]]));
    total += abs(rational_det(std::move(rows)));
  }
  return total;
}

Rational relative_degree_on_P(const ProjectiveDivisorData& d) {
  if (d.fiber_dim == 0) throw std::invalid_argument("fiber dimension must be positive");
  if (d.polarization < 1) throw std::invalid_argument("polarization degree must be at least 1");
  Integer k = 0;
  for (const auto& deg : d.horizontal_degrees) k += deg;
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), d.polarization.get_mpz_t(), d.fiber_dim - 1);
  return Rational(k * power);
}

Rational relative_volume_on_P(const ProjectiveDivisorData& d) {
  if (d.fiber_dim == 0) throw std::invalid_argument("fiber dimension must be positive");
  Integer k = 0;
  for (const auto& deg : d.horizontal_degrees) k += deg;
  if (sgn(k) < 0) return 0;
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), k.get_mpz_t(), d.fiber_dim);
  return Rational(power);
}

}  // namespace torictower
