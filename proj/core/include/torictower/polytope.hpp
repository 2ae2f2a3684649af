#pragma once

// Polytopes of toric divisors and relative degrees/volumes on
// projective-space fibers.

#include <cstddef>
#include <vector>

#include "torictower/cone.hpp"
#include "torictower/lattice.hpp"
#include "torictower/toric.hpp"

namespace torictower {

class LatticePolytope {
 public:
  LatticePolytope() = default;
  /// Keeps only the vertices of the convex hull of `points`.
  static LatticePolytope from_points(std::size_t ambient_dim, const std::vector<RationalVector>& points);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }
  /// Dimension of the affine hull (-1 for the empty polytope).
  long dim() const;

  /// Facets as index sets into vertices(). Requires a full-dimensional polytope.
  std::vector<std::vector<std::size_t>> facets() const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<RationalVector> vertices_;
};

/// P_D = {m : <m, u_i> >= -d_i for every ray u_i}.
Result<LatticePolytope> divisor_polytope(const Fan& f, const ToricDivisor& d);

/// n! times the Euclidean volume, via a pulling triangulation. Zero for
/// polytopes that are not full-dimensional.
Rational normalized_volume(const LatticePolytope& p);

/// D restricted to a P^n fiber, written in hyperplane classes.
struct ProjectiveDivisorData {
  std::size_t fiber_dim = 1;
  std::vector<Integer> horizontal_degrees;  // hyperplane degree of each horizontal component
  bool has_vertical_part = false;           // vertical components carry no degree
  Integer polarization = 1;                 // A = a * hyperplane, a >= 1
};

/// (D|_F) . (A|_F)^{n-1}
Rational relative_degree_on_P(const ProjectiveDivisorData& d);
/// vol(D|_F) = k^n for D|_F = O(k), k >= 0; zero for k < 0.
Rational relative_volume_on_P(const ProjectiveDivisorData& d);

}  // namespace torictower
