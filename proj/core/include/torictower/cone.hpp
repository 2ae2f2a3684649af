#pragma once

// Rational polyhedral cones and fans.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torictower/lattice.hpp"

namespace torictower {

/// H/V duality data of a cone: the dual cone is cone(rays) + span(lineality).
/// Both lists are canonical (primitive, lexicographically sorted; the
/// lineality basis is the primitive RREF basis, rays are reduced into its
/// orthogonal complement).
struct DualDescription {
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> lineality;
};

/// Cone spanned by a finite list of lattice vectors. Facet data is computed
/// on first use and shared between copies.
class Cone {
 public:
  Cone();
  /// Stores generators as given (no normalization); use `from_rays` for the
  /// canonical form.
  Cone(std::size_t ambient_dim, std::vector<LatticeVector> generators);

  /// Primitivizes, deduplicates and sorts the generators.
  static Cone from_rays(std::size_t ambient_dim, const std::vector<LatticeVector>& rays);
  static Cone zero(std::size_t ambient_dim) { return Cone(ambient_dim, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<LatticeVector>& generators() const { return generators_; }
  /// Dimension of the linear span.
  std::size_t dim() const;

  /// Dual description (cached).
  const DualDescription& dual_description() const;
  /// All inequalities n with <n, v> >= 0 cutting out the cone, lineality
  /// directions included in both signs.
  std::vector<LatticeVector> facet_normals() const;

  bool contains(const LatticeVector& v) const;
  bool is_strongly_convex() const;

  /// Faces as sorted index sets into generators(), the cone itself included.
  /// Only meaningful when every generator spans an extreme ray.
  std::vector<std::vector<std::size_t>> faces() const;
  /// Facets (codimension one faces within the span) as index sets.
  std::vector<std::vector<std::size_t>> facets() const;

  Cone sub_cone(const std::vector<std::size_t>& indices) const;

  /// Equality of generator sets (order-insensitive).
  friend bool operator==(const Cone& a, const Cone& b);
  friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }
  friend bool operator<(const Cone& a, const Cone& b);

  std::string to_string() const;

 private:
  struct Cache;
  std::size_t ambient_dim_ = 0;
  std::vector<LatticeVector> generators_;
  std::shared_ptr<Cache> cache_;
};

/// The dual cone {m : <m, v> >= 0 for all v in c}, computed by exact double
/// description. Generators are the primitive extreme rays followed by both
/// signs of a lineality basis, sorted lexicographically.
Cone dual_cone(const Cone& c);

/// Double description of {x : <a, x> >= 0 for all a in constraints}.
DualDescription double_description(const std::vector<LatticeVector>& constraints, std::size_t dim);

bool cone_contains(const Cone& c, const LatticeVector& v);

/// Intersection of two cones in the same ambient space.
Cone intersect(const Cone& a, const Cone& b);

/// True iff `face` is a face of `c` (both given by generators).
bool is_face_of(const Cone& face, const Cone& c);

struct Violation {
  std::string kind;
  std::string message;
  std::string witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string kind, std::string message, std::string witness = {}) {
    violations.push_back({std::move(kind), std::move(message), std::move(witness)});
  }
};

/// A fan stored by its maximal cones. Faces are derived on demand.
class Fan {
 public:
  Fan() = default;
  /// Sorts maximal cones and collects all_rays. Cones are kept as given.
  Fan(std::size_t ambient_dim, std::vector<Cone> maximal_cones);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Cone>& maximal_cones() const { return maximal_cones_; }
  const std::vector<LatticeVector>& all_rays() const { return all_rays_; }

  /// Every cone of the fan (faces of maximal cones, deduplicated), sorted by
  /// dimension and then lexicographically.
  std::vector<Cone> all_cones() const;
  bool has_cone(const Cone& c) const;

  /// Index of the first maximal cone containing v.
  std::optional<std::size_t> find_containing_cone(const LatticeVector& v) const;
  bool support_contains(const LatticeVector& v) const { return find_containing_cone(v).has_value(); }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.maximal_cones_ == b.maximal_cones_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Cone> maximal_cones_;
  std::vector<LatticeVector> all_rays_;
};

/// Fan of affine space A^n: the positive orthant and its faces.
Fan affine_space_fan(std::size_t n);
/// Fan of projective space P^n: rays e_1..e_n and -(e_1+...+e_n).
Fan projective_space_fan(std::size_t n);
/// Product fan in N1 + N2.
Fan product_fan(const Fan& a, const Fan& b);

/// Reports non-primitive rays, non-strongly-convex cones and pairs of
/// maximal cones meeting in something other than a common face.
ValidationReport fan_validate(const Fan& f);

}  // namespace torictower
