#pragma once

// Special toric towers (V_d, C_d) -> ... -> (V_1, C_1) over V_1 = A^p.
//
// Lattice conventions: N_i = Z^{p+i-1} with coordinates ordered
// (t_1, ..., t_p, alpha_2, ..., alpha_i). The projection N_i -> N_{i-1}
// forgets the last coordinate. A node move at level i with character
// lambda_i = alpha_2^{m_2} ... alpha_{i-1}^{m_{i-1}} t_1^{n_1} ... t_p^{n_p}
// uses the M_{i-1} vector (n_1, ..., n_p, m_2, ..., m_{i-1}).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torictower/cone.hpp"
#include "torictower/lattice.hpp"
#include "torictower/toric.hpp"

namespace torictower {

/// V_i = V_{i-1} x A^1, boundary gains the section alpha_i = 0.
struct ProductMove {
  friend bool operator==(const ProductMove&, const ProductMove&) = default;
};

/// V_i = {alpha_i alpha_i' = lambda_i} over the locus where lambda_i is regular.
struct NodeMove {
  std::vector<Integer> alpha_exponents;  // m_2 .. m_{i-1}
  std::vector<Integer> t_exponents;      // n_1 .. n_p

  /// The character as an element of M_{i-1} (t exponents first).
  Character character() const;
  friend bool operator==(const NodeMove&, const NodeMove&) = default;
};

using Move = std::variant<ProductMove, NodeMove>;

struct TowerSpec {
  std::size_t base_dim = 1;
  std::vector<Move> moves;

  /// Number of levels d (moves + 1).
  std::size_t levels() const { return moves.size() + 1; }
  friend bool operator==(const TowerSpec&, const TowerSpec&) = default;
};

struct TowerLevel {
  Fan fan;                     // in N_i
  IntMatrix projection;        // N_i -> N_{i-1}; 0 x p for level 1
  ToricDivisor boundary;       // C_i
  std::optional<Move> move;    // move producing this level; empty for level 1
};

struct TowerModel {
  std::size_t base_dim = 1;
  std::vector<TowerLevel> levels;  // levels[0] is V_1 = A^p

  const TowerLevel& level(std::size_t i) const { return levels.at(i - 1); }
  std::size_t rank(std::size_t i) const { return base_dim + i - 1; }
};

/// The combinatorial shadow of a morphism (Z_1, E_1) -> (V_1, C_1) from a
/// smooth curve germ: vanishing orders of t_1..t_p at z_1 and whether z_1
/// lies on E_1.
struct CurveGermData {
  std::vector<std::int64_t> orders;
  bool on_boundary = true;
};

struct LocalModelDescriptor {
  enum class Kind { smooth_plain, smooth_on_section, node };
  Kind kind = Kind::smooth_plain;
  std::optional<Character> lambda;  // set for node

  friend bool operator==(const LocalModelDescriptor&, const LocalModelDescriptor&) = default;
};

std::string to_string(LocalModelDescriptor::Kind kind);

/// (P = P^{d-1} x A^p, G) with the torus identification N_d = N_P.
struct ProjectiveModel {
  Fan fan;
  IntMatrix identification;  // N_d -> N_P
  ToricDivisor boundary;     // G
};

struct CheckReport {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::vector<Violation> violations;
  std::vector<std::string> skip_reasons;

  bool ok() const { return violations.empty(); }
  void merge(const CheckReport& other);
};

ValidationReport validate_tower(const TowerSpec& s);

/// Realizes every level as a fan. Throws std::invalid_argument on an invalid
/// spec and ResourceError when a ray-count or dimension cap is hit.
TowerModel build_model(const TowerSpec& s);

ProjectiveModel projective_model(const TowerSpec& s);

/// a(e, V_d, C_d) and a(e, P, G) for the given valuations; both must vanish.
/// Vectors outside |Sigma_{V_d}| are skipped.
CheckReport lc_place_transfer_check(const TowerModel& model, const ProjectiveModel& proj,
                                    const std::vector<LatticeVector>& valuations);

/// Checks every level-d ray plus `samples` seeded random primitive vectors
/// drawn from the relative interiors of maximal cones.
CheckReport lc_place_transfer_check(const TowerSpec& s, std::size_t samples, std::uint64_t seed);

/// Seeded sample of primitive vectors in |f|: random positive integer
/// combinations (coefficients 1..10) of the rays of a random maximal cone.
std::vector<LatticeVector> sample_support_vectors(const Fan& f, std::size_t count, std::uint64_t seed);

TowerSpec base_change_to_curve(const TowerSpec& s, const CurveGermData& g);

/// Classifies the orbit of `cone` (a cone of the level-i fan, i >= 2)
/// relative to V_i -> V_{i-1}.
LocalModelDescriptor local_model_at(const TowerModel& m, std::size_t level, const Cone& cone);

CheckReport torus_splitting_check(const TowerModel& m);

/// For a node move: dual(sigma~) == cone(sigma^dual x 0, e_new, (m, -1)) on
/// every maximal cone of the level. Vacuous for product moves.
CheckReport node_chart_check(const TowerModel& m);

}  // namespace torictower
