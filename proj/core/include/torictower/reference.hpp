#pragma once

// Brute-force reference computations. They share no code path with the
// production algorithms (no HNF/SNF, no double description) and exist to
// cross-check them in tests and in the verify harness. Small inputs only.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "torictower/lattice.hpp"

namespace torictower::reference {

using Small2x2 = std::array<std::int64_t, 4>;  // row-major

/// Row Hermite normal form of a 2x2 matrix found by searching all
/// unimodular U with entries in [-bound, bound] for one making U*m normal.
std::optional<Small2x2> hnf_by_search(const Small2x2& m, std::int64_t bound = 12);

/// Laplace-expansion determinant.
Integer laplace_determinant(const std::vector<std::vector<Integer>>& m);

/// Invariant factors d_k = g_k / g_{k-1}, g_k the gcd of all k x k minors.
std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m);

/// v in cone(gens) iff v is a non-negative combination of some linearly
/// independent subset of gens (Caratheodory), each tried by Cramer's rule.
bool caratheodory_contains(const std::vector<LatticeVector>& gens, const LatticeVector& v);

/// Facet normals of a full-dimensional cone by enumerating (n-1)-subsets of
/// generators. Primitive, sorted.
std::vector<LatticeVector> facet_normals_by_enumeration(const std::vector<LatticeVector>& gens, std::size_t dim);

/// sum alpha_i (1 - b_i) with e = sum alpha_i u_i for linearly independent
/// rays u_i; nullopt if e is not in their span.
std::optional<Rational> simplicial_log_discrepancy(const std::vector<LatticeVector>& rays,
                                                   const std::vector<Rational>& boundary, const LatticeVector& e);

/// Coefficients alpha with e = sum alpha_i u_i (independent u_i), by Cramer.
std::optional<std::vector<Rational>> cramer_coefficients(const std::vector<LatticeVector>& rays,
                                                         const LatticeVector& e);

}  // namespace torictower::reference
