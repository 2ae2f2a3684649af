#pragma once

// Toric divisors on fans: boundary and canonical divisors, principal
// divisors of characters, Cartier data, pullbacks and log discrepancies.
//
// Sign convention: Cartier data stores, per maximal cone sigma, a vector
// m_sigma in M_Q with <m_sigma, u_i> = d_i on every ray u_i of sigma. The
// support function is phi_D = -<m_sigma, .> on sigma, so phi_D(u_i) = -d_i.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "torictower/cone.hpp"
#include "torictower/lattice.hpp"

namespace torictower {

/// A character t^m of the torus, m in the character lattice M.
struct Character {
  LatticeVector exponents;

  bool is_trivial() const { return exponents.is_zero(); }
  friend bool operator==(const Character&, const Character&) = default;
};

/// Torus-invariant Q-divisor: rational coefficients keyed by primitive ray.
/// Omitted rays carry coefficient zero.
class ToricDivisor {
 public:
  ToricDivisor() = default;
  explicit ToricDivisor(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}
  ToricDivisor(std::size_t ambient_dim, std::map<LatticeVector, Rational> coefficients);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::map<LatticeVector, Rational>& coefficients() const { return coefficients_; }
  Rational coefficient(const LatticeVector& ray) const;
  void set(const LatticeVector& ray, const Rational& value);
  bool is_zero() const { return coefficients_.empty(); }

  ToricDivisor& operator+=(const ToricDivisor& other);
  friend ToricDivisor operator+(ToricDivisor a, const ToricDivisor& b) { return a += b; }
  friend ToricDivisor operator*(const Rational& k, const ToricDivisor& d);
  friend ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b) { return a + Rational(-1) * b; }

  friend bool operator==(const ToricDivisor& a, const ToricDivisor& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.coefficients_ == b.coefficients_;
  }

  std::string to_string() const;

 private:
  std::size_t ambient_dim_ = 0;
  std::map<LatticeVector, Rational> coefficients_;  // zero coefficients are never stored
};

/// Per maximal cone (parallel to Fan::maximal_cones) a vector m_sigma with
/// <m_sigma, u_i> = d_i, and the least q > 0 making q*D Cartier.
struct CartierData {
  std::vector<RationalVector> local_data;
  Integer index = 1;

  bool is_cartier() const { return index == 1; }
};

enum class FailureKind { not_q_cartier, no_centre, unbounded };

/// Structured failure returned in place of a value; never thrown.
struct Failure {
  FailureKind kind;
  std::string message;
};

template <class T>
using Result = std::variant<T, Failure>;

template <class T>
bool succeeded(const Result<T>& r) {
  return std::holds_alternative<T>(r);
}

/// Thrown when a lattice map does not send cones into cones.
class FanCompatibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ToricDivisor boundary_divisor(const Fan& f);
ToricDivisor canonical_divisor(const Fan& f);
/// Div(chi^m): coefficient <m, u_i> on every ray.
ToricDivisor character_divisor(const Fan& f, const Character& chi);

Result<CartierData> cartier_data(const Fan& f, const ToricDivisor& d);

/// Pullback along the lattice map `map` (target_dim x source_dim) from the
/// source fan to the target fan.
Result<ToricDivisor> pullback_divisor(const IntMatrix& map, const Fan& source, const Fan& target,
                                      const ToricDivisor& d);

struct LogDiscrepancy {
  Rational value;
  LatticeVector valuation;  // primitive vector actually evaluated
  Integer normalization;    // input = normalization * valuation
  std::size_t cone_index;   // maximal cone used for evaluation
};

/// a(E_e, X_f, B) for the toric valuation e. Non-primitive e is normalized
/// first; the factor is reported back.
Result<LogDiscrepancy> log_discrepancy(const Fan& f, const ToricDivisor& b, const LatticeVector& e);
/// Same, with precomputed Cartier data of K + B.
Result<LogDiscrepancy> log_discrepancy(const Fan& f, const CartierData& canonical_plus_boundary,
                                       const LatticeVector& e);

/// Subfan of cones on which chi is regular (<m, u> >= 0 on every ray).
Fan regularity_subfan(const Fan& f, const Character& chi);

/// Star subdivision of f at the primitive vector v in its support.
Fan star_subdivide(const Fan& f, const LatticeVector& v);

}  // namespace torictower
