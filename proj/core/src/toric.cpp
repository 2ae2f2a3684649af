#include "torictower/toric.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace torictower {

ToricDivisor::ToricDivisor(std::size_t ambient_dim, std::map<LatticeVector, Rational> coefficients)
    : ambient_dim_(ambient_dim) {
  for (auto& [ray, value] : coefficients) set(ray, value);
}

Rational ToricDivisor::coefficient(const LatticeVector& ray) const {
  auto it = coefficients_.find(ray);
  return it == coefficients_.end() ? Rational(0) : it->second;
}

void ToricDivisor::set(const LatticeVector& ray, const Rational& value) {
  if (ray.dim() != ambient_dim_) throw DimensionError("divisor ray dimension mismatch");
  if (sgn(value) == 0) {
    coefficients_.erase(ray);
  } else {
    coefficients_[ray] = value;
  }
}

ToricDivisor& ToricDivisor::operator+=(const ToricDivisor& other) {
  if (ambient_dim_ != other.ambient_dim_) throw DimensionError("divisor dimension mismatch");
  for (const auto& [ray, value] : other.coefficients_) set(ray, coefficient(ray) + value);
  return *this;
}

ToricDivisor operator*(const Rational& k, const ToricDivisor& d) {
  ToricDivisor out(d.ambient_dim_);
  for (const auto& [ray, value] : d.coefficients_) out.set(ray, k * value);
  return out;
}

std::string ToricDivisor::to_string() const {
  if (coefficients_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [ray, value] : coefficients_) {
    if (!first) os << " + ";
    first = false;
    os << value << "*D" << ray;
  }
  return os.str();
}

ToricDivisor boundary_divisor(const Fan& f) {
  ToricDivisor d(f.ambient_dim());
  for (const auto& r : f.all_rays()) d.set(r, 1);
  return d;
}

ToricDivisor canonical_divisor(const Fan& f) {
  ToricDivisor d(f.ambient_dim());
  for (const auto& r : f.all_rays()) d.set(r, -1);
  return d;
}

ToricDivisor character_divisor(const Fan& f, const Character& chi) {
  if (chi.exponents.dim() != f.ambient_dim()) throw DimensionError("character dimension mismatch");
  ToricDivisor d(f.ambient_dim());
  for (const auto& r : f.all_rays()) d.set(r, Rational(dot(chi.exponents, r)));
  return d;
}

namespace {

struct LocalSolution {
  bool solvable = false;
  RationalVector m;
  Integer index = 1;
};

// Solve <m, u_i> = d_i over Q via the Smith form of the ray matrix, and read
// off the least q with q*m integral for some solution.
LocalSolution solve_on_cone(const Cone& cone, const ToricDivisor& d) {
  const std::size_t n = cone.ambient_dim();
  const auto& rays = cone.generators();
  const std::size_t k = rays.size();
  LocalSolution out;
  if (k == 0) {
    out.solvable = true;
    out.m.assign(n, 0);
    return out;
  }
  IntMatrix a = IntMatrix::from_rows(rays, n);
  SmithForm s = snf(a);
  RationalVector c(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) c[i] += Rational(s.left(i, j)) * d.coefficient(rays[j]);
  RationalVector y(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const bool pivot = i < n && sgn(s.diagonal(i, i)) != 0;
    if (!pivot) {
      if (sgn(c[i]) != 0) return out;
      continue;
    }
    y[i] = c[i] / Rational(s.diagonal(i, i));
    y[i].canonicalize();
    mpz_lcm(out.index.get_mpz_t(), out.index.get_mpz_t(), y[i].get_den_mpz_t());
  }
  out.m.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) out.m[r] += Rational(s.right(r, j)) * y[j];
  // Unique only modulo the annihilator of the cone's span.
  out.solvable = true;
  return out;
}

void check_keys(const Fan& f, const ToricDivisor& d) {
  if (d.ambient_dim() != f.ambient_dim()) throw DimensionError("divisor and fan dimensions differ");
  for (const auto& [ray, value] : d.coefficients()) {
    if (!std::binary_search(f.all_rays().begin(), f.all_rays().end(), ray))
      throw std::invalid_argument("divisor coefficient on " + ray.to_string() + " which is not a ray of the fan");
  }
}

}  // namespace

Result<CartierData> cartier_data(const Fan& f, const ToricDivisor& d) {
  check_keys(f, d);
  CartierData data;
  for (const auto& cone : f.maximal_cones()) {
    auto local = solve_on_cone(cone, d);
    if (!local.solvable) return Failure{FailureKind::not_q_cartier, "not Q-Cartier on cone " + cone.to_string()};
    mpz_lcm(data.index.get_mpz_t(), data.index.get_mpz_t(), local.index.get_mpz_t());
    data.local_data.push_back(std::move(local.m));
  }
  return data;
}

Result<ToricDivisor> pullback_divisor(const IntMatrix& map, const Fan& source, const Fan& target,
                                      const ToricDivisor& d) {
  if (map.rows() != target.ambient_dim() || map.cols() != source.ambient_dim())
    throw DimensionError("lattice map shape does not match the fans");
  auto cd = cartier_data(target, d);
  if (!succeeded(cd)) return std::get<Failure>(cd);
  const auto& data = std::get<CartierData>(cd);

  ToricDivisor out(source.ambient_dim());
  for (const auto& cone : source.maximal_cones()) {
    std::vector<LatticeVector> images;
    for (const auto& g : cone.generators()) images.push_back(map.apply(g));
    std::optional<std::size_t> host;
    for (std::size_t t = 0; t < target.maximal_cones().size() && !host; ++t) {
      const auto& tc = target.maximal_cones()[t];
      if (std::all_of(images.begin(), images.end(), [&](const LatticeVector& w) { return tc.contains(w); }))
        host = t;
    }
    if (!host) throw FanCompatibilityError("cone " + cone.to_string() + " is not mapped into any target cone");
    for (std::size_t i = 0; i < images.size(); ++i)
      out.set(cone.generators()[i], dot(data.local_data[*host], images[i]));
  }
  return out;
}

Result<LogDiscrepancy> log_discrepancy(const Fan& f, const ToricDivisor& b, const LatticeVector& e) {
  auto cd = cartier_data(f, canonical_divisor(f) + b);
  if (!succeeded(cd)) return std::get<Failure>(cd);
  return log_discrepancy(f, std::get<CartierData>(cd), e);
}

Result<LogDiscrepancy> log_discrepancy(const Fan& f, const CartierData& canonical_plus_boundary,
                                       const LatticeVector& e) {
  if (e.dim() != f.ambient_dim()) throw DimensionError("valuation dimension mismatch");
  LogDiscrepancy out;
  out.normalization = e.content();
  out.valuation = primitive(e);
  auto cone = f.find_containing_cone(out.valuation);
  if (!cone) return Failure{FailureKind::no_centre, "valuation has no centre"};
  out.cone_index = *cone;
  // a(E) = 1 - mult_E(B_W) with K_W + B_W the crepant pullback; for the
  // valuation e this is -<m_sigma, e> = phi_{K+B}(e).
  out.value = -dot(canonical_plus_boundary.local_data.at(*cone), out.valuation);
  return out;
}

Fan regularity_subfan(const Fan& f, const Character& chi) {
  if (chi.exponents.dim() != f.ambient_dim()) throw DimensionError("character dimension mismatch");
  auto regular = [&](const LatticeVector& u) { return sgn(dot(chi.exponents, u)) >= 0; };
  std::set<Cone> kept;
  for (const auto& cone : f.maximal_cones()) {
    const auto& gens = cone.generators();
    if (std::all_of(gens.begin(), gens.end(), regular)) {
      kept.insert(std::is_sorted(gens.begin(), gens.end()) ? cone : Cone::from_rays(f.ambient_dim(), gens));
      continue;
    }
    for (const auto& face : cone.faces()) {
      if (std::all_of(face.begin(), face.end(), [&](std::size_t i) { return regular(gens[i]); }))
        kept.insert(Cone::from_rays(f.ambient_dim(), cone.sub_cone(face).generators()));
    }
  }
  std::vector<Cone> maximal;
  for (const auto& c : kept) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Cone& other) {
      if (other == c || other.generators().size() <= c.generators().size()) return false;
      return std::includes(other.generators().begin(), other.generators().end(), c.generators().begin(),
                           c.generators().end());
    });
    if (!dominated) maximal.push_back(c);
  }
  return Fan(f.ambient_dim(), std::move(maximal));
}

Fan star_subdivide(const Fan& f, const LatticeVector& v) {
  const LatticeVector u = primitive(v);
  std::set<Cone> cones;
  for (const auto& cone : f.maximal_cones()) {
    const auto& gens = cone.generators();
    if (!cone.contains(u) || std::find(gens.begin(), gens.end(), u) != gens.end()) {
      cones.insert(cone);
      continue;
    }
    for (const auto& facet : cone.facets()) {
      Cone base = cone.sub_cone(facet);
      if (base.contains(u)) continue;
      auto rays = base.generators();
      rays.push_back(u);
      cones.insert(Cone::from_rays(f.ambient_dim(), rays));
    }
  }
  return Fan(f.ambient_dim(), {cones.begin(), cones.end()});
}

}  // namespace torictower
