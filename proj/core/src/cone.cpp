#include "torictower/cone.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace torictower {

struct Cone::Cache {
  std::once_flag once;
  DualDescription dual;
};

namespace {

void check_dim(std::size_t dim) {
  const auto limits = current_limits();
  if (dim > limits.max_dim) {
    throw ResourceError("ambient dimension " + std::to_string(dim) + " exceeds the configured maximum " +
                        std::to_string(limits.max_dim));
  }
}

std::vector<LatticeVector> sorted_unique(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Reduce each ray into the orthogonal complement of the lineality space so the
// representatives do not depend on the elimination order.
std::vector<LatticeVector> reduce_modulo(const std::vector<LatticeVector>& rays,
                                         const std::vector<LatticeVector>& lineality, std::size_t dim) {
  if (lineality.empty()) return rays;
  const std::size_t k = lineality.size();
  std::vector<LatticeVector> gram;
  for (std::size_t i = 0; i < k; ++i) {
    LatticeVector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = dot(lineality[i], lineality[j]);
    gram.push_back(std::move(row));
  }
  std::vector<LatticeVector> out;
  for (const auto& r : rays) {
    RationalVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = dot(lineality[i], r);
    auto sol = solve_rational(gram, rhs, k);
    RationalVector proj(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      proj[c] = r[c];
      for (std::size_t i = 0; i < k; ++i) proj[c] -= sol.x[i] * Rational(lineality[i][c]);
    }
    auto p = primitive_from_rational(proj);
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

DualDescription double_description(const std::vector<LatticeVector>& constraints, std::size_t dim) {
  check_dim(dim);
  std::vector<LatticeVector> cons;
  for (const auto& a : constraints) {
    if (a.dim() != dim) throw DimensionError("constraint dimension mismatch");
    if (!a.is_zero()) cons.push_back(primitive(a));
  }
  cons = sorted_unique(std::move(cons));

  std::vector<LatticeVector> lineality;
  for (std::size_t i = 0; i < dim; ++i) lineality.push_back(LatticeVector::unit(dim, i));
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> processed;

  for (const auto& a : cons) {
    auto pivot = std::find_if(lineality.begin(), lineality.end(),
                              [&](const LatticeVector& l) { return sgn(dot(a, l)) != 0; });
    if (pivot != lineality.end()) {
      LatticeVector l0 = *pivot;
      lineality.erase(pivot);
      Integer s0 = dot(a, l0);
      if (sgn(s0) < 0) {
        l0 = -l0;
        s0 = -s0;
      }
      for (auto& l : lineality) {
        Integer s = dot(a, l);
        if (sgn(s) != 0) l = primitive(s0 * l - s * l0);
      }
      for (auto& r : rays) {
        Integer s = dot(a, r);
        if (sgn(s) != 0) r = primitive(s0 * r - s * l0);
      }
      rays.push_back(l0);
      processed.push_back(a);
      continue;
    }

    std::vector<LatticeVector> pos, zero, neg;
    std::vector<Integer> pos_val, neg_val;
    for (const auto& r : rays) {
      Integer s = dot(a, r);
      if (sgn(s) > 0) {
        pos.push_back(r);
        pos_val.push_back(s);
      } else if (sgn(s) < 0) {
        neg.push_back(r);
        neg_val.push_back(s);
      } else {
        zero.push_back(r);
      }
    }
    std::vector<LatticeVector> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    if (!pos.empty() && !neg.empty()) {
      const long target = static_cast<long>(dim) - static_cast<long>(lineality.size()) - 2;
      auto tight = [&](const LatticeVector& r) {
        std::vector<bool> t(processed.size());
        for (std::size_t i = 0; i < processed.size(); ++i) t[i] = sgn(dot(processed[i], r)) == 0;
        return t;
      };
      std::vector<std::vector<bool>> pos_tight, neg_tight;
      for (const auto& r : pos) pos_tight.push_back(tight(r));
      for (const auto& r : neg) neg_tight.push_back(tight(r));
      for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = 0; j < neg.size(); ++j) {
          std::vector<LatticeVector> common;
          for (std::size_t k = 0; k < processed.size(); ++k)
            if (pos_tight[i][k] && neg_tight[j][k]) common.push_back(processed[k]);
          if (static_cast<long>(common.size()) < target) continue;
          if (static_cast<long>(rank(common, dim)) != target) continue;
          next.push_back(primitive(pos_val[i] * neg[j] - neg_val[j] * pos[i]));
        }
      }
    }
    rays = sorted_unique(std::move(next));
    processed.push_back(a);
  }

  DualDescription out;
  out.lineality = canonical_span_basis(lineality, dim);
  out.rays = sorted_unique(reduce_modulo(rays, out.lineality, dim));
  return out;
}

// ---------------------------------------------------------------------------
// Cone

Cone::Cone() : cache_(std::make_shared<Cache>()) {}

Cone::Cone(std::size_t ambient_dim, std::vector<LatticeVector> generators)
    : ambient_dim_(ambient_dim), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : generators_) {
    if (g.dim() != ambient_dim_) throw DimensionError("cone generator dimension mismatch");
  }
}

Cone Cone::from_rays(std::size_t ambient_dim, const std::vector<LatticeVector>& rays) {
  std::vector<LatticeVector> prim;
  for (const auto& r : rays) {
    if (r.dim() != ambient_dim) throw DimensionError("cone generator dimension mismatch");
    if (!r.is_zero()) prim.push_back(primitive(r));
  }
  return Cone(ambient_dim, sorted_unique(std::move(prim)));
}

std::size_t Cone::dim() const { return rank(generators_, ambient_dim_); }

const DualDescription& Cone::dual_description() const {
  std::call_once(cache_->once, [this] { cache_->dual = double_description(generators_, ambient_dim_); });
  return cache_->dual;
}

std::vector<LatticeVector> Cone::facet_normals() const {
  const auto& d = dual_description();
  std::vector<LatticeVector> normals = d.rays;
  for (const auto& l : d.lineality) {
    normals.push_back(l);
    normals.push_back(-l);
  }
  return normals;
}

bool Cone::contains(const LatticeVector& v) const {
  if (v.dim() != ambient_dim_) throw DimensionError("containment test dimension mismatch");
  const auto& d = dual_description();
  for (const auto& n : d.rays)
    if (sgn(dot(n, v)) < 0) return false;
  for (const auto& l : d.lineality)
    if (sgn(dot(l, v)) != 0) return false;
  return true;
}

bool Cone::is_strongly_convex() const {
  const auto& d = dual_description();
  std::vector<LatticeVector> all = d.rays;
  all.insert(all.end(), d.lineality.begin(), d.lineality.end());
  return rank(all, ambient_dim_) == ambient_dim_;
}

std::vector<std::vector<std::size_t>> Cone::facets() const {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& n : dual_description().rays) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (sgn(dot(n, generators_[i])) == 0) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> Cone::faces() const {
  std::vector<std::size_t> all(generators_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto facet_sets = facets();
  std::set<std::vector<std::size_t>> seen{all};
  std::vector<std::vector<std::size_t>> queue{all};
  while (!queue.empty()) {
    auto f = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : facet_sets) {
      std::vector<std::size_t> meet;
      std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(meet));
      if (seen.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  return {seen.begin(), seen.end()};
}

Cone Cone::sub_cone(const std::vector<std::size_t>& indices) const {
  std::vector<LatticeVector> gens;
  for (auto i : indices) gens.push_back(generators_.at(i));
  return Cone(ambient_dim_, std::move(gens));
}

bool operator==(const Cone& a, const Cone& b) {
  if (a.ambient_dim_ != b.ambient_dim_) return false;
  return sorted_unique(a.generators_) == sorted_unique(b.generators_);
}

bool operator<(const Cone& a, const Cone& b) {
  if (a.ambient_dim_ != b.ambient_dim_) return a.ambient_dim_ < b.ambient_dim_;
  return sorted_unique(a.generators_) < sorted_unique(b.generators_);
}

std::string Cone::to_string() const {
  std::ostringstream os;
  os << "cone(";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) os << ',';
    os << generators_[i];
  }
  os << ')';
  return os.str();
}

Cone dual_cone(const Cone& c) {
  const auto& d = c.dual_description();
  std::vector<LatticeVector> gens = d.rays;
  for (const auto& l : d.lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return Cone(c.ambient_dim(), sorted_unique(std::move(gens)));
}

bool cone_contains(const Cone& c, const LatticeVector& v) { return c.contains(v); }

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersection of cones in different spaces");
  auto normals = a.facet_normals();
  auto nb = b.facet_normals();
  normals.insert(normals.end(), nb.begin(), nb.end());
  auto d = double_description(normals, a.ambient_dim());
  std::vector<LatticeVector> gens = d.rays;
  for (const auto& l : d.lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return Cone(a.ambient_dim(), sorted_unique(std::move(gens)));
}

bool is_face_of(const Cone& face, const Cone& c) {
  for (const auto& g : face.generators())
    if (!c.contains(g)) return false;
  // Smallest face of c containing `face`: cut by every facet normal that
  // vanishes on it.
  std::vector<LatticeVector> vanishing;
  for (const auto& n : c.dual_description().rays) {
    bool all_zero = std::all_of(face.generators().begin(), face.generators().end(),
                                [&](const LatticeVector& g) { return sgn(dot(n, g)) == 0; });
    if (all_zero) vanishing.push_back(n);
  }
  for (const auto& g : c.generators()) {
    bool on_face = std::all_of(vanishing.begin(), vanishing.end(),
                               [&](const LatticeVector& n) { return sgn(dot(n, g)) == 0; });
    if (on_face && !face.contains(g)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fan

Fan::Fan(std::size_t ambient_dim, std::vector<Cone> maximal_cones)
    : ambient_dim_(ambient_dim), maximal_cones_(std::move(maximal_cones)) {
  std::sort(maximal_cones_.begin(), maximal_cones_.end());
  std::vector<LatticeVector> rays;
  for (const auto& c : maximal_cones_) {
    if (c.ambient_dim() != ambient_dim_) throw DimensionError("fan cone dimension mismatch");
    rays.insert(rays.end(), c.generators().begin(), c.generators().end());
  }
  all_rays_ = sorted_unique(std::move(rays));
}

std::vector<Cone> Fan::all_cones() const {
  std::set<Cone> cones;
  for (const auto& c : maximal_cones_)
    for (const auto& f : c.faces()) cones.insert(Cone::from_rays(ambient_dim_, c.sub_cone(f).generators()));
  std::vector<std::pair<std::size_t, Cone>> keyed;
  for (const auto& c : cones) keyed.emplace_back(c.dim(), c);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Cone> out;
  for (auto& [d, c] : keyed) out.push_back(std::move(c));
  return out;
}

bool Fan::has_cone(const Cone& c) const {
  for (const auto& f : all_cones())
    if (f == c) return true;
  return false;
}

std::optional<std::size_t> Fan::find_containing_cone(const LatticeVector& v) const {
  for (std::size_t i = 0; i < maximal_cones_.size(); ++i)
    if (maximal_cones_[i].contains(v)) return i;
  return std::nullopt;
}

Fan affine_space_fan(std::size_t n) {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < n; ++i) rays.push_back(LatticeVector::unit(n, i));
  return Fan(n, {Cone::from_rays(n, rays)});
}

Fan projective_space_fan(std::size_t n) {
  std::vector<LatticeVector> rays;
  LatticeVector last(n);
  for (std::size_t i = 0; i < n; ++i) {
    rays.push_back(LatticeVector::unit(n, i));
    last[i] = -1;
  }
  rays.push_back(last);
  std::vector<Cone> cones;
  for (std::size_t skip = 0; skip < rays.size(); ++skip) {
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (i != skip) gens.push_back(rays[i]);
    cones.push_back(Cone::from_rays(n, gens));
  }
  return Fan(n, std::move(cones));
}

Fan product_fan(const Fan& a, const Fan& b) {
  const std::size_t n = a.ambient_dim() + b.ambient_dim();
  auto embed = [&](const LatticeVector& v, std::size_t offset) {
    LatticeVector out(n);
    for (std::size_t i = 0; i < v.dim(); ++i) out[offset + i] = v[i];
    return out;
  };
  std::vector<Cone> cones;
  for (const auto& s : a.maximal_cones())
    for (const auto& t : b.maximal_cones()) {
      std::vector<LatticeVector> gens;
      for (const auto& g : s.generators()) gens.push_back(embed(g, 0));
      for (const auto& g : t.generators()) gens.push_back(embed(g, a.ambient_dim()));
      cones.push_back(Cone::from_rays(n, gens));
    }
  return Fan(n, std::move(cones));
}

ValidationReport fan_validate(const Fan& f) {
  ValidationReport report;
  for (const auto& r : f.all_rays()) {
    if (r.is_zero()) {
      report.add("zero-ray", "zero vector listed as a ray", r.to_string());
    } else if (r.content() != 1) {
      report.add("non-primitive-ray", "non-primitive ray", r.to_string());
    }
  }
  const auto& cones = f.maximal_cones();
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const auto& g = cones[i].generators();
    if (std::adjacent_find(g.begin(), g.end()) != g.end() || sorted_unique(g).size() != g.size())
      report.add("duplicate-generator", "cone lists a generator twice", cones[i].to_string());
    if (!cones[i].is_strongly_convex())
      report.add("not-strongly-convex", "cone is not strongly convex", cones[i].to_string());
  }
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      Cone meet = intersect(cones[i], cones[j]);
      if (!is_face_of(meet, cones[i]) || !is_face_of(meet, cones[j])) {
        report.add("intersection-not-a-face", "intersection not a face",
                   cones[i].to_string() + " & " + cones[j].to_string());
      }
    }
  return report;
}

}  // namespace torictower
