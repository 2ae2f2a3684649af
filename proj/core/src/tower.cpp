#include "torictower/tower.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "torictower/random.hpp"

namespace torictower {

Character NodeMove::character() const {
  std::vector<Integer> e = t_exponents;
  e.insert(e.end(), alpha_exponents.begin(), alpha_exponents.end());
  return Character{LatticeVector(std::move(e))};
}

std::string to_string(LocalModelDescriptor::Kind kind) {
  switch (kind) {
    case LocalModelDescriptor::Kind::smooth_plain:
      return "smooth_plain";
    case LocalModelDescriptor::Kind::smooth_on_section:
      return "smooth_on_section";
    case LocalModelDescriptor::Kind::node:
      return "node";
  }
  return "unknown";
}

void CheckReport::merge(const CheckReport& other) {
  checked += other.checked;
  passed += other.passed;
  skipped += other.skipped;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  skip_reasons.insert(skip_reasons.end(), other.skip_reasons.begin(), other.skip_reasons.end());
}

ValidationReport validate_tower(const TowerSpec& s) {
  ValidationReport report;
  if (s.base_dim == 0) report.add("base-dim", "base dimension must be positive");
  for (std::size_t k = 0; k < s.moves.size(); ++k) {
    const auto* node = std::get_if<NodeMove>(&s.moves[k]);
    if (!node) continue;
    const std::size_t level = k + 2;
    const std::string where = "moves[" + std::to_string(k) + "]";
    if (node->alpha_exponents.size() != level - 2) {
      report.add("alpha-arity",
                 where + ": alpha_exponents has " + std::to_string(node->alpha_exponents.size()) +
                     " entries but level " + std::to_string(level - 1) + " has " + std::to_string(level - 2) +
                     " alpha variables",
                 where);
    }
    if (node->t_exponents.size() != s.base_dim) {
      report.add("t-arity",
                 where + ": t_exponents has " + std::to_string(node->t_exponents.size()) +
                     " entries but the base has " + std::to_string(s.base_dim) + " variables",
                 where);
    }
  }
  return report;
}

namespace {

void require_valid(const TowerSpec& s) {
  auto report = validate_tower(s);
  if (report.ok()) return;
  std::string msg = "invalid tower:";
  for (const auto& v : report.violations) msg += " " + v.message + ";";
  throw std::invalid_argument(msg);
}

IntMatrix coordinate_projection(std::size_t target, std::size_t source) {
  IntMatrix p(target, source);
  for (std::size_t i = 0; i < target && i < source; ++i) p(i, i) = 1;
  return p;
}

void check_caps(const Fan& f) {
  const auto limits = current_limits();
  if (f.ambient_dim() > limits.max_dim)
    throw ResourceError("level dimension " + std::to_string(f.ambient_dim()) + " exceeds the configured maximum " +
                        std::to_string(limits.max_dim));
  if (f.all_rays().size() > limits.max_rays)
    throw ResourceError("ray count " + std::to_string(f.all_rays().size()) + " exceeds the configured maximum " +
                        std::to_string(limits.max_rays));
}

Fan product_level(const Fan& prev) {
  const std::size_t n = prev.ambient_dim() + 1;
  const auto e_new = LatticeVector::unit(n, n - 1);
  std::vector<Cone> cones;
  for (const auto& sigma : prev.maximal_cones()) {
    std::vector<LatticeVector> gens{e_new};
    for (const auto& u : sigma.generators()) gens.push_back(u.extended(0));
    cones.push_back(Cone::from_rays(n, gens));
  }
  return Fan(n, std::move(cones));
}

// sigma~ = {(v, t) : v in sigma, 0 <= t <= <m, v>}, spanned by (u, 0) and
// (u, <m, u>) over the rays u of sigma.
Fan node_level(const Fan& prev, const Character& lambda) {
  const std::size_t n = prev.ambient_dim() + 1;
  const Fan regular = regularity_subfan(prev, lambda);
  std::set<Cone> cones;
  for (const auto& sigma : regular.maximal_cones()) {
    std::vector<LatticeVector> gens;
    for (const auto& u : sigma.generators()) {
      gens.push_back(u.extended(0));
      Integer h = dot(lambda.exponents, u);
      if (sgn(h) > 0) gens.push_back(u.extended(h));
    }
    cones.insert(Cone::from_rays(n, gens));
  }
  return Fan(n, {cones.begin(), cones.end()});
}

}  // namespace

TowerModel build_model(const TowerSpec& s) {
  require_valid(s);
  TowerModel model;
  model.base_dim = s.base_dim;
  {
    TowerLevel base;
    base.fan = affine_space_fan(s.base_dim);
    check_caps(base.fan);
    base.projection = IntMatrix(0, s.base_dim);
    base.boundary = boundary_divisor(base.fan);
    model.levels.push_back(std::move(base));
  }
  for (const auto& move : s.moves) {
    const Fan& prev = model.levels.back().fan;
    TowerLevel level;
    if (std::holds_alternative<ProductMove>(move)) {
      level.fan = product_level(prev);
    } else {
      level.fan = node_level(prev, std::get<NodeMove>(move).character());
    }
    check_caps(level.fan);
    level.projection = coordinate_projection(prev.ambient_dim(), level.fan.ambient_dim());
    level.boundary = boundary_divisor(level.fan);
    level.move = move;
    model.levels.push_back(std::move(level));
  }
  return model;
}

ProjectiveModel projective_model(const TowerSpec& s) {
  require_valid(s);
  const std::size_t fiber = s.moves.size();
  ProjectiveModel pm;
  pm.fan = fiber == 0 ? affine_space_fan(s.base_dim)
                      : product_fan(affine_space_fan(s.base_dim), projective_space_fan(fiber));
  pm.identification = IntMatrix::identity(s.base_dim + fiber);
  pm.boundary = boundary_divisor(pm.fan);
  return pm;
}

std::vector<LatticeVector> sample_support_vectors(const Fan& f, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LatticeVector> out;
  const auto& cones = f.maximal_cones();
  if (cones.empty()) return out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& cone = cones[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cones.size()) - 1))];
    if (cone.generators().empty()) continue;
    LatticeVector v(f.ambient_dim());
    for (const auto& g : cone.generators()) v += Integer(rng.uniform(1, 10)) * g;
    out.push_back(primitive(v));
  }
  return out;
}

CheckReport lc_place_transfer_check(const TowerModel& model, const ProjectiveModel& proj,
                                    const std::vector<LatticeVector>& valuations) {
  CheckReport report;
  const auto& top = model.levels.back();
  auto cd_v = cartier_data(top.fan, canonical_divisor(top.fan) + top.boundary);
  auto cd_p = cartier_data(proj.fan, canonical_divisor(proj.fan) + proj.boundary);
  if (!succeeded(cd_v) || !succeeded(cd_p)) {
    report.violations.push_back({"not-q-cartier", "K + boundary is not Q-Cartier", ""});
    return report;
  }
  for (const auto& e : valuations) {
    ++report.checked;
    auto a_v = log_discrepancy(top.fan, std::get<CartierData>(cd_v), e);
    if (!succeeded(a_v)) {
      ++report.skipped;
      report.skip_reasons.push_back("no centre on V_d: " + e.to_string());
      continue;
    }
    auto a_p = log_discrepancy(proj.fan, std::get<CartierData>(cd_p), proj.identification.apply(e));
    if (!succeeded(a_p)) {
      report.violations.push_back({"no-centre-on-P", "valuation has no centre on P", e.to_string()});
      continue;
    }
    const Rational& lhs = std::get<LogDiscrepancy>(a_v).value;
    const Rational& rhs = std::get<LogDiscrepancy>(a_p).value;
    if (sgn(lhs) != 0 || sgn(rhs) != 0) {
      std::ostringstream msg;
      msg << "log discrepancies " << lhs << " on V_d and " << rhs << " on P, expected 0";
      report.violations.push_back({"not-lc-place", msg.str(), e.to_string()});
      continue;
    }
    ++report.passed;
  }
  return report;
}

CheckReport lc_place_transfer_check(const TowerSpec& s, std::size_t samples, std::uint64_t seed) {
  const TowerModel model = build_model(s);
  const ProjectiveModel proj = projective_model(s);
  const Fan& top = model.levels.back().fan;
  std::vector<LatticeVector> valuations = top.all_rays();
  auto sampled = sample_support_vectors(top, samples, seed);
  valuations.insert(valuations.end(), sampled.begin(), sampled.end());
  return lc_place_transfer_check(model, proj, valuations);
}

TowerSpec base_change_to_curve(const TowerSpec& s, const CurveGermData& g) {
  require_valid(s);
  if (g.orders.size() != s.base_dim)
    throw std::invalid_argument("curve germ has " + std::to_string(g.orders.size()) + " orders but the base has " +
                                std::to_string(s.base_dim) + " variables");
  for (auto c : g.orders) {
    if (c < 0) throw std::invalid_argument("vanishing orders must be non-negative");
    if (!g.on_boundary && c != 0)
      throw std::invalid_argument("a germ off the boundary has all vanishing orders zero");
  }
  TowerSpec out;
  out.base_dim = 1;
  for (const auto& move : s.moves) {
    if (std::holds_alternative<ProductMove>(move)) {
      out.moves.emplace_back(ProductMove{});
      continue;
    }
    const auto& node = std::get<NodeMove>(move);
    Integer exponent = 0;
    for (std::size_t j = 0; j < g.orders.size(); ++j) exponent += Integer(static_cast<long>(g.orders[j])) * node.t_exponents[j];
    out.moves.emplace_back(NodeMove{node.alpha_exponents, {exponent}});
  }
  return out;
}

LocalModelDescriptor local_model_at(const TowerModel& m, std::size_t level, const Cone& cone) {
  if (level < 2) throw std::invalid_argument("base level has no fibration structure");
  if (level > m.levels.size()) throw std::out_of_range("tower has no level " + std::to_string(level));
  const auto& lvl = m.level(level);
  const Cone canonical = Cone::from_rays(cone.ambient_dim(), cone.generators());
  if (cone.ambient_dim() != lvl.fan.ambient_dim() || !lvl.fan.has_cone(canonical))
    throw std::invalid_argument(cone.to_string() + " is not a cone of the level-" + std::to_string(level) + " fan");

  const std::size_t n = lvl.fan.ambient_dim();
  LocalModelDescriptor out;
  if (std::holds_alternative<ProductMove>(*lvl.move)) {
    const auto e_new = LatticeVector::unit(n, n - 1);
    const auto& gens = canonical.generators();
    out.kind = std::find(gens.begin(), gens.end(), e_new) != gens.end() ? LocalModelDescriptor::Kind::smooth_on_section
                                                                        : LocalModelDescriptor::Kind::smooth_plain;
    return out;
  }
  const Character lambda = std::get<NodeMove>(*lvl.move).character();
  // alpha vanishes on the orbit iff some ray has t > 0; alpha' = lambda/alpha
  // iff some ray has t < <m, v>.
  bool alpha_vanishes = false, alpha_prime_vanishes = false;
  for (const auto& g : canonical.generators()) {
    const Integer& t = g[n - 1];
    const Integer h = dot(lambda.exponents, g.truncated());
    if (sgn(t) > 0) alpha_vanishes = true;
    if (h > t) alpha_prime_vanishes = true;
  }
  if (alpha_vanishes && alpha_prime_vanishes) {
    out.kind = LocalModelDescriptor::Kind::node;
    out.lambda = lambda;
  }
  return out;
}

CheckReport torus_splitting_check(const TowerModel& m) {
  CheckReport report;
  auto record = [&](bool ok, const std::string& kind, const std::string& msg, const std::string& witness) {
    ++report.checked;
    if (ok) {
      ++report.passed;
    } else {
      report.violations.push_back({kind, msg, witness});
    }
  };
  for (std::size_t i = 2; i <= m.levels.size(); ++i) {
    const auto& prev = m.level(i - 1);
    const auto& cur = m.level(i);
    const std::string where = "level " + std::to_string(i);
    const std::size_t n_prev = prev.fan.ambient_dim();
    const std::size_t n = cur.fan.ambient_dim();
    const auto& proj = cur.projection;

    record(n == n_prev + 1, "rank", where + ": rank N_i must be rank N_{i-1} + 1",
           std::to_string(n_prev) + " -> " + std::to_string(n));
    const bool shape = proj.rows() == n_prev && proj.cols() == n;
    record(shape && proj == coordinate_projection(n_prev, n), "projection",
           where + ": projection is not the coordinate projection", proj.to_string());
    if (!shape) continue;
    record(n - rank(proj) == 1, "kernel", where + ": projection kernel is not of rank one", proj.to_string());

    for (const auto& cone : cur.fan.maximal_cones()) {
      std::vector<LatticeVector> images;
      for (const auto& g : cone.generators()) images.push_back(proj.apply(g));
      bool lands = std::any_of(prev.fan.maximal_cones().begin(), prev.fan.maximal_cones().end(), [&](const Cone& c) {
        return std::all_of(images.begin(), images.end(), [&](const LatticeVector& w) { return c.contains(w); });
      });
      record(lands, "cone-image", where + ": cone does not project into a cone of the level below", cone.to_string());
    }

    std::vector<LatticeVector> fiber_rays;
    for (const auto& r : cur.fan.all_rays())
      if (proj.apply(r).is_zero()) fiber_rays.push_back(r);
    std::string witness;
    for (const auto& r : fiber_rays) witness += r.to_string();
    record(fiber_rays.size() <= 1, "fiber", where + ": fiber over the torus has more than one ray", witness);
  }
  return report;
}

CheckReport node_chart_check(const TowerModel& m) {
  CheckReport report;
  for (std::size_t i = 2; i <= m.levels.size(); ++i) {
    const auto& lvl = m.level(i);
    const auto* node = std::get_if<NodeMove>(&*lvl.move);
    if (!node) continue;
    const Character lambda = node->character();
    const std::size_t n = lvl.fan.ambient_dim();
    for (const auto& tilde : lvl.fan.maximal_cones()) {
      ++report.checked;
      std::vector<LatticeVector> base;
      for (const auto& g : tilde.generators()) base.push_back(g.truncated());
      const Cone sigma = Cone::from_rays(n - 1, base);
      std::vector<LatticeVector> semigroup{LatticeVector::unit(n, n - 1), lambda.exponents.extended(-1)};
      const Cone sigma_dual = dual_cone(sigma);
      for (const auto& w : sigma_dual.generators()) semigroup.push_back(w.extended(0));
      const Cone presented(n, semigroup);
      const Cone dual = dual_cone(tilde);
      bool same = std::all_of(dual.generators().begin(), dual.generators().end(),
                              [&](const LatticeVector& v) { return presented.contains(v); }) &&
                  std::all_of(semigroup.begin(), semigroup.end(), [&](const LatticeVector& v) { return dual.contains(v); });
      if (same) {
        ++report.passed;
      } else {
        report.violations.push_back({"node-chart", "dual of the chart cone differs from the semigroup presentation",
                                     "level " + std::to_string(i) + " " + tilde.to_string()});
      }
    }
  }
  return report;
}

}  // namespace torictower
