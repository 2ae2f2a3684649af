// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "support/jacobian_oracle.hpp"
#include "torictower/io.hpp"
#include "torictower/polytope.hpp"
#include "torictower/random.hpp"
#include "torictower/reference.hpp"

using namespace torictower;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<TowerSpec> seeded_towers(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TowerSpec> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto d = static_cast<std::size_t>(rng.uniform(1, 5));
    out.push_back(io::random_tower(p, d, 3, rng.next()));
  }
  return out;
}

Outcome kernel_oracles() {
  Outcome o;
  std::size_t matrices = 0;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c)
        for (long d = -3; d <= 3; ++d) {
          const IntMatrix m{{a, b}, {c, d}};
          const auto h = hnf(m).first;
          const auto e = reference::hnf_by_search({a, b, c, d});
          const bool same = e && h(0, 0) == (*e)[0] && h(0, 1) == (*e)[1] && h(1, 0) == (*e)[2] && h(1, 1) == (*e)[3];
          o.require(same, "HNF differs from oracle on " + m.to_string());
          ++matrices;
        }
  Rng rng(1001);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    LatticeVector w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = static_cast<long>(rng.uniform(1, 3));
    const auto count = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n) + 3));
    std::vector<LatticeVector> gens;
    while (gens.size() < count) {
      LatticeVector v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<long>(rng.uniform(-3, 3));
      if (dot(w, v) > 0) gens.push_back(v);
    }
    const Cone c = dual_cone(dual_cone(Cone::from_rays(n, gens)));
    o.require(dual_cone(dual_cone(c)) == c, "dual not involutive on " + c.to_string());
    for (const auto& g : gens) o.require(cone_contains(c, g), "generator lost by double dual");
  }
  o.detail = o.ok ? std::to_string(matrices) + " matrices, 200 cones" : o.detail;
  return o;
}

Outcome log_discrepancies() {
  Outcome o;
  const auto plane = log_discrepancy(affine_space_fan(2), ToricDivisor(2), LatticeVector{1, 1});
  o.require(succeeded(plane) && std::get<LogDiscrepancy>(plane).value == 2, "a(E, A^2, 0) != 2");
  Rng rng(2002);
  const Rational coefficients[] = {0, Rational(1, 2), 1};
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 3));
    std::vector<LatticeVector> rays;
    while (rays.size() < n) {
      LatticeVector v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<long>(rng.uniform(-3, 3));
      if (v.is_zero()) continue;
      auto next = rays;
      next.push_back(primitive(v));
      if (rank(next, n) == next.size()) rays = next;
    }
    const Cone sigma = Cone::from_rays(n, rays);
    ToricDivisor b(n);
    std::vector<Rational> bs;
    for (const auto& u : sigma.generators()) {
      bs.push_back(coefficients[rng.uniform(0, 2)]);
      b.set(u, bs.back());
    }
    LatticeVector e(n);
    for (const auto& u : sigma.generators()) e += Integer(rng.uniform(0, 5)) * u;
    if (e.is_zero()) e = sigma.generators().front();
    e = primitive(e);
    const auto a = log_discrepancy(Fan(n, {sigma}), b, e);
    const auto expected = reference::simplicial_log_discrepancy(sigma.generators(), bs, e);
    o.require(succeeded(a) && expected && std::get<LogDiscrepancy>(a).value == *expected,
              "mismatch on " + sigma.to_string() + " e=" + e.to_string());
  }
  if (o.ok) o.detail = "20 simplicial cones";
  return o;
}

Outcome tower_soundness(const std::vector<TowerSpec>& towers) {
  Outcome o;
  std::size_t levels = 0;
  for (const auto& s : towers) {
    const std::string doc = io::emit_tower(s);
    const auto m = build_model(s);
    for (std::size_t i = 1; i <= m.levels.size(); ++i) {
      const auto& lvl = m.level(i);
      o.require(fan_validate(lvl.fan).ok(), "fan_validate fails at level " + std::to_string(i) + " of " + doc);
      const ToricDivisor kc = canonical_divisor(lvl.fan) + lvl.boundary;
      o.require(kc.is_zero(), "K + C != 0 at level " + std::to_string(i) + " of " + doc);
      const auto cd = cartier_data(lvl.fan, kc);
      o.require(succeeded(cd) && std::get<CartierData>(cd).index == 1, "K + C not Cartier in " + doc);
      ++levels;
    }
    o.require(torus_splitting_check(m).ok(), "torus splitting fails on " + doc);
    o.require(node_chart_check(m).ok(), "node chart cross-check fails on " + doc);
  }
  if (o.ok) o.detail = std::to_string(towers.size()) + " towers, " + std::to_string(levels) + " levels";
  return o;
}

Outcome lc_transfer(const std::vector<TowerSpec>& towers) {
  Outcome o;
  std::size_t evaluated = 0, skipped = 0;
  Rng rng(4004);
  for (const auto& s : towers) {
    const auto r = lc_place_transfer_check(s, 50, rng.next());
    o.require(r.ok(), "violation on " + io::emit_tower(s) +
                          (r.violations.empty() ? "" : ": " + r.violations.front().message));
    evaluated += r.passed;
    skipped += r.skipped;
  }
  o.require(evaluated > 0, "nothing evaluated");
  if (o.ok) o.detail = std::to_string(evaluated) + " valuations, 0 violations, " + std::to_string(skipped) + " skipped";
  return o;
}

Outcome base_change() {
  Outcome o;
  Rng rng(5005);
  const auto towers = seeded_towers(100, 5006);
  for (const auto& s : towers) {
    CurveGermData g;
    g.on_boundary = rng.uniform(0, 3) != 0;
    for (std::size_t j = 0; j < s.base_dim; ++j) g.orders.push_back(g.on_boundary ? rng.uniform(0, 4) : 0);
    const auto out = base_change_to_curve(s, g);
    o.require(out.base_dim == 1 && out.moves.size() == s.moves.size(), "shape changed");
    for (std::size_t k = 0; k < s.moves.size(); ++k) {
      const auto* before = std::get_if<NodeMove>(&s.moves[k]);
      const auto* after = std::get_if<NodeMove>(&out.moves[k]);
      o.require((before == nullptr) == (after == nullptr), "move kind changed");
      if (!before || !after) continue;
      long long expected = 0;
      for (std::size_t j = 0; j < g.orders.size(); ++j) expected += g.orders[j] * before->t_exponents[j].get_si();
      o.require(after->t_exponents.size() == 1 && after->t_exponents[0].get_si() == expected,
                "exponent differs from sum c_j n_j on " + io::emit_tower(s));
      o.require(g.on_boundary || expected == 0, "off-boundary germ kept a t exponent");
      o.require(after->alpha_exponents == before->alpha_exponents, "alpha exponents changed");
    }
  }
  for (const auto& s : seeded_towers(100, 5007)) {
    if (s.base_dim != 1) continue;
    o.require(base_change_to_curve(s, {{1}, true}) == s, "c=(1) is not the identity");
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TowerSpec s = io::random_tower(1, 5, 3, seed);
    o.require(base_change_to_curve(s, {{1}, true}) == s, "c=(1) is not the identity");
  }
  if (o.ok) o.detail = "100 pairs";
  return o;
}

Outcome local_models() {
  Outcome o;
  struct Example {
    TowerSpec spec;
    std::optional<std::vector<long>> exponents;
  };
  const std::vector<Example> examples = {
      {TowerSpec{1, {NodeMove{{}, {1}}}}, std::vector<long>{1}},
      {TowerSpec{1, {NodeMove{{}, {2}}}}, std::vector<long>{2}},
      {TowerSpec{1, {ProductMove{}}}, std::nullopt},
  };
  std::size_t orbits = 0;
  for (const auto& ex : examples) {
    const auto m = build_model(ex.spec);
    for (const auto& c : m.level(2).fan.all_cones()) {
      const auto got = local_model_at(m, 2, c).kind;
      const auto want = oracle::to_kind(oracle::classify_orbit(1, ex.exponents, c));
      o.require(got == want, "orbit " + c.to_string() + " classified " + to_string(got) + ", oracle says " +
                                 to_string(want));
      ++orbits;
    }
  }
  if (o.ok) o.detail = std::to_string(orbits) + " orbits";
  return o;
}

Outcome degrees_and_volumes() {
  Outcome o;
  for (std::size_t n = 1; n <= 4; ++n) {
    const Fan pn = projective_space_fan(n);
    for (long k = 1; k <= 3; ++k) {
      Integer kn;
      mpz_ui_pow_ui(kn.get_mpz_t(), static_cast<unsigned long>(k), n);
      o.require(relative_volume_on_P({n, {k}, false, 1}) == Rational(kn), "relative volume != k^n");
      ToricDivisor d(n);
      d.set(pn.all_rays().front(), k);
      const auto p = divisor_polytope(pn, d);
      o.require(succeeded(p) && normalized_volume(std::get<LatticePolytope>(p)) == Rational(kn),
                "polytope volume != k^n for n=" + std::to_string(n) + " k=" + std::to_string(k));
      for (long a = 1; a <= 3; ++a) {
        Integer an;
        mpz_ui_pow_ui(an.get_mpz_t(), static_cast<unsigned long>(a), n - 1);
        o.require(relative_degree_on_P({n, {k}, false, a}) == Rational(k * an), "relative degree != d a^(n-1)");
      }
    }
  }
  if (o.ok) o.detail = "n<=4, k,a,d<=3";
  return o;
}

Outcome round_trip() {
  Outcome o;
  Rng rng(8008);
  for (int i = 0; i < 100; ++i) {
    const auto p = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto d = static_cast<std::size_t>(rng.uniform(1, 6));
    const TowerSpec s = io::random_tower(p, d, rng.uniform(1, 5), rng.next());
    o.require(io::parse_tower(io::emit_tower(s)) == s, "round trip lost data");
  }
  io::VerifyParams params;
  params.cases = 20;
  params.samples = 10;
  params.seed = 8009;
  o.require(io::to_json(io::run_verify(params)) == io::to_json(io::run_verify(params)), "verify report not reproducible");
  const TowerSpec s = io::random_tower(3, 5, 3, 8010);
  o.require(io::to_json(io::command_lc_check(s, 20, 1)) == io::to_json(io::command_lc_check(s, 20, 1)),
            "lc-check report not reproducible");
  o.require(io::emit_tower(io::random_tower(3, 5, 3, 8011)) == io::emit_tower(io::random_tower(3, 5, 3, 8011)),
            "random tower not reproducible");
  if (o.ok) o.detail = "100 specs, reports byte-identical";
  return o;
}

}  // namespace

int main() {
  const auto towers = seeded_towers(200, 3003);
  const std::vector<std::tuple<int, std::string, double, std::function<Outcome()>>> criteria = {
      {1, "kernel oracle equivalence", 30, kernel_oracles},
      {2, "log-discrepancy correctness", 10, log_discrepancies},
      {3, "tower construction soundness", 120, [&] { return tower_soundness(towers); }},
      {4, "lc-place transfer", 120, [&] { return lc_transfer(towers); }},
      {5, "base-change transform", 10, base_change},
      {6, "local models", 10, local_models},
      {7, "degrees and volumes", 10, degrees_and_volumes},
      {8, "round-trip and determinism", 5, round_trip},
  };
  bool all = true;
  for (const auto& [id, name, limit, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < limit;
    const bool pass = o.ok && in_time;
    all = all && pass;
    std::printf("criterion %d %-30s %s  %.2fs (limit %.0fs)  %s\n", id, name.c_str(), pass ? "PASS" : "FAIL", seconds,
                limit, in_time ? o.detail.c_str() : ("too slow; " + o.detail).c_str());
  }
  return all ? 0 : 1;
}
