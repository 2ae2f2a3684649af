#include "torictower/io.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "torictower/polytope.hpp"
#include "torictower/random.hpp"
#include "torictower/reference.hpp"

namespace torictower::io {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- documents

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Integer parse_integer(const json& v, const std::string& field) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()));
    return Integer(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    static const std::regex decimal("-?[0-9]+");
    const auto s = v.get<std::string>();
    if (!std::regex_match(s, decimal)) throw SchemaError(field, "\"" + s + "\" is not a decimal integer");
    return Integer(s);
  }
  throw SchemaError(field, "expected an integer, got " + std::string(v.type_name()));
}

std::size_t parse_count(const json& v, const std::string& field) {
  Integer x = parse_integer(v, field);
  if (x < 0 || x > 1000000) throw SchemaError(field, "out of range");
  return x.get_ui();
}

std::vector<Integer> parse_exponents(const json& move, const char* key, const std::string& where) {
  const std::string field = where + "." + key;
  if (!move.contains(key)) throw SchemaError(field, "missing");
  const auto& arr = move.at(key);
  if (!arr.is_array()) throw SchemaError(field, "expected an array");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_integer(arr[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

json integers_json(const std::vector<Integer>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x.get_str());
  return a;
}

json vector_json(const LatticeVector& v) { return integers_json(v.entries()); }

json rationals_json(const RationalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json move_json(const Move& m) {
  json j;
  if (std::holds_alternative<ProductMove>(m)) {
    j["type"] = "product";
  } else {
    const auto& node = std::get<NodeMove>(m);
    j["type"] = "node";
    j["alpha_exponents"] = integers_json(node.alpha_exponents);
    j["t_exponents"] = integers_json(node.t_exponents);
  }
  return j;
}

json tower_json(const TowerSpec& s) {
  json j;
  j["format_version"] = kFormatVersion;
  j["base_dim"] = s.base_dim;
  j["moves"] = json::array();
  for (const auto& m : s.moves) j["moves"].push_back(move_json(m));
  return j;
}

std::string compact(const TowerSpec& s) { return tower_json(s).dump(); }

json fan_json(const Fan& f) {
  const auto& rays = f.all_rays();
  json j;
  j["dim"] = f.ambient_dim();
  j["rays"] = json::array();
  for (const auto& r : rays) j["rays"].push_back(vector_json(r));
  j["maximal_cones"] = json::array();
  for (const auto& c : f.maximal_cones()) {
    json idx = json::array();
    for (const auto& g : c.generators())
      idx.push_back(std::lower_bound(rays.begin(), rays.end(), g) - rays.begin());
    j["maximal_cones"].push_back(idx);
  }
  return j;
}

json divisor_json(const ToricDivisor& d) {
  json a = json::array();
  for (const auto& [ray, c] : d.coefficients()) {
    json t;
    t["ray"] = vector_json(ray);
    t["coefficient"] = c.get_str();
    a.push_back(t);
  }
  return a;
}

json matrix_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r)));
  return a;
}

// ---------------------------------------------------------------- reports

Report make_report(std::string command, std::vector<std::string> arguments, std::uint64_t seed = 0) {
  Report r;
  r.command = std::move(command);
  r.arguments = std::move(arguments);
  r.seed = seed;
  return r;
}

void check(Report& r, bool ok, std::string kind, std::string message, std::string witness = {}) {
  ++r.checked;
  if (ok) {
    ++r.passed;
    return;
  }
  r.violations.push_back({std::move(kind), std::move(message), std::move(witness)});
}

void absorb_tagged(Report& r, const CheckReport& c, const std::string& tag) {
  r.checked += c.checked;
  r.passed += c.passed;
  r.skipped += c.skipped;
  for (auto v : c.violations) {
    v.witness = v.witness.empty() ? tag : v.witness + " " + tag;
    r.violations.push_back(std::move(v));
  }
  for (const auto& s : c.skip_reasons) r.notes.push_back(s);
}

// Resource caps become a status rather than an exception.
Report guarded(Report r, const std::function<void(Report&)>& body) {
  try {
    body(r);
  } catch (const ResourceError& e) {
    r.status = Status::resource_exhausted;
    r.notes.push_back(std::string("resource cap: ") + e.what());
  }
  r.finish();
  return r;
}

// fan_validate at every level, K + C Cartier of index 1, torus splitting and
// the node chart cross-check.
void tower_checks(Report& r, const TowerModel& model, const std::string& tag) {
  for (std::size_t i = 1; i <= model.levels.size(); ++i) {
    const auto& lvl = model.level(i);
    const auto validation = fan_validate(lvl.fan);
    ++r.checked;
    if (validation.ok()) ++r.passed;
    for (auto v : validation.violations) {
      v.message = "level " + std::to_string(i) + ": " + v.message;
      v.witness = v.witness.empty() ? tag : v.witness + " " + tag;
      r.violations.push_back(std::move(v));
    }
    const auto kc = cartier_data(lvl.fan, canonical_divisor(lvl.fan) + lvl.boundary);
    const bool index_one = succeeded(kc) && std::get<CartierData>(kc).index == 1;
    check(r, index_one, "canonical-plus-boundary",
          "level " + std::to_string(i) + ": K + C is not Cartier of index 1", tag);
  }
  absorb_tagged(r, torus_splitting_check(model), tag);
  absorb_tagged(r, node_chart_check(model), tag);
}

std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + salt * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<TowerSpec> sample_towers(const VerifyParams& p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TowerSpec> out;
  for (std::size_t i = 0; i < p.cases; ++i) {
    const auto base = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(p.max_base_dim)));
    const auto levels = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(p.max_levels)));
    out.push_back(random_tower(base, levels, p.max_exponent, rng.next()));
  }
  return out;
}

// ---------------------------------------------------------------- suites

Integer small_int(std::int64_t x) { return Integer(static_cast<long>(x)); }

void suite_kernel(Report& r, const VerifyParams& p) {
  // Exhaustive 2x2 HNF against the search oracle.
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t b = -3; b <= 3; ++b)
      for (std::int64_t c = -3; c <= 3; ++c)
        for (std::int64_t d = -3; d <= 3; ++d) {
          IntMatrix m{{static_cast<long>(a), static_cast<long>(b)}, {static_cast<long>(c), static_cast<long>(d)}};
          const auto [h, u] = hnf(m);
          const auto expected = reference::hnf_by_search({a, b, c, d});
          bool ok = expected.has_value() && u * m == h && abs(determinant(u)) == 1;
          if (ok)
            for (int k = 0; k < 4; ++k) ok = ok && h(k / 2, k % 2) == small_int((*expected)[k]);
          check(r, ok, "hnf-oracle", "HNF disagrees with the search oracle", m.to_string());
        }

  Rng rng(suite_seed(p.seed, 1));
  // SNF against gcds of minors.
  for (std::size_t i = 0; i < p.cases; ++i) {
    const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 3));
    IntMatrix m(rows, cols);
    for (std::size_t x = 0; x < rows; ++x)
      for (std::size_t y = 0; y < cols; ++y) m(x, y) = small_int(rng.uniform(-6, 6));
    const auto s = snf(m);
    const auto factors = reference::invariant_factors_by_minors(m);
    bool ok = s.left * m * s.right == s.diagonal && abs(determinant(s.left)) == 1 && abs(determinant(s.right)) == 1;
    for (std::size_t k = 0; k < factors.size(); ++k) ok = ok && s.diagonal(k, k) == factors[k];
    check(r, ok, "snf-oracle", "Smith form disagrees with gcds of minors", m.to_string());
  }

  // Dual cones: involution, facets against subset enumeration, containment
  // against Caratheodory.
  for (std::size_t i = 0; i < p.cases; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    LatticeVector w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = small_int(rng.uniform(1, 3));
    const std::size_t count = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(n) + 2));
    std::vector<LatticeVector> gens;
    while (gens.size() < count) {
      LatticeVector v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = small_int(rng.uniform(-3, 3));
      if (sgn(dot(w, v)) > 0) gens.push_back(v);
    }
    const Cone raw = Cone::from_rays(n, gens);
    const std::string witness = raw.to_string();
    const Cone c = dual_cone(dual_cone(raw));
    check(r, dual_cone(dual_cone(c)) == c, "dual-involution", "dual(dual(c)) != c", witness);
    bool extreme_subset = true;
    for (const auto& g : c.generators())
      extreme_subset = extreme_subset && std::binary_search(raw.generators().begin(), raw.generators().end(), g);
    for (const auto& g : raw.generators()) extreme_subset = extreme_subset && cone_contains(c, g);
    check(r, extreme_subset, "dual-involution", "extreme rays of dual(dual(c)) do not match c", witness);
    if (c.dim() == n) {
      auto normals = dual_cone(c).generators();
      std::sort(normals.begin(), normals.end());
      check(r, normals == reference::facet_normals_by_enumeration(raw.generators(), n), "facet-oracle",
            "facet normals disagree with subset enumeration", witness);
    }
    for (int t = 0; t < 5; ++t) {
      LatticeVector v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = small_int(rng.uniform(-4, 4));
      check(r, cone_contains(raw, v) == reference::caratheodory_contains(raw.generators(), v), "containment-oracle",
            "cone_contains disagrees with Caratheodory", witness + " v=" + v.to_string());
    }
  }
}

void suite_toric(Report& r, const VerifyParams& p) {
  {
    const Fan plane = affine_space_fan(2);
    const auto a = log_discrepancy(plane, ToricDivisor(2), LatticeVector{1, 1});
    check(r, succeeded(a) && std::get<LogDiscrepancy>(a).value == 2, "log-discrepancy",
          "a(E_(1,1), A^2, 0) != 2", "e=(1,1)");
  }
  Rng rng(suite_seed(p.seed, 2));
  const std::array<Rational, 3> coefficients = {Rational(0), Rational(1, 2), Rational(1)};
  for (std::size_t i = 0; i < p.cases; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 3));
    std::vector<LatticeVector> rays;
    while (rays.size() < n) {
      LatticeVector v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = small_int(rng.uniform(-3, 3));
      if (v.is_zero()) continue;
      auto trial = rays;
      trial.push_back(primitive(v));
      if (rank(trial, n) == trial.size()) rays = std::move(trial);
    }
    const Cone sigma = Cone::from_rays(n, rays);
    const Fan f(n, {sigma});
    const auto& sorted = sigma.generators();
    ToricDivisor b(n);
    std::vector<Rational> bs;
    for (const auto& u : sorted) {
      bs.push_back(coefficients[static_cast<std::size_t>(rng.uniform(0, 2))]);
      b.set(u, bs.back());
    }
    LatticeVector e(n);
    for (const auto& u : sorted) e += small_int(rng.uniform(0, 4)) * u;
    if (e.is_zero()) e = sorted.front();
    e = primitive(e);
    const auto a = log_discrepancy(f, b, e);
    const auto expected = reference::simplicial_log_discrepancy(sorted, bs, e);
    check(r, succeeded(a) && expected && std::get<LogDiscrepancy>(a).value == *expected, "log-discrepancy",
          "log discrepancy disagrees with the simplicial formula",
          sigma.to_string() + " B=" + b.to_string() + " e=" + e.to_string());
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const Fan& f : {affine_space_fan(n), projective_space_fan(n)}) {
      const auto kb = cartier_data(f, canonical_divisor(f) + boundary_divisor(f));
      check(r, succeeded(kb) && std::get<CartierData>(kb).index == 1, "canonical-plus-boundary",
            "K + B not Cartier of index 1 on a smooth fan", "n=" + std::to_string(n));
    }
  }
}

void suite_tower(Report& r, const VerifyParams& p) {
  for (const auto& s : sample_towers(p, suite_seed(p.seed, 3))) {
    const std::string tag = "tower=" + compact(s);
    try {
      tower_checks(r, build_model(s), tag);
    } catch (const ResourceError& e) {
      ++r.skipped;
      r.status = Status::resource_exhausted;
      r.notes.push_back(std::string("resource cap: ") + e.what() + " " + tag);
    }
  }
}

void suite_lc(Report& r, const VerifyParams& p) {
  Rng rng(suite_seed(p.seed, 4));
  for (const auto& s : sample_towers(p, suite_seed(p.seed, 3))) {
    const std::string tag = "tower=" + compact(s);
    try {
      absorb_tagged(r, lc_place_transfer_check(s, p.samples, rng.next()), tag);
    } catch (const ResourceError& e) {
      ++r.skipped;
      r.status = Status::resource_exhausted;
      r.notes.push_back(std::string("resource cap: ") + e.what() + " " + tag);
    }
  }
}

void suite_basechange(Report& r, const VerifyParams& p) {
  Rng rng(suite_seed(p.seed, 5));
  for (const auto& s : sample_towers(p, suite_seed(p.seed, 6))) {
    CurveGermData g;
    g.on_boundary = rng.uniform(0, 4) != 0;
    for (std::size_t j = 0; j < s.base_dim; ++j) g.orders.push_back(g.on_boundary ? rng.uniform(0, 3) : 0);
    const auto out = base_change_to_curve(s, g);
    bool ok = out.base_dim == 1 && out.moves.size() == s.moves.size() && validate_tower(out).ok();
    for (std::size_t k = 0; ok && k < s.moves.size(); ++k) {
      const auto* before = std::get_if<NodeMove>(&s.moves[k]);
      const auto* after = std::get_if<NodeMove>(&out.moves[k]);
      if (!before) {
        ok = after == nullptr;
        continue;
      }
      if (!after) {
        ok = false;
        continue;
      }
      // Independent recomputation in machine integers.
      long long expected = 0;
      for (std::size_t j = 0; j < g.orders.size(); ++j) expected += g.orders[j] * before->t_exponents[j].get_si();
      ok = after->alpha_exponents == before->alpha_exponents && after->t_exponents.size() == 1 &&
           after->t_exponents[0].get_si() == expected && (g.on_boundary || expected == 0);
    }
    std::string orders;
    for (auto c : g.orders) orders += (orders.empty() ? "" : ",") + std::to_string(c);
    check(r, ok, "base-change", "transformed exponents disagree with sum c_j n_j",
          "tower=" + compact(s) + " orders=(" + orders + ")" + (g.on_boundary ? "" : " off-boundary"));
  }
  // p = 1, c = (1) is the identity.
  VerifyParams one = p;
  one.max_base_dim = 1;
  for (const auto& s : sample_towers(one, suite_seed(p.seed, 7)))
    check(r, base_change_to_curve(s, {{1}, true}) == s, "base-change-identity", "c=(1) changed a p=1 tower",
          "tower=" + compact(s));
}

void suite_volume(Report& r, const VerifyParams&) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::int64_t k = 1; k <= 3; ++k) {
      Integer kn;
      mpz_pow_ui(kn.get_mpz_t(), small_int(k).get_mpz_t(), n);
      const Report v = command_volume(n, k);
      r.checked += v.checked;
      r.passed += v.passed;
      r.violations.insert(r.violations.end(), v.violations.begin(), v.violations.end());
      ProjectiveDivisorData data{n, {small_int(k)}, false, 1};
      check(r, relative_volume_on_P(data) == Rational(kn), "relative-volume", "vol(O(k)) != k^n",
            "n=" + std::to_string(n) + " k=" + std::to_string(k));
      for (std::int64_t a = 1; a <= 3; ++a) {
        Integer an;
        mpz_pow_ui(an.get_mpz_t(), small_int(a).get_mpz_t(), n - 1);
        ProjectiveDivisorData deg{n, {small_int(k)}, false, small_int(a)};
        check(r, relative_degree_on_P(deg) == Rational(small_int(k) * an), "relative-degree", "deg != d a^(n-1)",
              "n=" + std::to_string(n) + " d=" + std::to_string(k) + " a=" + std::to_string(a));
      }
    }
    ProjectiveDivisorData vertical{n, {}, true, 2};
    check(r, relative_degree_on_P(vertical) == 0 && relative_volume_on_P(vertical) == 0, "vertical",
          "vertical divisor has nonzero degree or volume", "n=" + std::to_string(n));
  }
}

}  // namespace

// ---------------------------------------------------------------- public

TowerSpec parse_tower(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string what = e.what();
    if (auto pos = what.find("] "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what, line,
                     column);
  }
  if (!doc.is_object()) throw SchemaError("", "document must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "format_version" && key != "base_dim" && key != "moves") throw SchemaError(key, "unknown field");
  if (doc.contains("format_version")) {
    const Integer version = parse_integer(doc["format_version"], "format_version");
    if (version != kFormatVersion)
      throw SchemaError("format_version", "unsupported version " + version.get_str());
  }
  if (!doc.contains("base_dim")) throw SchemaError("base_dim", "missing");
  TowerSpec s;
  s.base_dim = parse_count(doc["base_dim"], "base_dim");
  if (doc.contains("moves")) {
    const auto& moves = doc["moves"];
    if (!moves.is_array()) throw SchemaError("moves", "expected an array");
    for (std::size_t k = 0; k < moves.size(); ++k) {
      const std::string where = "moves[" + std::to_string(k) + "]";
      const auto& m = moves[k];
      if (!m.is_object()) throw SchemaError(where, "expected an object");
      if (!m.contains("type") || !m["type"].is_string()) throw SchemaError(where + ".type", "missing or not a string");
      const auto type = m["type"].get<std::string>();
      if (type == "product") {
        if (m.size() != 1) throw SchemaError(where, "a product move takes no parameters");
        s.moves.emplace_back(ProductMove{});
      } else if (type == "node") {
        for (const auto& [key, value] : m.items())
          if (key != "type" && key != "alpha_exponents" && key != "t_exponents")
            throw SchemaError(where + "." + key, "unknown field");
        s.moves.emplace_back(
            NodeMove{parse_exponents(m, "alpha_exponents", where), parse_exponents(m, "t_exponents", where)});
      } else {
        throw SchemaError(where + ".type", "unknown move type \"" + type + "\"");
      }
    }
  }
  const auto report = validate_tower(s);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    std::string message = v.message;
    if (!v.witness.empty() && message.rfind(v.witness + ": ", 0) == 0) message = message.substr(v.witness.size() + 2);
    throw SchemaError(v.witness.empty() ? v.kind : v.witness, message);
  }
  return s;
}

std::string emit_tower(const TowerSpec& s) { return tower_json(s).dump(2) + "\n"; }

TowerSpec random_tower(std::size_t p, std::size_t d, std::int64_t max_exponent, std::uint64_t seed) {
  if (p < 1 || d < 1 || max_exponent < 1)
    throw std::invalid_argument("random_tower needs p >= 1, d >= 1 and max_exponent >= 1");
  Rng rng(seed);
  TowerSpec s;
  s.base_dim = p;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (rng.coin()) {
      s.moves.emplace_back(ProductMove{});
      continue;
    }
    NodeMove node;
    for (std::size_t j = 0; j < k; ++j) node.alpha_exponents.push_back(small_int(rng.uniform(-max_exponent, max_exponent)));
    for (std::size_t j = 0; j < p; ++j) node.t_exponents.push_back(small_int(rng.uniform(-max_exponent, max_exponent)));
    s.moves.emplace_back(std::move(node));
  }
  return s;
}

int exit_code(Status s) {
  switch (s) {
    case Status::ok: return 0;
    case Status::violations: return 1;
    case Status::usage_error: return 2;
    case Status::resource_exhausted: return 3;
  }
  return 2;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::violations: return "violations";
    case Status::usage_error: return "usage-error";
    case Status::resource_exhausted: return "resource-exhausted";
  }
  return "unknown";
}

void Report::absorb(const CheckReport& r) { absorb_tagged(*this, r, ""); }

void Report::finish() {
  if (!violations.empty()) status = Status::violations;
  else if (status == Status::violations) status = Status::ok;
}

std::string to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["arguments"] = r.arguments;
  j["seed"] = std::to_string(r.seed);
  j["status"] = to_string(r.status);
  j["counts"] = {{"checked", r.checked}, {"passed", r.passed}, {"skipped", r.skipped}};
  j["violations"] = json::array();
  for (const auto& v : r.violations) j["violations"].push_back({{"kind", v.kind}, {"message", v.message}, {"witness", v.witness}});
  j["notes"] = r.notes;
  j["result"] = json::parse(r.result_json);
  if (r.elapsed_seconds) j["elapsed_seconds"] = *r.elapsed_seconds;
  return j.dump(2) + "\n";
}

Report command_build(const TowerSpec& s) {
  return guarded(make_report("build", {"tower=" + compact(s)}), [&](Report& r) {
    const auto model = build_model(s);
    tower_checks(r, model, "");
    json res;
    res["base_dim"] = s.base_dim;
    res["levels"] = json::array();
    for (std::size_t i = 1; i <= model.levels.size(); ++i) {
      const auto& f = model.level(i).fan;
      res["levels"].push_back({{"level", i},
                               {"rank", model.rank(i)},
                               {"rays", f.all_rays().size()},
                               {"maximal_cones", f.maximal_cones().size()}});
    }
    r.result_json = res.dump();
  });
}

Report command_fan(const TowerSpec& s, std::optional<std::size_t> level) {
  std::vector<std::string> args{"tower=" + compact(s)};
  if (level) args.push_back("level=" + std::to_string(*level));
  return guarded(make_report("fan", args), [&](Report& r) {
    const auto model = build_model(s);
    if (level && (*level < 1 || *level > model.levels.size()))
      throw std::out_of_range("tower has no level " + std::to_string(*level));
    json res = json::array();
    for (std::size_t i = 1; i <= model.levels.size(); ++i) {
      if (level && *level != i) continue;
      const auto& lvl = model.level(i);
      json l;
      l["level"] = i;
      l["move"] = lvl.move ? move_json(*lvl.move) : json(nullptr);
      l["fan"] = fan_json(lvl.fan);
      l["boundary"] = divisor_json(lvl.boundary);
      l["projection"] = matrix_json(lvl.projection);
      res.push_back(l);
    }
    r.result_json = res.dump();
  });
}

Report command_map_to_proj(const TowerSpec& s) {
  return guarded(make_report("map-to-proj", {"tower=" + compact(s)}), [&](Report& r) {
    const auto model = build_model(s);
    const auto proj = projective_model(s);
    r.absorb(lc_place_transfer_check(model, proj, model.levels.back().fan.all_rays()));
    json res;
    res["fan"] = fan_json(proj.fan);
    res["identification"] = matrix_json(proj.identification);
    res["boundary"] = divisor_json(proj.boundary);
    r.result_json = res.dump();
  });
}

Report command_base_change(const TowerSpec& s, const CurveGermData& g) {
  std::string orders;
  for (auto c : g.orders) orders += (orders.empty() ? "" : ",") + std::to_string(c);
  return guarded(make_report("base-change", {"tower=" + compact(s), "orders=" + orders,
                                             std::string("on_boundary=") + (g.on_boundary ? "true" : "false")}),
                 [&](Report& r) {
                   const auto out = base_change_to_curve(s, g);
                   check(r, validate_tower(out).ok(), "base-change", "output tower is invalid");
                   r.result_json = tower_json(out).dump();
                 });
}

Report command_lc_check(const TowerSpec& s, std::size_t samples, std::uint64_t seed) {
  return guarded(make_report("lc-check", {"tower=" + compact(s), "samples=" + std::to_string(samples)}, seed),
                 [&](Report& r) {
                   r.absorb(lc_place_transfer_check(s, samples, seed));
                   r.result_json = json({{"levels", s.levels()}, {"valuations", r.checked}}).dump();
                 });
}

Report command_local_model(const TowerSpec& s, std::optional<std::size_t> level) {
  std::vector<std::string> args{"tower=" + compact(s)};
  if (level) args.push_back("level=" + std::to_string(*level));
  return guarded(make_report("local-model", args), [&](Report& r) {
    const auto model = build_model(s);
    if (level && (*level < 2 || *level > model.levels.size()))
      throw std::out_of_range("local models exist at levels 2.." + std::to_string(model.levels.size()));
    json res = json::array();
    for (std::size_t i = 2; i <= model.levels.size(); ++i) {
      if (level && *level != i) continue;
      for (const auto& c : model.level(i).fan.all_cones()) {
        const auto d = local_model_at(model, i, c);
        json gens = json::array();
        for (const auto& g : c.generators()) gens.push_back(vector_json(g));
        res.push_back({{"level", i},
                       {"cone", gens},
                       {"kind", to_string(d.kind)},
                       {"lambda", d.lambda ? vector_json(d.lambda->exponents) : json(nullptr)}});
        ++r.checked;
        ++r.passed;
      }
    }
    r.result_json = res.dump();
  });
}

Report command_volume(std::size_t n, std::int64_t k) {
  return guarded(make_report("volume", {"n=" + std::to_string(n), "k=" + std::to_string(k)}), [&](Report& r) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    const Fan f = projective_space_fan(n);
    ToricDivisor d(n);
    d.set(f.all_rays().front(), Rational(small_int(k)));
    const auto polytope = divisor_polytope(f, d);
    if (!succeeded(polytope)) throw std::logic_error(std::get<Failure>(polytope).message);
    const auto& pt = std::get<LatticePolytope>(polytope);
    const Rational lattice_volume = normalized_volume(pt);
    const Rational fiber_volume = relative_volume_on_P({n, {small_int(k)}, false, 1});
    check(r, lattice_volume == fiber_volume, "volume", "normalized polytope volume differs from k^n",
          "n=" + std::to_string(n) + " k=" + std::to_string(k));
    json vertices = json::array();
    for (const auto& v : pt.vertices()) vertices.push_back(rationals_json(v));
    r.result_json = json({{"polytope_vertices", vertices},
                          {"normalized_volume", lattice_volume.get_str()},
                          {"fiber_volume", fiber_volume.get_str()}})
                        .dump();
  });
}

Report command_degree(const ProjectiveDivisorData& d) {
  std::string degrees;
  for (const auto& x : d.horizontal_degrees) degrees += (degrees.empty() ? "" : ",") + x.get_str();
  return guarded(make_report("degree", {"n=" + std::to_string(d.fiber_dim), "degrees=" + degrees,
                                        std::string("vertical=") + (d.has_vertical_part ? "true" : "false"),
                                        "a=" + d.polarization.get_str()}),
                 [&](Report& r) {
                   r.result_json = json({{"relative_degree", relative_degree_on_P(d).get_str()},
                                         {"relative_volume", relative_volume_on_P(d).get_str()}})
                                       .dump();
                 });
}

bool is_known_suite(std::string_view suite) {
  for (const char* s : {"kernel", "toric", "tower", "lc", "basechange", "volume", "all"})
    if (suite == s) return true;
  return false;
}

Report run_verify(const VerifyParams& params) {
  if (!is_known_suite(params.suite)) throw std::invalid_argument("unknown suite \"" + params.suite + "\"");
  if (params.max_base_dim < 1 || params.max_levels < 1 || params.max_exponent < 1)
    throw std::invalid_argument("verify needs positive tower bounds");
  const std::vector<std::string> args{"suite=" + params.suite,
                                      "cases=" + std::to_string(params.cases),
                                      "samples=" + std::to_string(params.samples),
                                      "max_base_dim=" + std::to_string(params.max_base_dim),
                                      "max_levels=" + std::to_string(params.max_levels),
                                      "max_exponent=" + std::to_string(params.max_exponent)};
  return guarded(make_report("verify", args, params.seed), [&](Report& r) {
    const std::vector<std::pair<std::string, void (*)(Report&, const VerifyParams&)>> suites = {
        {"kernel", suite_kernel}, {"toric", suite_toric},           {"tower", suite_tower},
        {"lc", suite_lc},         {"basechange", suite_basechange}, {"volume", suite_volume}};
    json per_suite;
    for (const auto& [name, fn] : suites) {
      if (params.suite != "all" && params.suite != name) continue;
      const std::size_t before_checked = r.checked, before_violations = r.violations.size();
      fn(r, params);
      per_suite[name] = {{"checked", r.checked - before_checked},
                         {"violations", r.violations.size() - before_violations}};
    }
    r.result_json = per_suite.dump();
  });
}

}  // namespace torictower::io
