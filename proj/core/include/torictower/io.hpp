#pragma once

// Tower documents, reports, command implementations and the verify harness.
// JSON handling stays inside the library; everything crosses this header as
// text or plain structs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "torictower/polytope.hpp"
#include "torictower/tower.hpp"

namespace torictower::io {

inline constexpr int kFormatVersion = 1;

/// Malformed document text. line/column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed text that does not match the schema or fails validate_tower.
/// field() names the offending location, e.g. "moves[2].t_exponents".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

TowerSpec parse_tower(std::string_view text);
/// Canonical document text; exponents are written as decimal strings.
std::string emit_tower(const TowerSpec& s);

/// Deterministic in seed. Moves are Product or Node with probability 1/2;
/// node exponents uniform in [-max_exponent, max_exponent].
TowerSpec random_tower(std::size_t p, std::size_t d, std::int64_t max_exponent, std::uint64_t seed);

enum class Status { ok, violations, usage_error, resource_exhausted };

int exit_code(Status s);
std::string to_string(Status s);

struct Report {
  std::string command;
  std::vector<std::string> arguments;  // echo of the effective parameters, "key=value"
  std::uint64_t seed = 0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  std::string result_json = "null";  // command-specific payload
  std::optional<double> elapsed_seconds;
  Status status = Status::ok;

  void absorb(const CheckReport& r);
  /// Sets status from the violation list unless an error status is already set.
  void finish();
};

std::string to_json(const Report& r);

// Command implementations. Each is pure given its arguments.
Report command_build(const TowerSpec& s);
Report command_fan(const TowerSpec& s, std::optional<std::size_t> level);
Report command_map_to_proj(const TowerSpec& s);
Report command_base_change(const TowerSpec& s, const CurveGermData& g);
Report command_lc_check(const TowerSpec& s, std::size_t samples, std::uint64_t seed);
Report command_local_model(const TowerSpec& s, std::optional<std::size_t> level);
/// normalized volume of P_{kH} on P^n against k^n.
Report command_volume(std::size_t n, std::int64_t k);
Report command_degree(const ProjectiveDivisorData& d);

struct VerifyParams {
  std::string suite = "all";  // kernel, toric, tower, lc, basechange, volume, all
  std::size_t cases = 100;
  std::size_t samples = 50;
  std::size_t max_base_dim = 3;
  std::size_t max_levels = 5;
  std::int64_t max_exponent = 3;
  std::uint64_t seed = 0;
};

bool is_known_suite(std::string_view suite);

/// Runs the selected invariant suite. Resource caps surface as
/// Status::resource_exhausted; other failures are violations.
Report run_verify(const VerifyParams& params);

}  // namespace torictower::io
