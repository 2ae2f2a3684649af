// torictower: command-line front end. One document in, one report out.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "torictower/io.hpp"

namespace io = torictower::io;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Special toric towers: build, inspect and verify"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input = "-", output = "-";
  std::uint64_t seed = 0;
  std::size_t samples = 50;
  std::size_t max_dim = torictower::current_limits().max_dim;
  std::size_t max_rays = torictower::current_limits().max_rays;
  bool timing = false;
  app.add_option("--output,-o", output, "Output path, - for stdout");
  app.add_option("--max-dim", max_dim, "Largest lattice rank allowed");
  app.add_option("--max-rays", max_rays, "Largest ray count allowed per fan");
  app.add_flag("--timing", timing, "Add elapsed_seconds to the report");

  auto tower_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", input, "Tower document path, - for stdin");
    return sub;
  };

  auto* build = tower_command("build", "Build every level and check fan and tower invariants");
  auto* fan = tower_command("fan", "Print the level fans");
  std::optional<std::size_t> level;
  fan->add_option("--level", level, "Only this level");
  auto* proj = tower_command("map-to-proj", "Projective model and the torus identification");
  auto* base_change = tower_command("base-change", "Base change to a curve germ");
  std::vector<std::int64_t> orders;
  bool off_boundary = false;
  base_change->add_option("--orders", orders, "Vanishing orders c_1..c_p")->delimiter(',')->required();
  base_change->add_flag("--off-boundary", off_boundary, "The germ's point lies off the boundary");
  auto* lc = tower_command("lc-check", "Log discrepancies of rays and samples on both models");
  lc->add_option("--seed", seed);
  lc->add_option("--samples", samples);
  auto* local = tower_command("local-model", "Classify every orbit relative to the previous level");
  local->add_option("--level", level, "Only this level");

  auto* volume = app.add_subcommand("volume", "Normalized volume of P_{kH} on P^n against k^n");
  std::size_t n = 1;
  std::int64_t k = 1;
  volume->add_option("--n", n)->required();
  volume->add_option("--k", k)->required();

  auto* degree = app.add_subcommand("degree", "Relative degree and volume on a P^n fiber");
  std::vector<std::string> degrees;
  bool vertical = false;
  std::string polarization = "1";
  degree->add_option("--n", n)->required();
  degree->add_option("--degrees", degrees, "Hyperplane degrees of the horizontal components")->delimiter(',');
  degree->add_flag("--vertical", vertical, "D also has a vertical part");
  degree->add_option("--a", polarization, "Polarization degree");

  auto* random = app.add_subcommand("random", "Emit a seeded random tower document");
  std::size_t p = 1, d = 1;
  std::int64_t max_exponent = 3;
  random->add_option("--p", p)->required();
  random->add_option("--d", d)->required();
  random->add_option("--max-exponent", max_exponent);
  random->add_option("--seed", seed);

  auto* verify = app.add_subcommand("verify", "Run an invariant suite on seeded instances");
  io::VerifyParams params;
  verify->add_option("--suite", params.suite)
      ->check(CLI::IsMember({"kernel", "toric", "tower", "lc", "basechange", "volume", "all"}));
  verify->add_option("--seed", seed);
  verify->add_option("--samples", samples);
  verify->add_option("--cases", params.cases);
  verify->add_option("--max-base-dim", params.max_base_dim);
  verify->add_option("--max-levels", params.max_levels);
  verify->add_option("--max-exponent", params.max_exponent);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return io::exit_code(io::Status::usage_error);
  }

  try {
    torictower::set_limits({max_dim, max_rays});
    const auto start = std::chrono::steady_clock::now();
    io::Report report;
    if (random->parsed()) {
      write_output(output, io::emit_tower(io::random_tower(p, d, max_exponent, seed)));
      return 0;
    } else if (volume->parsed()) {
      report = io::command_volume(n, k);
    } else if (degree->parsed()) {
      torictower::ProjectiveDivisorData data;
      data.fiber_dim = n;
      for (const auto& x : degrees) data.horizontal_degrees.emplace_back(x);
      data.has_vertical_part = vertical;
      data.polarization = torictower::Integer(polarization);
      report = io::command_degree(data);
    } else if (verify->parsed()) {
      params.seed = seed;
      params.samples = samples;
      report = io::run_verify(params);
    } else {
      const auto spec = io::parse_tower(read_input(input));
      if (build->parsed()) report = io::command_build(spec);
      else if (fan->parsed()) report = io::command_fan(spec, level);
      else if (proj->parsed()) report = io::command_map_to_proj(spec);
      else if (base_change->parsed()) report = io::command_base_change(spec, {orders, !off_boundary});
      else if (lc->parsed()) report = io::command_lc_check(spec, samples, seed);
      else report = io::command_local_model(spec, level);
    }
    if (timing)
      report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_output(output, io::to_json(report));
    return io::exit_code(report.status);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const io::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
  } catch (const torictower::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return io::exit_code(io::Status::resource_exhausted);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return io::exit_code(io::Status::usage_error);
}
