#include <iostream>

#include <CLI11.hpp>
#include "prepspace/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Preparation-space quantum mechanics toolkit"};
  app.require_subcommand(1);

  prepspace::cli::RunConfig cfg;

  const auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* input = sub->add_option("--input,-i", cfg.input_path, "Problem JSON");
    if (needs_input) input->required();
    sub->add_option("--output,-o", cfg.output_path, "Output file (default stdout)");
  };
  const auto add_time = [&](CLI::App* sub) {
    sub->add_option("--dt", cfg.dt, "Step size override");
    sub->add_option("--t-final", cfg.t_final, "Final time override");
    sub->add_option("--method", cfg.method, "implicit-midpoint-4 | implicit-midpoint | rk4-renormalized");
  };

  auto* evolve = app.add_subcommand("evolve", "Integrate the canonical equations, write a trajectory CSV");
  add_common(evolve, true);
  add_time(evolve);
  auto* transform = app.add_subcommand("transform", "Apply a frame change to a state");
  add_common(transform, true);
  auto* distance = app.add_subcommand("distance", "Line element and Fubini-Study angle between two states");
  add_common(distance, true);
  auto* bloch = app.add_subcommand("bloch", "Two-level trajectory CSV (t, theta, phi)");
  add_common(bloch, true);
  add_time(bloch);
  auto* verify = app.add_subcommand("verify", "Run the seeded property suite, write a JSON report");
  add_common(verify, false);
  verify->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  verify->add_option("--tolerance", cfg.tolerance, "Override every check tolerance");
  verify->add_option("--n", cfg.n, "Largest dimension checked")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : prepspace::cli::kUsageError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return prepspace::cli::run(cfg, std::cout, std::cerr);
}
