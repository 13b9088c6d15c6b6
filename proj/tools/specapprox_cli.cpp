// Experiment driver: specapprox <decay|verify|classify|cube|oracle>
//   --config <path> [--out <dir>] [--seed <u64>]
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "specapprox/error.hpp"
#include "specapprox/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Best approximation of semigroup solutions by entire solutions of exponential type"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;

  for (auto kind : {specapprox::ExperimentKind::Decay, specapprox::ExperimentKind::Verify,
                    specapprox::ExperimentKind::Classify, specapprox::ExperimentKind::Cube,
                    specapprox::ExperimentKind::Oracle}) {
    auto* sub = app.add_subcommand(specapprox::to_string(kind));
    sub->add_option("--config", config_path, "YAML experiment config")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config 'output')");
    sub->add_option("--seed", seed, "64-bit seed (overrides config 'seed')");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const auto* chosen = app.get_subcommands().front();
  const auto kind = *specapprox::parse_experiment_kind(chosen->get_name());
  try {
    auto config = specapprox::load_config(config_path);
    if (seed) config.seed = *seed;
    const std::filesystem::path out =
        out_dir.empty() ? config.output_dir.value_or("out") : std::filesystem::path(out_dir);
    const auto summary = specapprox::run(kind, config, out);
    std::cout << chosen->get_name() << ": " << summary.message << '\n';
    for (const auto& f : summary.files) std::cout << "  wrote " << f.string() << '\n';
    return 0;
  } catch (const specapprox::ValidationError& e) {
    std::cerr << chosen->get_name() << ": validation error: " << e.what() << '\n';
    return 1;
  } catch (const specapprox::NumericalError& e) {
    std::cerr << chosen->get_name() << ": numerical failure: " << e.what() << '\n';
    return 2;
  }
}
