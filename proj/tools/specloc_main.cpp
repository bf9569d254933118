#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "specloc/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"specloc: spectral-localizer signatures and invariant oracles for tight-binding models"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  int workers = 0;
  std::optional<std::uint64_t> seed;

  app.add_option("--config", config_path, "run configuration file")->required();
  app.add_option("--out", out_dir, "output directory for CSV/JSON results");
  app.add_option("--workers", workers, "worker threads for grid evaluation");
  app.add_option("--seed", seed, "override the seed list with a single seed");

  auto* sig = app.add_subcommand("sig", "half-signature of the localizer against the oracle");
  auto* sweep = app.add_subcommand("sweep", "inertia sweep over the kappa grid");
  auto* phase = app.add_subcommand("phase", "parameter scan of half-signature and oracle");
  auto* verify = app.add_subcommand("verify-bounds", "randomized verification of the estimate suites");
  auto* oracle = app.add_subcommand("oracle", "invariant oracles for the configured model");
  auto* dump = app.add_subcommand("dump", "text dump of the model Hamiltonian");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    specloc::RunConfig config = specloc::RunConfig::load(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (workers > 0) config.workers = workers;
    if (seed) config.seeds = {*seed};

    if (sig->parsed()) return specloc::cmd_sig(config);
    if (sweep->parsed()) return specloc::cmd_sweep(config);
    if (phase->parsed()) return specloc::cmd_phase(config);
    if (verify->parsed()) return specloc::cmd_verify_bounds(config);
    if (oracle->parsed()) return specloc::cmd_oracle(config);
    if (dump->parsed()) return specloc::cmd_dump(config);
  } catch (const specloc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
