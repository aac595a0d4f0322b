#include "app.hpp"

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>

namespace cachewave::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err, const Runner& runner) {
  CLI::App app{"Successful-transmission probability of two-cache coded caching"};
  app.set_version_flag("--version", std::string("cachewave ") + kToolVersion);

  std::string command_name;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  bool check = false;

  app.add_option("command", command_name, "eval|optimize|fig3|fig4|fig5")
      ->required()
      ->check(CLI::IsMember({"eval", "optimize", "fig3", "fig4", "fig5"}));
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  auto* trials_opt =
      app.add_option("--trials", trials, "Monte Carlo trials per estimate");
  app.add_flag("--check", check, "Fail with exit code 4 on oracle disagreement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const Command command = *parse_command(command_name);
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
    if (*seed_opt) {
      cfg.seed = seed;
      cfg.mc.seed = seed;
      cfg.optimizer.ga.seed = seed;
    }
    if (*trials_opt) {
      if (trials == 0) throw ConfigError("--trials: must be positive");
      cfg.mc.n_trials = trials;
    }
    if (out_path.empty()) out_path = cfg.output;
  } catch (const ConfigError& e) {
    err << "cachewave: config error: " << e.what() << '\n';
    return kExitConfig;
  }

  CommandOutput result;
  try {
    result = runner(command, cfg, check);
  } catch (const ConfigError& e) {
    err << "cachewave: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "cachewave: " << command_name << " failed: " << e.what() << '\n';
    return kExitNumeric;
  }

  if (out_path.empty()) {
    out << result.csv << std::flush;
  } else {
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    file << result.csv;
    file.close();
    if (!file) {
      err << "cachewave: cannot write " << out_path << '\n';
      return kExitConfig;
    }
  }

  if (!result.check_failures.empty()) {
    for (const std::string& msg : result.check_failures) {
      err << "cachewave: check failed: " << msg << '\n';
    }
    return kExitCheck;
  }
  return kExitOk;
}

}  // namespace cachewave::cli
