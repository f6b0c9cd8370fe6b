#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gamcal/errors.hpp"
#include "gamcal/scenarios.hpp"
#include "gamcal/util.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitGateFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitNumeric = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::int64_t seed = -1;  // negative: keep the config's seed
};

gamcal::ScenarioConfig load_config(const CommonArgs& args,
                                   const std::string& scenario) {
  gamcal::ScenarioConfig config;
  if (!args.config_path.empty()) {
    config = gamcal::ScenarioConfig::load(args.config_path);
  } else if (scenario != "ga-selftest") {
    throw gamcal::ConfigError("the " + scenario + " scenario needs --config");
  } else {
    config.config_hash = gamcal::fnv1a64_hex("");
  }
  if (!config.scenario.empty() && config.scenario != scenario) {
    throw gamcal::ConfigError("the config names scenario '" + config.scenario +
                              "' but the command line asked for '" + scenario + "'");
  }
  config.scenario = scenario;
  if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
  return config;
}

int run_command(const CommonArgs& args, const std::string& scenario) {
  const gamcal::ScenarioConfig config = load_config(args, scenario);
  const nlohmann::json summary = gamcal::run_scenario(config, args.out_dir);
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int verify_command(const CommonArgs& args, const std::string& data_path) {
  gamcal::ScenarioConfig config = gamcal::ScenarioConfig::load(args.config_path);
  if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
  const nlohmann::json report = gamcal::verify_data(config, data_path);
  std::cout << report.dump(2) << "\n";
  return report.at("pass").get<bool>() ? kExitOk : kExitGateFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric-algebra dynamics engine: constraint-Hamiltonian solvers "
               "with directed-integral diagnostics"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string verify_data_path;
  std::string chosen;

  const auto add_run = [&](const std::string& name, const std::string& help,
                           bool config_required) {
    CLI::App* sub = app.add_subcommand(name, help);
    auto* opt = sub->add_option("--config", args.config_path, "JSON config file");
    if (config_required) opt->required();
    sub->add_option("--out", args.out_dir, "output directory (default: .)");
    sub->add_option("--seed", args.seed, "override the config's random seed");
    sub->callback([&chosen, name] { chosen = name; });
    return sub;
  };

  add_run("mechanics", "integrate a particle motion under a mechanics Hamiltonian",
          true);
  add_run("scalar-field", "relax a static scalar field and its momenta on a grid",
          true);
  add_run("geodesic", "trace a fixed-magnitude straight-line motion", true);
  add_run("hj-check", "verify a point-source generating family and its motion", true);
  add_run("ga-selftest", "run the algebra identity suite", false);

  CLI::App* verify = app.add_subcommand(
      "verify", "re-derive residuals from stored artifacts and gate them");
  verify->add_option("--config", args.config_path, "JSON config file")->required();
  verify->add_option("--data", verify_data_path, "artifact file to verify")->required();
  verify->add_option("--seed", args.seed, "override the config's random seed");
  verify->callback([&chosen] { chosen = "verify"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (chosen == "verify") return verify_command(args, verify_data_path);
    return run_command(args, chosen);
  } catch (const gamcal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const gamcal::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
