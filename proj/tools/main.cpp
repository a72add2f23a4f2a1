#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace stablab::cli;

  CLI::App app{"stablab: stable-law convergence experiments"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 acceptance failure, 2 usage or validation error, 3 numeric failure.\n\n"
             "Config is a JSON document; omitted fields take these defaults:\n" +
             to_json(ExperimentConfig{}).dump(2));

  std::optional<std::string> config_path;
  Overrides overrides;
  struct Command {
    const char* name;
    const char* help;
  };
  for (const Command cmd : {Command{"sample", "write raw stable or heavy-tailed draws to samples.csv"},
                            Command{"rate", "measure distance decay over n; writes curve.csv and fit.json"},
                            Command{"check", "run the property suites; writes check_report.json"}}) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option_function<std::string>("--config", [&](const std::string& p) { config_path = p; },
                                          "JSON config file");
    sub->add_option_function<std::string>("--out", [&](const std::string& p) { overrides.out = p; },
                                          "existing output directory (overrides config)");
    sub->add_option_function<unsigned>("--threads", [&](unsigned k) { overrides.threads = k; },
                                       "worker threads; never changes results")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { overrides.seed = s; },
                                            "master seed (overrides config)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return run_command(command, config_path, overrides, std::cout, std::cerr);
}
