#include "commands.hpp"
#include "config.hpp"

#include "goldshift/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <vector>

using namespace goldshift::app;

int main(int argc, char** argv) {
  CLI::App app{"goldshift: nonsingular Markov shifts on the golden mean shift"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  struct Flag {
    const char* name;
    const char* help;
    std::string value;
    CLI::Option* opt = nullptr;
  };
  std::vector<Flag> flags = {
      {"levels", "number of inductive levels", {}},
      {"profile", "full | desk", {}},
      {"lambda1", "first-level parameter lambda_1 > 1", {}},
      {"seed", "base seed", {}},
      {"samples", "samples / trials / points", {}},
      {"eps", "ratio tolerance", {}},
      {"depth", "pushforward depth", {}},
      {"threads", "worker threads", {}},
      {"precision", "working precision in bits", {}},
      {"j", "target level for the ratio r", {}},
      {"t", "truncation level (0: last)", {}},
      {"cylinder", "symmetric cylinder word for B", {}},
      {"max_shifts", "shifts 4 l k_t tried per sample", {}},
      {"spec", "spec file produced by construct", {}},
      {"out", "output directory for report and series", {}},
  };
  std::string config_path;
  bool timestamp = false;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_flag("--timestamp", timestamp, "record the wall-clock time in the report");
  for (auto& f : flags) f.opt = app.add_option(std::string("--") + f.name, f.value, f.help);

  auto* construct = app.add_subcommand("construct", "build a parameter set and check its conditions");
  auto* verify = app.add_subcommand("verify", "nonsingularity, exactness and conservativity checks");
  auto* experiment = app.add_subcommand("experiment", "numerical experiments");
  std::string kind = "all";
  experiment->add_option("kind", kind, "rn | ratio-set | torus | all");
  for (auto* sub : {construct, verify, experiment}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    for (const auto& f : flags)
      if (f.opt->count()) apply_setting(cfg, f.name, f.value);
    if (timestamp) cfg.timestamp = true;
    apply_seed_environment(cfg);
    validate(cfg);
  } catch (const goldshift::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  CommandResult r;
  if (*construct) {
    r = run_command("construct", cfg, [&] { return cmd_construct(cfg); });
  } else if (*verify) {
    r = run_command("verify", cfg, [&] { return cmd_verify(cfg); });
  } else {
    r = run_command("experiment", cfg, [&] { return cmd_experiment(cfg, parse_experiment_kind(kind)); });
  }
  try {
    emit(r, cfg, std::cout);
  } catch (const goldshift::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (r.report["sections"].contains("diagnostic"))
    std::cerr << "error: " << r.report["sections"]["diagnostic"]["message"].get<std::string>() << "\n";
  return r.exit_code;
}
