#include <iostream>

#include <CLI11.hpp>

#include "temporalis/run_command.hpp"

int main(int argc, char **argv) {
  CLI::App app{"temporalis: a DatalogMTL reasoner with stable-model "
               "negation over the integer timeline"};
  app.require_subcommand(1);

  temporalis::RunConfig config;
  auto add_common = [&](CLI::App *cmd, bool data, bool query) {
    cmd->add_option("--program", config.program_path, "program file (.dmtl)")
        ->required();
    if (data)
      cmd->add_option("--data", config.data_path, "dataset file (.dfacts)");
    if (query)
      cmd->add_option("--fact", config.fact, "fact, e.g. \"R@[1,2]\"");
    cmd->add_option("--max-states", config.max_states,
                    "state guard for automaton searches");
    cmd->add_option("--max-candidates", config.max_candidates,
                    "candidate guard for enumerations");
    cmd->add_flag("--json", config.json, "compact JSON output");
  };

  CLI::App *check = app.add_subcommand("check", "decide stable-model "
                                                "existence");
  add_common(check, true, false);
  check->add_option("--mode", config.mode,
                    "auto, fp, general, or oracle (default auto)");
  check->add_option("--horizon", config.horizon,
                    "oracle box override, \"lo:hi\"");

  CLI::App *entail = app.add_subcommand("entail", "brave/cautious fact "
                                                  "entailment");
  add_common(entail, true, true);
  entail->add_flag("--brave", config.brave, "some stable model (default)");
  entail->add_flag("--cautious", config.cautious, "all stable models");

  CLI::App *norm = app.add_subcommand("normalize", "rewrite into normal "
                                                   "form");
  add_common(norm, false, false);

  CLI::App *grnd = app.add_subcommand("ground", "print the grounding");
  add_common(grnd, true, false);

  CLI::App *eval = app.add_subcommand("eval", "evaluate a metric fact in "
                                              "an interpretation file");
  add_common(eval, true, true);

  CLI::App *oracle = app.add_subcommand("oracle", "enumerate stable models "
                                                  "by brute force");
  add_common(oracle, true, false);
  oracle->add_option("--horizon", config.horizon, "search box, \"lo:hi\"");

  CLI11_PARSE(app, argc, argv);

  for (CLI::App *cmd : {check, entail, norm, grnd, eval, oracle})
    if (cmd->parsed())
      config.command = cmd->get_name();

  return temporalis::run_command(config, std::cout, std::cerr);
}
