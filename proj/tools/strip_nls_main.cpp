#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stripnls/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"strip-nls: spectral NLS workbench on the strip"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::vector<std::string> overrides;
  long long seed = -1;
  bool seed_given = false;

  const std::vector<std::string> commands = {"solve",     "linear",         "estimates",
                                             "sharpness", "oracle-compare", "diagnose"};
  std::vector<CLI::App*> subs;
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "config file (key = value lines)")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--set", overrides, "override: key=value (repeatable)");
    sub->add_option("--seed", seed, "random seed override")->each([&](const std::string&) {
      seed_given = true;
    });
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    stripnls::RunConfig cfg = stripnls::parse_config_file(config_path, overrides);
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.out_dir = out_dir;
    if (seed_given) cfg.seed = std::uint64_t(seed);
    return stripnls::run(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "strip-nls: error: %s\n", e.what());
    return 1;
  }
}
