// vesselsim: command-line front end for the 1-d vessel growth solver.
//
// Subcommands: run, sweep, compare, list, check. A run is described either
// by a config file (--config) or by a catalog scenario name (--scenario),
// with individual flags overriding file values.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "vessel1d/commands.hpp"

namespace {

using vessel1d::ConfigData;

struct CommonFlags {
  std::string config_path;
  std::string scenario;
  std::string n;
  std::string dt;
  std::string t_end;
  std::string times;
  std::string out_dir;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_config = true) {
  if (with_config) {
    cmd->add_option("--config", flags.config_path, "Config file (key = value sections)");
    cmd->add_option("--scenario", flags.scenario, "Catalog scenario name (see 'list')");
  }
  cmd->add_option("--n", flags.n, "Number of mesh subintervals");
  cmd->add_option("--dt", flags.dt, "Time step");
  cmd->add_option("--t-end", flags.t_end, "Simulation horizon");
  cmd->add_option("--times", flags.times, "Comma-separated output times (multiples of dt)");
  cmd->add_option("--out", flags.out_dir, "Output directory");
}

ConfigData load_base(const CommonFlags& flags) {
  ConfigData data;
  if (!flags.config_path.empty()) data = ConfigData::parse_file(flags.config_path);
  if (!flags.scenario.empty()) data.scenario["catalog"] = flags.scenario;
  if (!flags.n.empty()) data.numerics["n"] = flags.n;
  if (!flags.dt.empty()) data.numerics["dt"] = flags.dt;
  if (!flags.t_end.empty()) data.scenario["t_end"] = flags.t_end;
  if (!flags.times.empty()) data.output["times"] = flags.times;
  if (!flags.out_dir.empty()) data.output["dir"] = flags.out_dir;
  return data;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw vessel1d::ConfigError("--values: '" + item + "' is not a number");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

// For compare positionals: a scenario is either a catalog name or a path to
// a config file.
ConfigData load_compare_side(const std::string& ref, const CommonFlags& flags) {
  CommonFlags side = flags;
  if (std::filesystem::exists(ref) && std::filesystem::is_regular_file(ref)) {
    side.config_path = ref;
    side.scenario.clear();
  } else {
    side.config_path.clear();
    side.scenario = ref;
  }
  return load_base(side);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-d viscoelastic vessel growth simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one scenario and write CSV + report");
  add_common_flags(run_cmd, run_flags);

  CommonFlags sweep_flags;
  std::string sweep_param;
  std::string sweep_values;
  int workers = 1;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Run one scenario across a list of parameter values");
  add_common_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--param", sweep_param,
                        "Placeholder name used as {name} in expressions, or mu/t_end/n/dt")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep_cmd->add_option("--workers", workers, "Parallel runs (default 1)");

  CommonFlags cmp_flags;
  std::string cmp_a, cmp_b;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "Run two configs and diff their snapshots");
  cmp_cmd->add_option("a", cmp_a, "Catalog name or config path")->required();
  cmp_cmd->add_option("b", cmp_b, "Catalog name or config path")->required();
  add_common_flags(cmp_cmd, cmp_flags, /*with_config=*/false);

  CLI::App* list_cmd = app.add_subcommand("list", "Print the scenario catalog");

  CommonFlags check_flags;
  CLI::App* check_cmd =
      app.add_subcommand("check", "Compatibility and existence-condition report (no run)");
  add_common_flags(check_cmd, check_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return vessel1d::cmd_run(vessel1d::resolve_config(load_base(run_flags)), std::cout,
                               std::cerr);
    }
    if (sweep_cmd->parsed()) {
      return vessel1d::cmd_sweep(load_base(sweep_flags), sweep_param,
                                 parse_value_list(sweep_values), workers, std::cout, std::cerr);
    }
    if (cmp_cmd->parsed()) {
      const auto a = vessel1d::resolve_config(load_compare_side(cmp_a, cmp_flags));
      const auto b = vessel1d::resolve_config(load_compare_side(cmp_b, cmp_flags));
      return vessel1d::cmd_compare(a, b, std::cout, std::cerr);
    }
    if (list_cmd->parsed()) {
      return vessel1d::cmd_list(std::cout);
    }
    if (check_cmd->parsed()) {
      const auto config = vessel1d::resolve_config(load_base(check_flags));
      return vessel1d::cmd_check(config.scenario, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
