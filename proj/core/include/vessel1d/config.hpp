#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vessel1d/fem.hpp"
#include "vessel1d/scenarios.hpp"

namespace vessel1d {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw key/value content of a run configuration, before expressions are
/// parsed. The file format is flat `key = value` text under the section
/// headers [scenario], [numerics], [output]; expression values are quoted.
/// See the README for the full reference.
struct ConfigData {
  std::map<std::string, std::string> scenario;
  std::map<std::string, std::string> numerics;
  std::map<std::string, std::string> output;

  static ConfigData parse_file(const std::filesystem::path& path);
  static ConfigData parse_text(std::string_view text, std::string_view origin = "<config>");
};

/// A fully validated run: resolved scenario, discretization, output times
/// (multiples of dt), stop controls, and output directory.
struct RunConfig {
  ScenarioSpec scenario;
  int n = 1000;
  double dt = 1e-5;
  std::vector<double> output_times;
  StopControls controls;
  std::filesystem::path out_dir = ".";
};

/// Builds a RunConfig. Throws ConfigError naming the offending key on any
/// invalid value ("scenario.f: ...", "numerics.dt: ...", "output.times: ...").
RunConfig resolve_config(const ConfigData& data);

/// Ten evenly spaced times over (0, t_end], each snapped to the dt grid.
std::vector<double> default_output_times(double t_end, double dt);

/// Substitutes a sweep parameter into `data`: either a textual placeholder
/// "{name}" inside the f/g/beta expression strings, or one of the scalar
/// fields mu, t_end, n, dt. Throws ConfigError when `name` matches nothing.
void substitute_parameter(ConfigData& data, const std::string& name, double value);

}  // namespace vessel1d
