#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "vessel1d/analysis.hpp"
#include "vessel1d/config.hpp"

namespace vessel1d {

/// Process exit code for a terminal status: 0 for Steady/HorizonReached,
/// 2 for NonBiological, 3 for NumericalBlowup. (1 is reserved for usage and
/// config errors.)
int exit_code(Status status);

/// Simulates `config`, writes snapshots.csv and report.txt under
/// config.out_dir, and prints a short summary to `out`. Returns the exit
/// code for the run's terminal status, or 1 on I/O failure.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SweepRow {
  double value = 0.0;
  Status status = Status::HorizonReached;
  double status_time = 0.0;
  double min_gradient = 0.0;
  double tip_u_final = 0.0;
};

/// One run per value, fanned out over up to `workers` threads. Rows come
/// back in the order of `values` regardless of completion order. All
/// configs are resolved (and any config error raised) before any run starts.
std::vector<SweepRow> sweep_runs(const ConfigData& base, const std::string& parameter,
                                 std::span<const double> values, int workers);

/// sweep_runs plus sweep.csv in the base config's output directory.
int cmd_sweep(const ConfigData& base, const std::string& parameter,
              const std::vector<double>& values, int workers, std::ostream& out,
              std::ostream& err);

struct CompareReport {
  std::vector<double> times;     ///< output times recorded by both runs
  std::vector<double> sup_diff;  ///< max-norm difference of u at those times
  double max_diff = 0.0;
  Status status_a = Status::HorizonReached;
  Status status_b = Status::HorizonReached;
  std::optional<double> steady_time_a;  ///< see steady_reach_time
  std::optional<double> steady_time_b;
};

/// Runs both configs (which must share n, dt, and output times) and reports
/// the per-output-time difference plus when each run settles.
CompareReport compare_runs(const RunConfig& a, const RunConfig& b);

int cmd_compare(const RunConfig& a, const RunConfig& b, std::ostream& out, std::ostream& err);

/// Prints the scenario catalog (name, coefficients, expected outcome, figure).
int cmd_list(std::ostream& out);

/// Prints compatibility warnings and the sampled existence-condition report
/// without running anything.
int cmd_check(const ScenarioSpec& scenario, std::ostream& out);

}  // namespace vessel1d
