#include "vessel1d/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace vessel1d {
namespace {

/// Shortest round-trip decimal form, so regenerated CSVs are byte-identical.
void append_number(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

std::string number(double value) {
  std::string s;
  append_number(s, value);
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

std::string snapshots_csv(const SimulationResult& result, const Mesh& mesh) {
  std::string csv = "t,x,u,grad\n";
  csv.reserve(csv.size() + result.snapshots.size() * (mesh.node_count()) * 32);
  for (const FieldSnapshot& snap : result.snapshots) {
    for (int i = 0; i < mesh.node_count(); ++i) {
      append_number(csv, snap.t);
      csv.push_back(',');
      append_number(csv, mesh.node(i));
      csv.push_back(',');
      append_number(csv, snap.u[static_cast<std::size_t>(i)]);
      csv.push_back(',');
      // Gradient is elementwise; each node reports its right-hand element,
      // the last node repeats the final element.
      const int e = std::min(i, mesh.n() - 1);
      append_number(csv, snap.grad[static_cast<std::size_t>(e)]);
      csv.push_back('\n');
    }
  }
  return csv;
}

std::string run_report(const RunConfig& config, const SimulationResult& result) {
  std::ostringstream os;
  const ScenarioSpec& scenario = config.scenario;
  os << "scenario: " << scenario.name << "\n";
  os << "  f = " << scenario.f.source() << "\n";
  os << "  g = " << scenario.g.source() << "\n";
  os << "  beta = " << scenario.beta.source() << "\n";
  os << "  mu = " << number(scenario.mu) << ", t_end = " << number(scenario.t_end) << "\n";
  os << "numerics: n = " << config.n << ", dt = " << number(config.dt) << "\n";
  os << "\n";
  os << "status: " << to_string(result.status) << "\n";
  os << "status_time: " << number(result.status_time) << "\n";
  if (!result.status_detail.empty()) os << "detail: " << result.status_detail << "\n";
  os << "min gradient over run: " << number(result.min_gradient) << " at t="
     << number(result.min_gradient_time) << ", element " << result.min_gradient_element << "\n";

  os << "\ntrajectory (per output time):\n";
  os << "  t, tip u, min gradient\n";
  for (const FieldSnapshot& snap : result.snapshots) {
    const auto [mg, elem] = min_gradient(snap);
    os << "  " << number(snap.t) << ", " << number(snap.u.back()) << ", " << number(mg) << "\n";
  }
  if (auto reach = steady_reach_time(result)) {
    os << "settles within 1% of final profile at t=" << number(*reach) << "\n";
  }

  os << "\n" << check_theorem_conditions(scenario).summary() << "\n";

  os << "\ncompatibility:\n";
  const std::vector<std::string> warnings = check_compatibility(scenario);
  if (warnings.empty()) {
    os << "  no warnings\n";
  } else {
    for (const std::string& w : warnings) os << "  warning: " << w << "\n";
  }
  return os.str();
}

}  // namespace

int exit_code(Status status) {
  switch (status) {
    case Status::Steady:
    case Status::HorizonReached:
      return 0;
    case Status::NonBiological:
      return 2;
    case Status::NumericalBlowup:
      return 3;
  }
  return 1;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Mesh mesh(config.n);
    const SimulationResult result = run(config.scenario, mesh, config.dt, config.scenario.t_end,
                                        config.output_times, config.controls);

    std::filesystem::create_directories(config.out_dir);
    write_file(config.out_dir / "snapshots.csv", snapshots_csv(result, mesh));
    write_file(config.out_dir / "report.txt", run_report(config, result));

    out << config.scenario.name << ": " << to_string(result.status) << " at t="
        << number(result.status_time);
    if (!result.status_detail.empty()) out << " (" << result.status_detail << ")";
    out << "\n";
    out << "wrote " << (config.out_dir / "snapshots.csv").string() << ", "
        << (config.out_dir / "report.txt").string() << "\n";
    return exit_code(result.status);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::vector<SweepRow> sweep_runs(const ConfigData& base, const std::string& parameter,
                                 std::span<const double> values, int workers) {
  if (values.empty()) throw ConfigError("sweep: empty value list");

  std::vector<RunConfig> configs;
  configs.reserve(values.size());
  for (double value : values) {
    ConfigData data = base;
    substitute_parameter(data, parameter, value);
    configs.push_back(resolve_config(data));
  }

  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  const int thread_count =
      std::clamp<int>(workers, 1, static_cast<int>(values.size()));

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size() || failed.load()) return;
      try {
        const RunConfig& config = configs[i];
        const Mesh mesh(config.n);
        const SimulationResult result = run(config.scenario, mesh, config.dt,
                                            config.scenario.t_end, config.output_times,
                                            config.controls);
        rows[i] = SweepRow{values[i], result.status, result.status_time, result.min_gradient,
                           result.snapshots.empty() ? 0.0 : result.snapshots.back().u.back()};
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        if (failure.empty()) failure = e.what();
      }
    }
  };

  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) {
    throw ConfigError("sweep: a run failed: " + failure);
  }
  return rows;
}

int cmd_sweep(const ConfigData& base, const std::string& parameter,
              const std::vector<double>& values, int workers, std::ostream& out,
              std::ostream& err) {
  try {
    const std::vector<SweepRow> rows = sweep_runs(base, parameter, values, workers);

    std::string csv = "value,status,status_time,min_gradient,tip_u_final\n";
    for (const SweepRow& row : rows) {
      append_number(csv, row.value);
      csv.push_back(',');
      csv.append(to_string(row.status));
      csv.push_back(',');
      append_number(csv, row.status_time);
      csv.push_back(',');
      append_number(csv, row.min_gradient);
      csv.push_back(',');
      append_number(csv, row.tip_u_final);
      csv.push_back('\n');
    }

    std::filesystem::path dir = ".";
    if (auto it = base.output.find("dir"); it != base.output.end()) dir = it->second;
    std::filesystem::create_directories(dir);
    write_file(dir / "sweep.csv", csv);

    out << "sweep over '" << parameter << "' (" << values.size() << " values):\n" << csv;
    out << "wrote " << (dir / "sweep.csv").string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

CompareReport compare_runs(const RunConfig& a, const RunConfig& b) {
  if (a.n != b.n || a.dt != b.dt || a.output_times != b.output_times) {
    throw ConfigError("compare: runs must share n, dt, and output times");
  }

  const Mesh mesh(a.n);
  const SimulationResult ra =
      run(a.scenario, mesh, a.dt, a.scenario.t_end, a.output_times, a.controls);
  const SimulationResult rb =
      run(b.scenario, mesh, b.dt, b.scenario.t_end, b.output_times, b.controls);

  CompareReport report;
  report.status_a = ra.status;
  report.status_b = rb.status;
  report.steady_time_a = steady_reach_time(ra);
  report.steady_time_b = steady_reach_time(rb);

  std::size_t i = 0, j = 0;
  while (i < ra.snapshots.size() && j < rb.snapshots.size()) {
    const double ta = ra.snapshots[i].t;
    const double tb = rb.snapshots[j].t;
    if (ta < tb) {
      ++i;
    } else if (tb < ta) {
      ++j;
    } else {
      const double d = sup_error(ra.snapshots[i].u, rb.snapshots[j].u);
      report.times.push_back(ta);
      report.sup_diff.push_back(d);
      report.max_diff = std::max(report.max_diff, d);
      ++i;
      ++j;
    }
  }
  return report;
}

int cmd_compare(const RunConfig& a, const RunConfig& b, std::ostream& out, std::ostream& err) {
  try {
    const CompareReport report = compare_runs(a, b);
    out << "compare " << a.scenario.name << " vs " << b.scenario.name << "\n";
    out << "  t, sup|u_a - u_b|\n";
    for (std::size_t i = 0; i < report.times.size(); ++i) {
      out << "  " << number(report.times[i]) << ", " << number(report.sup_diff[i]) << "\n";
    }
    out << "max difference: " << number(report.max_diff) << "\n";
    out << a.scenario.name << ": " << to_string(report.status_a) << ", settles at t="
        << (report.steady_time_a ? number(*report.steady_time_a) : "-") << "\n";
    out << b.scenario.name << ": " << to_string(report.status_b) << ", settles at t="
        << (report.steady_time_b ? number(*report.steady_time_b) : "-") << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_list(std::ostream& out) {
  out << std::left << std::setw(12) << "name" << std::setw(24) << "f" << std::setw(8) << "g"
      << std::setw(22) << "beta" << std::setw(9) << "mu" << std::setw(7) << "t_end"
      << std::setw(15) << "expected" << std::setw(5) << "fig"
      << "notes" << "\n";
  for (const ScenarioSpec& s : catalog()) {
    out << std::left << std::setw(12) << s.name << std::setw(24) << s.f.source() << std::setw(8)
        << s.g.source() << std::setw(22) << s.beta.source() << std::setw(9) << number(s.mu)
        << std::setw(7) << number(s.t_end) << std::setw(15)
        << (s.expected_status ? std::string(to_string(*s.expected_status)) : "biological")
        << std::setw(5) << (s.figure.empty() ? "-" : s.figure) << s.notes << "\n";
  }
  return 0;
}

int cmd_check(const ScenarioSpec& scenario, std::ostream& out) {
  out << "scenario: " << scenario.name << "\n";
  const std::vector<std::string> warnings = check_compatibility(scenario);
  if (warnings.empty()) {
    out << "compatibility: no warnings\n";
  } else {
    for (const std::string& w : warnings) out << "compatibility warning: " << w << "\n";
  }
  out << check_theorem_conditions(scenario).summary() << "\n";
  return 0;
}

}  // namespace vessel1d
