#include "vessel1d/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "vessel1d/expression.hpp"
#include "vessel1d/scenarios.hpp"

namespace vessel1d {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Steady:
      return "Steady";
    case Status::HorizonReached:
      return "HorizonReached";
    case Status::NonBiological:
      return "NonBiological";
    case Status::NumericalBlowup:
      return "NumericalBlowup";
  }
  return "?";
}

FieldSnapshot make_snapshot(double t, std::vector<double> u, const Mesh& mesh) {
  if (static_cast<int>(u.size()) != mesh.node_count()) {
    throw std::invalid_argument("make_snapshot: field size does not match mesh");
  }
  FieldSnapshot snap;
  snap.t = t;
  snap.grad.resize(mesh.n());
  const double h = mesh.h();
  for (int e = 0; e < mesh.n(); ++e) {
    snap.grad[e] = 1.0 + (u[e + 1] - u[e]) / h;
  }
  snap.u = std::move(u);
  return snap;
}

namespace {

/// Shared assembly core. `f_nodes` holds f(x_i, t_next) for every node and
/// `beta_value` is beta(t_next); callers with time-independent coefficients
/// can reuse cached values across steps.
void assemble_core(const std::vector<double>& u_k, std::span<const double> f_nodes,
                   double beta_value, double mu, const Mesh& mesh, double dt,
                   TridiagonalSystem& sys) {
  const int n = mesh.n();
  const double h = mesh.h();
  const double inv_h = 1.0 / h;
  const double stiff = (1.0 + mu / dt) * inv_h;        // implicit flux coefficient
  const double visc_rhs = (mu / dt) * inv_h;           // explicit credit of u_k
  const double mass_scale = beta_value / dt * (h / 6.0);

  sys.resize(static_cast<std::size_t>(n));

  // Free nodes are 1..n; arrays are indexed by node-1. Row 0's coupling to
  // the Dirichlet node carries u=0 and drops out.
  auto add = [&sys, n](int node, double diag, double off_prev, double off_next, double rhs) {
    if (node >= 1) {
      const int i = node - 1;
      sys.diag[i] += diag;
      if (node - 1 >= 1) sys.sub[i] += off_prev;
      if (node + 1 <= n) sys.sup[i] += off_next;
      sys.rhs[i] += rhs;
    }
  };

  for (int e = 0; e < n; ++e) {
    const double ul = u_k[e];
    const double ur = u_k[e + 1];
    const double grad_k = 1.0 + (ur - ul) * inv_h;
    const double w = mass_scale * grad_k;  // element mass block is w*[2 1; 1 2]
    const double load = 0.5 * (f_nodes[e] + f_nodes[e + 1]) - 1.0;

    const double mass_rhs_l = w * (2.0 * ul + ur);
    const double mass_rhs_r = w * (ul + 2.0 * ur);
    const double visc = visc_rhs * (ul - ur);

    add(e, 2.0 * w + stiff, 0.0, w - stiff, mass_rhs_l + visc - load);
    add(e + 1, 2.0 * w + stiff, w - stiff, 0.0, mass_rhs_r - visc + load);
  }
}

void eval_f_nodes(const Expr& f, const Mesh& mesh, double t, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(mesh.node_count()));
  for (int i = 0; i < mesh.node_count(); ++i) {
    out[static_cast<std::size_t>(i)] = f.eval(mesh.node(i), t);
  }
}

std::string format_time(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

}  // namespace

TridiagonalSystem assemble_step(const std::vector<double>& u_k, const ScenarioSpec& scenario,
                                const Mesh& mesh, double t_next, double dt) {
  if (static_cast<int>(u_k.size()) != mesh.node_count()) {
    throw std::invalid_argument("assemble_step: field size does not match mesh");
  }
  if (!(dt > 0)) throw std::invalid_argument("assemble_step: dt must be positive");

  std::vector<double> f_nodes;
  eval_f_nodes(scenario.f, mesh, t_next, f_nodes);
  const double beta_value = scenario.beta.eval(0.0, t_next);

  TridiagonalSystem sys;
  assemble_core(u_k, f_nodes, beta_value, scenario.mu, mesh, dt, sys);
  sys.rhs.back() += scenario.g.eval(0.0, t_next);
  return sys;
}

FieldSnapshot step(const FieldSnapshot& state, const ScenarioSpec& scenario, const Mesh& mesh,
                   double dt) {
  TridiagonalSystem sys = assemble_step(state.u, scenario, mesh, state.t + dt, dt);
  std::vector<double> free_nodes = solve_tridiagonal(sys);

  std::vector<double> u(static_cast<std::size_t>(mesh.node_count()));
  u[0] = 0.0;
  std::copy(free_nodes.begin(), free_nodes.end(), u.begin() + 1);
  for (double v : u) {
    if (!std::isfinite(v)) {
      throw BlowupError("step: non-finite nodal value");
    }
  }
  return make_snapshot(state.t + dt, std::move(u), mesh);
}

SimulationResult run(const ScenarioSpec& scenario, const Mesh& mesh, double dt, double t_end,
                     std::span<const double> output_times, const StopControls& controls) {
  if (!(dt > 0)) throw std::invalid_argument("run: dt must be positive");
  if (!(t_end > 0)) throw std::invalid_argument("run: t_end must be positive");

  auto step_index = [dt](double t) -> std::int64_t {
    const double ratio = t / dt;
    const auto k = static_cast<std::int64_t>(std::llround(ratio));
    if (std::fabs(static_cast<double>(k) - ratio) > 1e-9 * std::max(1.0, std::fabs(ratio))) {
      return -1;
    }
    return k;
  };

  const std::int64_t total_steps = step_index(t_end);
  if (total_steps < 1) {
    throw std::invalid_argument("run: t_end must be a positive multiple of dt");
  }

  std::vector<std::int64_t> output_steps;
  output_steps.reserve(output_times.size());
  for (double t : output_times) {
    const std::int64_t k = step_index(t);
    if (k < 0 || k > total_steps) {
      throw std::invalid_argument("run: output time " + format_time(t) +
                                  " is not a multiple of dt inside [0, t_end]");
    }
    output_steps.push_back(k);
  }
  std::sort(output_steps.begin(), output_steps.end());
  output_steps.erase(std::unique(output_steps.begin(), output_steps.end()), output_steps.end());

  const int n = mesh.n();
  const double inv_h = 1.0 / mesh.h();

  SimulationResult result;
  result.min_gradient = 1.0;
  result.min_gradient_time = 0.0;
  result.min_gradient_element = 0;

  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> u_next(u.size(), 0.0);
  std::vector<double> f_nodes;
  std::vector<double> scratch;
  std::vector<double> free_nodes;
  TridiagonalSystem sys;

  const bool f_static = !scenario.f.uses_t();
  const bool beta_static = !scenario.beta.uses_t();
  double beta_value = 0.0;

  auto record = [&](double t, const std::vector<double>& field) {
    if (!result.snapshots.empty() && result.snapshots.back().t >= t) return;
    result.snapshots.push_back(make_snapshot(t, field, mesh));
  };

  auto finish = [&](Status status, double t, std::string detail,
                    const std::vector<double>& field) {
    result.status = status;
    result.status_time = t;
    result.status_detail = std::move(detail);
    record(t, field);
    return result;
  };

  try {
    eval_f_nodes(scenario.f, mesh, 0.0, f_nodes);
    beta_value = scenario.beta.eval(0.0, 0.0);
  } catch (const EvalError& e) {
    return finish(Status::NumericalBlowup, 0.0,
                  std::string("coefficient evaluation failed: ") + e.what(), u);
  }

  std::size_t next_output = 0;
  while (next_output < output_steps.size() && output_steps[next_output] == 0) {
    record(0.0, u);
    ++next_output;
  }

  int steady_streak = 0;
  for (std::int64_t k = 1; k <= total_steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * dt;
    const double t = static_cast<double>(k) * dt;
    try {
      if (!f_static) eval_f_nodes(scenario.f, mesh, t, f_nodes);
      if (!beta_static) beta_value = scenario.beta.eval(0.0, t);
      assemble_core(u, f_nodes, beta_value, scenario.mu, mesh, dt, sys);
      sys.rhs.back() += scenario.g.eval(0.0, t);
      solve_tridiagonal(sys, scratch, free_nodes);
    } catch (const std::runtime_error& e) {
      // Singular pivot or a coefficient that evaluated non-finite: report as
      // numerical blow-up at the last valid state.
      return finish(Status::NumericalBlowup, t_prev,
                    std::string("step to t=") + format_time(t) + " failed: " + e.what(), u);
    }

    u_next[0] = 0.0;
    std::copy(free_nodes.begin(), free_nodes.end(), u_next.begin() + 1);

    bool finite = true;
    double max_abs = 0.0;
    double max_rate = 0.0;
    for (std::size_t i = 0; i < u_next.size(); ++i) {
      const double v = u_next[i];
      if (!std::isfinite(v)) {
        finite = false;
        break;
      }
      max_abs = std::max(max_abs, std::fabs(v));
      max_rate = std::max(max_rate, std::fabs(v - u[i]));
    }
    max_rate /= dt;

    if (!finite || max_abs > controls.blowup_threshold) {
      std::string detail = finite ? "max |u| exceeded " + format_time(controls.blowup_threshold)
                                  : "non-finite nodal value";
      return finish(Status::NumericalBlowup, t, std::move(detail), u_next);
    }

    double min_grad = std::numeric_limits<double>::infinity();
    int min_elem = 0;
    for (int e = 0; e < n; ++e) {
      const double g = 1.0 + (u_next[e + 1] - u_next[e]) * inv_h;
      if (g < min_grad) {
        min_grad = g;
        min_elem = e;
      }
    }
    if (min_grad < result.min_gradient) {
      result.min_gradient = min_grad;
      result.min_gradient_time = t;
      result.min_gradient_element = min_elem;
    }

    if (min_grad < -controls.grad_tolerance) {
      std::ostringstream detail;
      detail << "deformation gradient " << min_grad << " in element " << min_elem << " (x in ["
             << mesh.node(min_elem) << ", " << mesh.node(min_elem + 1) << "])";
      return finish(Status::NonBiological, t, detail.str(), u_next);
    }

    u.swap(u_next);

    if (controls.steady_tolerance > 0 && max_rate < controls.steady_tolerance) {
      if (++steady_streak >= 10) {
        std::string detail = "max |du|/dt below " + format_time(controls.steady_tolerance) +
                             " for 10 consecutive steps";
        return finish(Status::Steady, t, std::move(detail), u);
      }
    } else {
      steady_streak = 0;
    }

    if (next_output < output_steps.size() && output_steps[next_output] == k) {
      record(t, u);
      ++next_output;
    }
  }

  return finish(Status::HorizonReached, static_cast<double>(total_steps) * dt,
                "reached t_end", u);
}

std::vector<std::string> check_compatibility(const ScenarioSpec& scenario) {
  std::vector<std::string> warnings;

  const double fx00 = eval_partial_x(scenario.f, 0.0, 0.0, 1e-6);
  if (std::fabs(fx00) > 1e-6) {
    std::ostringstream os;
    os << "f_x(0,0) = " << fx00
       << "; nonzero values are incompatible with the initial and boundary data";
    warnings.push_back(os.str());
  }

  const double t_max = std::min(scenario.t_end, 1.0);
  double min_f = std::numeric_limits<double>::infinity();
  double min_f_x = 0.0, min_f_t = 0.0;
  double min_g = std::numeric_limits<double>::infinity();
  double min_g_t = 0.0;
  for (int j = 0; j <= 10; ++j) {
    const double t = t_max * j / 10.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      const double v = scenario.f.eval(x, t);
      if (v < min_f) {
        min_f = v;
        min_f_x = x;
        min_f_t = t;
      }
    }
    const double gv = scenario.g.eval(0.0, t);
    if (gv < min_g) {
      min_g = gv;
      min_g_t = t;
    }
  }
  if (min_f < 0) {
    std::ostringstream os;
    os << "f < 0 (sampled minimum " << min_f << " at x=" << min_f_x << ", t=" << min_f_t
       << "); the existence conditions assume f >= 0";
    warnings.push_back(os.str());
  }
  if (min_g < 0) {
    std::ostringstream os;
    os << "g < 0 (sampled minimum " << min_g << " at t=" << min_g_t
       << "); the existence conditions assume g >= 0";
    warnings.push_back(os.str());
  }
  return warnings;
}

}  // namespace vessel1d
