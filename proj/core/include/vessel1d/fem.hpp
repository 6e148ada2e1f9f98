#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vessel1d/mesh.hpp"
#include "vessel1d/tridiagonal.hpp"

namespace vessel1d {

struct ScenarioSpec;

/// Why a simulation stopped.
///  - Steady: nodal rate max|du|/dt stayed below tolerance for 10 steps.
///  - HorizonReached: advanced to t_end without other events.
///  - NonBiological: an elementwise deformation gradient 1+u_x went below
///    -grad_tolerance; the model has lost its meaning (cells interpenetrate)
///    and the semi-implicit equation turns backward-parabolic.
///  - NumericalBlowup: non-finite or huge nodal values, or a failed step.
enum class Status { Steady, HorizonReached, NonBiological, NumericalBlowup };

std::string_view to_string(Status status);

/// Thrown by step() when the solve produces non-finite nodal values. run()
/// converts this (and every other step failure) into NumericalBlowup status.
class BlowupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nodal displacement field at one time level, with the elementwise
/// deformation gradient grad[e] = 1 + (u[e+1]-u[e])/h.
struct FieldSnapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> grad;
};

/// Builds a snapshot from nodal values, computing the gradient.
FieldSnapshot make_snapshot(double t, std::vector<double> u, const Mesh& mesh);

struct StopControls {
  /// NonBiological when min elementwise gradient < -grad_tolerance. The
  /// default admits elementwise roundoff: regression scenarios drive the
  /// gradient to exactly zero, and a strict 0 trips on ulp-level noise
  /// (observed -9e-16) while genuine violations are orders larger. Set 0
  /// for a strict sign test.
  double grad_tolerance = 1e-12;
  /// Steady when max nodal |u^{k+1}-u^k|/dt < steady_tolerance for 10
  /// consecutive steps. Zero or negative disables steady detection.
  double steady_tolerance = 1e-6;
  /// NumericalBlowup when any |u| exceeds this or becomes non-finite.
  double blowup_threshold = 1e6;
};

struct SimulationResult {
  /// Snapshots at the requested output times, in increasing t. The last
  /// snapshot is always at status_time.
  std::vector<FieldSnapshot> snapshots;
  Status status = Status::HorizonReached;
  double status_time = 0.0;
  std::string status_detail;
  /// Smallest elementwise gradient seen over every step of the run.
  double min_gradient = 1.0;
  double min_gradient_time = 0.0;
  int min_gradient_element = 0;
};

/// Assembles the linear system for the free nodes of the next time level.
///
/// The weak form treats the elastic and viscous fluxes implicitly and the
/// load f at the new time, while the rate coefficient beta*(1+u_x) is frozen
/// at the previous level:
///   - mass block per element: beta(t_next) * grad_k[e] * (h/6)[2 1; 1 2] / dt
///   - stiffness per element: (1 + mu/dt) * (1/h)[1 -1; -1 1], with mu/dt
///     times the same stiffness crediting u_k on the right-hand side
///   - load: f(., t_next) replaced by its nodal interpolant, the integral of
///     (f-1) phi_x done exactly (elementwise trapezoid times constant phi_x)
///   - traction g(t_next) added to the last node's rhs
///   - Dirichlet node x=0 eliminated (row/column dropped; u[0] = 0).
///
/// No absolute value is applied to the gradient coefficient: negative
/// gradients are detected by run(), not clamped here.
TridiagonalSystem assemble_step(const std::vector<double>& u_k, const ScenarioSpec& scenario,
                                const Mesh& mesh, double t_next, double dt);

/// One semi-implicit step: assemble at state.t + dt, solve, rebuild snapshot.
FieldSnapshot step(const FieldSnapshot& state, const ScenarioSpec& scenario, const Mesh& mesh,
                   double dt);

/// Advances from u = 0 at t = 0, recording snapshots at output_times (each
/// must be a multiple of dt inside [0, t_end]) and stopping early per
/// StopControls. Step failures (singular pivot, coefficient evaluation)
/// terminate with NumericalBlowup status rather than throwing.
SimulationResult run(const ScenarioSpec& scenario, const Mesh& mesh, double dt, double t_end,
                     std::span<const double> output_times, const StopControls& controls = {});

/// Warnings (not errors) about scenario data: |f_x(0,0)| > 1e-6 breaks the
/// compatibility of the initial and boundary data, and negative f or g
/// (sampled on a 101 x 11 grid over [0,1] x [0, min(t_end, 1)]) leave the
/// territory of the existence conditions.
std::vector<std::string> check_compatibility(const ScenarioSpec& scenario);

}  // namespace vessel1d
