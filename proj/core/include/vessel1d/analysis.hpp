#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vessel1d/expression.hpp"
#include "vessel1d/fem.hpp"
#include "vessel1d/mesh.hpp"

namespace vessel1d {

struct ScenarioSpec;

/// Analytic steady profile u_s(x) = F(x) + G(x) on a mesh, with
/// F(x) = integral_0^x (f(s) - 1) ds and G(x) = g_bar * x.
struct SteadyProfile {
  std::vector<double> u;
  std::vector<double> f_part;
  std::vector<double> g_part;
};

/// Evaluates the steady profile nodewise; the integral uses composite
/// Simpson quadrature on a 4x-refined mesh, so its error is far below the
/// solver's.
SteadyProfile steady_state(const Expr& f, double g_bar, double t_eval, const Mesh& mesh);

/// Max-norm distance between two nodal fields of equal length.
double sup_error(std::span<const double> a, std::span<const double> b);

/// Result of fitting error(t) ~ c * exp(-alpha * t).
struct DecayFit {
  double alpha = 0.0;
  double c = 0.0;
  double r_squared = 0.0;
  double window_start = 0.0;
  double window_end = 0.0;
};

/// Least-squares line through (t, log error). Samples at or below the 1e-13
/// floating-point floor are dropped; at least 5 must survive. The fit window
/// starts where the error first falls below half its initial value (skipping
/// the transient); if it never does, all samples are used.
DecayFit fit_decay_rate(std::span<const std::pair<double, double>> errors);

/// Relaxation time scale beta/k^2 + mu of spatial mode k.
double mode_timescale(double beta, double mu, int k);

/// Dimensional parameters of the vessel model. Units: length_um in
/// micrometers, time_s in seconds, modulus and protrusion in pN/um^2,
/// viscosity in pN*s/um^2, friction in pN*s/um^3, radius_um in micrometers.
struct PhysicalParams {
  double length_um;
  double time_s;
  double modulus;
  double viscosity;
  double friction;
  double radius_um;
  double protrusion;
};

struct DimensionlessGroups {
  double beta;
  double mu;
  double g;
};

/// beta = 2 L^2 beta~ / (r E T), mu = mu~ / (E T), g = G~ / E.
DimensionlessGroups nondimensionalize(const PhysicalParams& p);

/// Smallest elementwise deformation gradient and the element holding it.
std::pair<double, int> min_gradient(const FieldSnapshot& snap);

/// Sampled evidence for the sufficient existence conditions. All booleans
/// come from dense grid sampling with finite differences; they are evidence,
/// not proof.
struct TheoremReport {
  bool branch_a = false;  ///< f_x(0,t) = 0 and f_xx <= 0 everywhere sampled
  bool branch_b = false;  ///< f time-independent and max f - min f < 1
  bool common = false;    ///< f >= 0, g >= 0, and min over t of f(1,t)+g(t) > 0

  double max_abs_fx0 = 0.0;      ///< max over t of |f_x(0,t)|
  double max_fxx = 0.0;          ///< max sampled f_xx
  double max_time_variation = 0.0;  ///< max |f(x,t) - f(x,0)|
  double oscillation = 0.0;      ///< max f - min f at t = 0
  double min_tip_sum = 0.0;      ///< min over t of f(1,t) + g(t)
  double min_f = 0.0;
  double min_g = 0.0;

  std::string summary() const;
};

/// Samples on a 201-point x grid and a 101-point t grid over
/// [0,1] x [0, t_end]. f_x(0,t) uses the one-sided stencil, f_xx central
/// differences with step 1e-4 and tolerance 1e-6; time independence is
/// |f(x,t)-f(x,0)| <= 1e-9.
TheoremReport check_theorem_conditions(const ScenarioSpec& scenario);

/// First recorded output time from which the solution stays within
/// rel_tol * sup|u_final| (max-norm) of the final snapshot -- the time the
/// trajectory visually merges with its last curve. Empty when no snapshot
/// qualifies or the result has no snapshots.
std::optional<double> steady_reach_time(const SimulationResult& result, double rel_tol = 0.01);

}  // namespace vessel1d
