#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vessel1d/expression.hpp"
#include "vessel1d/fem.hpp"

namespace vessel1d {

/// One full problem instance: density f(x,t), tip protrusion g(t), friction
/// beta(t), viscosity mu, and the run horizon. All quantities are
/// dimensionless (reference density 1, lengths in units of the initial
/// vessel length, time in days; see analysis::nondimensionalize).
struct ScenarioSpec {
  std::string name;
  Expr f;
  Expr g;
  Expr beta;
  double mu = 0.0;
  double t_end = 1.0;
  /// For catalog entries: the terminal status the scenario is known to
  /// produce. Unset means "expected to stay biological" (gradient never
  /// goes noticeably negative), without pinning Steady vs HorizonReached.
  std::optional<Status> expected_status;
  std::string notes;
  /// Figure label the scenario reproduces ("1a".."9"), empty for ad-hoc runs.
  std::string figure;

  bool expects_biological() const {
    return !expected_status ||
           *expected_status == Status::Steady ||
           *expected_status == Status::HorizonReached;
  }

  /// Enforces the binding rules: g and beta may reference t only, mu >= 0,
  /// t_end > 0. Throws std::invalid_argument.
  void validate() const;
};

/// The named experiment catalog (14 entries):
///   C1..C6  friction/viscosity comparisons (f=1, g=5.7)
///   A1..A3  monotone-density examples (decreasing density vs. tip-heavy)
///   B1, B2  oscillatory-density examples
///   G1..G3  growth cases: extension without proliferation, with
///           proliferation, and regression
const std::vector<ScenarioSpec>& catalog();

/// Looks up a catalog entry. Throws std::invalid_argument listing the
/// available names when `name` is unknown.
const ScenarioSpec& catalog_get(std::string_view name);

enum class TheoremBranch { a, b };

/// Deterministic pseudo-random families inside the sufficient conditions for
/// global biological solutions:
///   branch a: f = c0 - c1*x^2 with c0 in [1,10], c1 in [0, c0-0.1]
///             (so f_x(0,t) = 0, f_xx <= 0, f(1) >= 0.1), g constant in [0,5]
///   branch b: f = A*cos(k*x) + B with A in [0,0.49], k in {1..30},
///             B in [A+0.05, A+5] (so f > 0 and max f - min f < 1),
///             g constant in [0,5]
/// Same (branch, seed, count) always yields the same list.
std::vector<ScenarioSpec> theorem_family(TheoremBranch branch, std::uint64_t seed, int count);

}  // namespace vessel1d
