#include "vessel1d/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vessel1d/scenarios.hpp"

namespace vessel1d {

SteadyProfile steady_state(const Expr& f, double g_bar, double t_eval, const Mesh& mesh) {
  const int n = mesh.n();
  SteadyProfile profile;
  profile.u.resize(static_cast<std::size_t>(n) + 1);
  profile.f_part.resize(profile.u.size());
  profile.g_part.resize(profile.u.size());

  profile.f_part[0] = 0.0;
  const double h4 = mesh.h() / 4.0;
  for (int e = 0; e < n; ++e) {
    // Composite Simpson over the 4 subcells of element e.
    const double x0 = mesh.node(e);
    double quad = 0.0;
    double left = f.eval(x0, t_eval) - 1.0;
    for (int s = 0; s < 2; ++s) {
      const double mid = f.eval(x0 + (2 * s + 1) * h4, t_eval) - 1.0;
      const double right = f.eval(x0 + (2 * s + 2) * h4, t_eval) - 1.0;
      quad += (h4 / 3.0) * (left + 4.0 * mid + right);
      left = right;
    }
    profile.f_part[e + 1] = profile.f_part[e] + quad;
  }
  for (int i = 0; i <= n; ++i) {
    profile.g_part[i] = g_bar * mesh.node(i);
    profile.u[i] = profile.f_part[i] + profile.g_part[i];
  }
  return profile;
}

double sup_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("sup_error: fields have different lengths");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  }
  return worst;
}

DecayFit fit_decay_rate(std::span<const std::pair<double, double>> errors) {
  constexpr double kFloor = 1e-13;
  std::vector<std::pair<double, double>> usable;
  usable.reserve(errors.size());
  for (const auto& [t, e] : errors) {
    if (e > kFloor) usable.emplace_back(t, e);
  }
  if (usable.size() < 5) {
    throw std::invalid_argument("fit_decay_rate: need at least 5 samples above the 1e-13 floor");
  }

  // Skip the initial transient: start where the error first drops below half
  // its initial value. If it never does, fit the whole series.
  std::size_t start = 0;
  const double half = usable.front().second / 2.0;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    if (usable[i].second < half) {
      start = i;
      break;
    }
  }
  if (usable.size() - start < 2) start = 0;

  double sum_t = 0.0, sum_y = 0.0;
  const std::size_t m = usable.size() - start;
  for (std::size_t i = start; i < usable.size(); ++i) {
    sum_t += usable[i].first;
    sum_y += std::log(usable[i].second);
  }
  const double mean_t = sum_t / static_cast<double>(m);
  const double mean_y = sum_y / static_cast<double>(m);
  double s_tt = 0.0, s_ty = 0.0, s_yy = 0.0;
  for (std::size_t i = start; i < usable.size(); ++i) {
    const double dt = usable[i].first - mean_t;
    const double dy = std::log(usable[i].second) - mean_y;
    s_tt += dt * dt;
    s_ty += dt * dy;
    s_yy += dy * dy;
  }
  if (s_tt == 0.0) {
    throw std::invalid_argument("fit_decay_rate: all samples at the same time");
  }

  DecayFit fit;
  const double slope = s_ty / s_tt;
  fit.alpha = -slope;
  fit.c = std::exp(mean_y - slope * mean_t);
  fit.window_start = usable[start].first;
  fit.window_end = usable.back().first;
  if (s_yy <= 1e-28) {
    fit.r_squared = 1.0;  // constant series: the flat line fits exactly
  } else {
    const double ss_res = s_yy - s_ty * s_ty / s_tt;
    fit.r_squared = 1.0 - ss_res / s_yy;
  }
  return fit;
}

double mode_timescale(double beta, double mu, int k) {
  if (beta < 0 || mu < 0) throw std::invalid_argument("mode_timescale: negative coefficient");
  if (beta == 0 && mu == 0) {
    throw std::invalid_argument("mode_timescale: beta and mu cannot both be zero");
  }
  if (k < 1) throw std::invalid_argument("mode_timescale: mode number must be >= 1");
  return beta / (static_cast<double>(k) * k) + mu;
}

DimensionlessGroups nondimensionalize(const PhysicalParams& p) {
  for (double v : {p.length_um, p.time_s, p.modulus, p.viscosity, p.friction, p.radius_um,
                   p.protrusion}) {
    if (!(v > 0)) throw std::invalid_argument("nondimensionalize: parameters must be positive");
  }
  DimensionlessGroups out;
  out.beta = 2.0 * p.length_um * p.length_um * p.friction / (p.radius_um * p.modulus * p.time_s);
  out.mu = p.viscosity / (p.modulus * p.time_s);
  out.g = p.protrusion / p.modulus;
  return out;
}

std::pair<double, int> min_gradient(const FieldSnapshot& snap) {
  if (snap.grad.empty()) throw std::invalid_argument("min_gradient: empty snapshot");
  int best = 0;
  for (int e = 1; e < static_cast<int>(snap.grad.size()); ++e) {
    if (snap.grad[e] < snap.grad[best]) best = e;
  }
  return {snap.grad[best], best};
}

TheoremReport check_theorem_conditions(const ScenarioSpec& scenario) {
  constexpr int kNx = 200;  // 201 x samples
  constexpr int kNt = 100;  // 101 t samples
  constexpr double kFdStep = 1e-4;
  constexpr double kCurvTol = 1e-6;

  const Expr& f = scenario.f;
  const Expr& g = scenario.g;
  const double t_end = scenario.t_end;

  TheoremReport report;
  report.min_f = std::numeric_limits<double>::infinity();
  report.min_g = std::numeric_limits<double>::infinity();
  report.min_tip_sum = std::numeric_limits<double>::infinity();
  report.max_fxx = -std::numeric_limits<double>::infinity();

  for (int j = 0; j <= kNt; ++j) {
    const double t = t_end * j / kNt;
    report.max_abs_fx0 = std::max(report.max_abs_fx0, std::fabs(eval_partial_x(f, 0.0, t, kFdStep)));
    const double tip = f.eval(1.0, t) + g.eval(0.0, t);
    report.min_tip_sum = std::min(report.min_tip_sum, tip);
    report.min_g = std::min(report.min_g, g.eval(0.0, t));

    for (int i = 0; i <= kNx; ++i) {
      const double x = static_cast<double>(i) / kNx;
      const double v = f.eval(x, t);
      report.min_f = std::min(report.min_f, v);
      report.max_time_variation =
          std::max(report.max_time_variation, std::fabs(v - f.eval(x, 0.0)));
      // Central second difference, with the stencil held inside [0,1].
      const double xc = std::clamp(x, kFdStep, 1.0 - kFdStep);
      const double fxx = (f.eval(xc + kFdStep, t) - 2.0 * f.eval(xc, t) +
                          f.eval(xc - kFdStep, t)) /
                         (kFdStep * kFdStep);
      report.max_fxx = std::max(report.max_fxx, fxx);
    }
  }

  double f0_min = std::numeric_limits<double>::infinity();
  double f0_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kNx; ++i) {
    const double v = f.eval(static_cast<double>(i) / kNx, 0.0);
    f0_min = std::min(f0_min, v);
    f0_max = std::max(f0_max, v);
  }
  report.oscillation = f0_max - f0_min;

  report.branch_a = report.max_abs_fx0 <= 1e-6 && report.max_fxx <= kCurvTol;
  report.branch_b = report.max_time_variation <= 1e-9 && report.oscillation < 1.0;
  report.common = report.min_f >= 0 && report.min_g >= 0 && report.min_tip_sum > 0;
  return report;
}

std::string TheoremReport::summary() const {
  std::ostringstream os;
  os << "existence conditions (sampled evidence, not proof):\n";
  os << "  common hypotheses (f >= 0, g >= 0, inf f(1,t)+g(t) > 0): "
     << (common ? "satisfied" : "violated") << "\n";
  os << "    min f = " << min_f << ", min g = " << min_g << ", min f(1,t)+g(t) = " << min_tip_sum
     << "\n";
  os << "  branch (a) (f_x(0,t) = 0 and f_xx <= 0): " << (branch_a ? "satisfied" : "violated")
     << "\n";
  os << "    max |f_x(0,t)| = " << max_abs_fx0 << ", max f_xx = " << max_fxx << "\n";
  os << "  branch (b) (f steady in t, max f - min f < 1): "
     << (branch_b ? "satisfied" : "violated") << "\n";
  os << "    max |f(x,t)-f(x,0)| = " << max_time_variation << ", oscillation = " << oscillation;
  return os.str();
}

std::optional<double> steady_reach_time(const SimulationResult& result, double rel_tol) {
  if (result.snapshots.empty()) return std::nullopt;
  const FieldSnapshot& last = result.snapshots.back();
  double scale = 0.0;
  for (double v : last.u) scale = std::max(scale, std::fabs(v));
  const double tol = rel_tol * std::max(scale, 1e-12);

  std::optional<double> reached;
  for (const FieldSnapshot& snap : result.snapshots) {
    if (sup_error(snap.u, last.u) <= tol) {
      if (!reached) reached = snap.t;
    } else {
      reached.reset();
    }
  }
  return reached;
}

}  // namespace vessel1d
