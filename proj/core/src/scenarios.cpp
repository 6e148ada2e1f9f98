#include "vessel1d/scenarios.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace vessel1d {

void ScenarioSpec::validate() const {
  if (g.uses_x()) {
    throw std::invalid_argument("scenario '" + name + "': g must not reference x");
  }
  if (beta.uses_x()) {
    throw std::invalid_argument("scenario '" + name + "': beta must not reference x");
  }
  if (mu < 0) throw std::invalid_argument("scenario '" + name + "': mu must be >= 0");
  if (!(t_end > 0)) throw std::invalid_argument("scenario '" + name + "': t_end must be > 0");
}

namespace {

ScenarioSpec make(std::string name, std::string_view f, std::string_view g, std::string_view beta,
                  double mu, double t_end, std::optional<Status> expected, std::string notes,
                  std::string figure) {
  ScenarioSpec spec{std::move(name), parse_expr(f),    parse_expr(g), parse_expr(beta), mu,
                    t_end,           std::move(expected), std::move(notes), std::move(figure)};
  spec.validate();
  return spec;
}

std::vector<ScenarioSpec> build_catalog() {
  std::vector<ScenarioSpec> entries;
  entries.reserve(13);

  // Friction/viscosity comparisons: f = 1, g = 5.7.
  entries.push_back(make("C1", "1", "5.7", "0.01", 1e-4, 0.1, std::nullopt,
                         "low friction, biological viscosity", "1a"));
  entries.push_back(make("C2", "1", "5.7", "0.01", 1.0, 5.0, std::nullopt,
                         "low friction, exaggerated viscosity", "1b"));
  entries.push_back(make("C3", "1", "5.7", "0.01", 0.0, 0.1, std::nullopt,
                         "low friction, inviscid companion to C1", ""));
  entries.push_back(make("C4", "1", "5.7", "1", 1e-4, 7.0, std::nullopt,
                         "unit friction, biological viscosity", "2a"));
  entries.push_back(make("C5", "1", "5.7", "1", 1.0, 15.0, std::nullopt,
                         "unit friction, exaggerated viscosity", "2b"));
  entries.push_back(make("C6", "1", "5.7", "1", 0.0, 7.0, std::nullopt,
                         "unit friction, inviscid companion to C4", ""));

  // Monotone density profiles.
  entries.push_back(make("A1", "-10*x^2+10+1e-6", "0", "1", 0.0, 10.0, std::nullopt,
                         "density decreasing from the root; converges to the cubic steady profile",
                         "3"));
  entries.push_back(make("A2", "10*x^2+10", "0", "1", 0.0, 10.0, Status::NonBiological,
                         "tip-heavy density; the gradient turns negative near the root around "
                         "t=0.03 and the solution then blows up",
                         "4"));
  entries.push_back(make("A3", "1+x^2", "0", "1", 0.0, 10.0, std::nullopt,
                         "tip-heavy but mild density; stays biological", ""));

  // Oscillatory density profiles.
  entries.push_back(make("B1", "0.4999*cos(100*x)+0.5", "0", "1", 0.0, 1.0, std::nullopt,
                         "fast oscillation with amplitude just under the existence bound", "5"));
  entries.push_back(make("B2", "2*cos(24*x)+2.1", "0", "1", 0.0, 1.0, Status::NonBiological,
                         "oscillation of size 4; the gradient turns negative by t=1e-3", "6"));

  // Growth cases.
  entries.push_back(make("G1", "1", "4.7", "0.01+100*exp(-1.8*t)", 1e-4, 7.0, std::nullopt,
                         "extension without proliferation; friction decays as the vessel detaches",
                         "7"));
  entries.push_back(make("G2", "2*t+1", "4.7", "0.01+100*exp(-1.8*t)", 1e-4, 7.0, std::nullopt,
                         "extension with uniform proliferation (density grows linearly in time)",
                         "8"));
  entries.push_back(make("G3", "max(1-t*x,0)", "0", "1", 0.0, 5.0, std::nullopt,
                         "regression: density dies from the tip inward, no protrusion force",
                         "9"));
  return entries;
}

// Deterministic across platforms (no <random> distributions involved).
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

std::string number_text(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

const std::vector<ScenarioSpec>& catalog() {
  static const std::vector<ScenarioSpec> entries = build_catalog();
  return entries;
}

const ScenarioSpec& catalog_get(std::string_view name) {
  for (const ScenarioSpec& spec : catalog()) {
    if (spec.name == name) return spec;
  }
  std::string names;
  for (const ScenarioSpec& spec : catalog()) {
    if (!names.empty()) names += ", ";
    names += spec.name;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) +
                              "'; available: " + names);
}

std::vector<ScenarioSpec> theorem_family(TheoremBranch branch, std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("theorem_family: count must be >= 1");
  SplitMix64 rng{seed * 0x632BE59BD9B4E019ull + (branch == TheoremBranch::a ? 1 : 2)};

  std::vector<ScenarioSpec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::string f_text;
    if (branch == TheoremBranch::a) {
      const double c0 = rng.uniform(1.0, 10.0);
      const double c1 = rng.uniform(0.0, c0 - 0.1);
      f_text = number_text(c0) + "-" + number_text(c1) + "*x^2";
    } else {
      const double amp = rng.uniform(0.0, 0.49);
      const int k = rng.uniform_int(1, 30);
      const double base = rng.uniform(amp + 0.05, amp + 5.0);
      f_text = number_text(amp) + "*cos(" + std::to_string(k) + "*x)+" + number_text(base);
    }
    const double g_const = rng.uniform(0.0, 5.0);
    std::string name = std::string("family-") + (branch == TheoremBranch::a ? "a" : "b") + "-" +
                       std::to_string(i);
    out.push_back(make(std::move(name), f_text, number_text(g_const), "1", 0.0, 1.0,
                       std::nullopt, "generated member of an existence-condition family", ""));
  }
  return out;
}

}  // namespace vessel1d
