#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vessel1d/tridiagonal.hpp"

using namespace vessel1d;

namespace {

TridiagonalSystem random_dominant(testutil::SplitMix64& rng, std::size_t n) {
  TridiagonalSystem sys;
  sys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.sub[i] = i == 0 ? 0.0 : rng.uniform(-1.0, 1.0);
    sys.sup[i] = i == n - 1 ? 0.0 : rng.uniform(-1.0, 1.0);
    // Strict diagonal dominance keeps the oracle comparison clean.
    sys.diag[i] = (2.5 + rng.uniform(0.0, 1.0)) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    sys.rhs[i] = rng.uniform(-10.0, 10.0);
  }
  return sys;
}

std::vector<std::vector<double>> to_dense(const TridiagonalSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = sys.diag[i];
    if (i > 0) a[i][i - 1] = sys.sub[i];
    if (i + 1 < n) a[i][i + 1] = sys.sup[i];
  }
  return a;
}

double residual_norm(const TridiagonalSystem& sys, const std::vector<double>& x) {
  double worst = 0.0;
  const std::size_t n = sys.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = sys.diag[i] * x[i] - sys.rhs[i];
    if (i > 0) r += sys.sub[i] * x[i - 1];
    if (i + 1 < n) r += sys.sup[i] * x[i + 1];
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

}  // namespace

TEST_CASE("identity system returns the right-hand side") {
  TridiagonalSystem sys;
  sys.resize(4);
  for (std::size_t i = 0; i < 4; ++i) {
    sys.diag[i] = 1.0;
    sys.rhs[i] = static_cast<double>(i) - 1.5;
  }
  const auto x = solve_tridiagonal(sys);
  for (std::size_t i = 0; i < 4; ++i) CHECK(x[i] == sys.rhs[i]);
}

TEST_CASE("matches the dense elimination oracle") {
  testutil::SplitMix64 rng{4321};

  SUBCASE("one 5x5 instance") {
    const TridiagonalSystem sys = random_dominant(rng, 5);
    const auto x = solve_tridiagonal(sys);
    const auto ref = testutil::dense_solve(to_dense(sys), sys.rhs);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::fabs(x[i] - ref[i]) <= 1e-12);
  }

  SUBCASE("100 random sizes") {
    for (int trial = 0; trial < 100; ++trial) {
      const auto n = static_cast<std::size_t>(rng.uniform_int(2, 60));
      const TridiagonalSystem sys = random_dominant(rng, n);
      const auto x = solve_tridiagonal(sys);
      const auto ref = testutil::dense_solve(to_dense(sys), sys.rhs);
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(std::fabs(x[i] - ref[i]) <= 1e-12 * std::max(1.0, std::fabs(ref[i])));
      }
    }
  }
}

TEST_CASE("residual stays within the advertised bound") {
  testutil::SplitMix64 rng{99};
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 200));
    const TridiagonalSystem sys = random_dominant(rng, n);
    const auto x = solve_tridiagonal(sys);

    double a_norm = 0.0, x_norm = 0.0, b_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a_norm = std::max({a_norm, std::fabs(sys.sub[i]), std::fabs(sys.diag[i]),
                         std::fabs(sys.sup[i])});
      x_norm = std::max(x_norm, std::fabs(x[i]));
      b_norm = std::max(b_norm, std::fabs(sys.rhs[i]));
    }
    CHECK(residual_norm(sys, x) <= 1e-10 * (a_norm * x_norm + b_norm));
  }
}

TEST_CASE("singular systems are reported") {
  TridiagonalSystem sys;
  sys.resize(3);
  sys.diag = {1.0, 0.0, 1.0};  // zero row pivot
  sys.rhs = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(solve_tridiagonal(sys), SingularSystemError);

  // Elimination can also hit a tiny pivot on a structurally nonzero row.
  TridiagonalSystem cancel;
  cancel.resize(2);
  cancel.diag = {1.0, 1.0};
  cancel.sup = {1.0, 0.0};
  cancel.sub = {0.0, 1.0};  // second pivot becomes 1 - 1*1 = 0
  cancel.rhs = {1.0, 1.0};
  CHECK_THROWS_AS(solve_tridiagonal(cancel), SingularSystemError);
}

TEST_CASE("inconsistent dimensions are rejected") {
  TridiagonalSystem sys;
  sys.resize(3);
  sys.sub.pop_back();
  CHECK_THROWS_AS(solve_tridiagonal(sys), std::invalid_argument);
}
