#pragma once

// Shared helpers for the test suites: a cross-platform deterministic RNG, a
// dense Gaussian-elimination oracle, and a random expression-text generator.

#include <charconv>
#include <cstdint>
#include <string>
#include <vector>

namespace testutil {

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

/// Dense Gaussian elimination with partial pivoting; the independent oracle
/// for the tridiagonal solver. `a` is row-major n x n.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double m = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= m * a[col][k];
      b[row] -= m * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double s = b[row];
    for (std::size_t k = row + 1; k < n; ++k) s -= a[row][k] * x[k];
    x[row] = s / a[row][row];
  }
  return x;
}

inline std::string number_text(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// Random valid expression text over x and t. Exponents are small integer
/// literals so evaluation stays within real arithmetic.
inline std::string random_expr(SplitMix64& rng, int depth) {
  if (depth <= 0) {
    switch (rng.uniform_int(0, 3)) {
      case 0:
        return "x";
      case 1:
        return "t";
      default:
        return number_text(rng.uniform(-10.0, 10.0));
    }
  }
  switch (rng.uniform_int(0, 9)) {
    case 0:
      return random_expr(rng, depth - 1) + "+" + random_expr(rng, depth - 1);
    case 1:
      return random_expr(rng, depth - 1) + "-" + random_expr(rng, depth - 1);
    case 2:
      return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
    case 3:
      return random_expr(rng, depth - 1) + "/" + random_expr(rng, depth - 1);
    case 4:
      return "-" + random_expr(rng, depth - 1);
    case 5:
      return "(" + random_expr(rng, depth - 1) + ")^" + std::to_string(rng.uniform_int(1, 3));
    case 6:
      return "sin(" + random_expr(rng, depth - 1) + ")";
    case 7:
      return "cos(" + random_expr(rng, depth - 1) + ")";
    case 8:
      return "max(" + random_expr(rng, depth - 1) + "," + random_expr(rng, depth - 1) + ")";
    default:
      return "min(" + random_expr(rng, depth - 1) + "," + random_expr(rng, depth - 1) + ")";
  }
}

}  // namespace testutil
