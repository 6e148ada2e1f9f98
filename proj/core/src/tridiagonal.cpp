#include "vessel1d/tridiagonal.hpp"

#include <cmath>

namespace vessel1d {

void solve_tridiagonal(const TridiagonalSystem& sys, std::vector<double>& scratch,
                       std::vector<double>& out) {
  const std::size_t n = sys.size();
  if (sys.sub.size() != n || sys.sup.size() != n || sys.rhs.size() != n) {
    throw std::invalid_argument("solve_tridiagonal: inconsistent array lengths");
  }
  if (n == 0) {
    out.clear();
    return;
  }
  scratch.resize(n);
  out.resize(n);

  double pivot = sys.diag[0];
  if (std::fabs(pivot) < kSingularPivot) {
    throw SingularSystemError("singular tridiagonal system (pivot at row 0)");
  }
  scratch[0] = sys.sup[0] / pivot;
  out[0] = sys.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.sub[i] * scratch[i - 1];
    if (std::fabs(pivot) < kSingularPivot) {
      throw SingularSystemError("singular tridiagonal system (pivot at row " +
                                std::to_string(i) + ")");
    }
    scratch[i] = sys.sup[i] / pivot;
    out[i] = (sys.rhs[i] - sys.sub[i] * out[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    out[i] -= scratch[i] * out[i + 1];
  }
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
  std::vector<double> scratch;
  std::vector<double> out;
  solve_tridiagonal(sys, scratch, out);
  return out;
}

}  // namespace vessel1d
