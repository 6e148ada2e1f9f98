#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vessel1d {

/// Thrown when forward elimination meets a pivot below the singularity
/// threshold. For the time-stepping systems this signals loss of
/// parabolicity (a strongly negative deformation gradient).
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tridiagonal linear system A u = rhs. Row i couples sub[i], diag[i],
/// sup[i]; sub[0] and sup[size-1] are ignored. All four arrays have equal
/// length.
struct TridiagonalSystem {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> sup;
  std::vector<double> rhs;

  std::size_t size() const { return diag.size(); }
  void resize(std::size_t n) {
    sub.assign(n, 0.0);
    diag.assign(n, 0.0);
    sup.assign(n, 0.0);
    rhs.assign(n, 0.0);
  }
};

/// Pivots smaller than this in magnitude raise SingularSystemError.
inline constexpr double kSingularPivot = 1e-14;

/// Thomas algorithm (forward elimination + back substitution).
/// `scratch` and `out` are resized as needed; passing them in lets the time
/// stepper reuse buffers across steps.
void solve_tridiagonal(const TridiagonalSystem& sys, std::vector<double>& scratch,
                       std::vector<double>& out);

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

}  // namespace vessel1d
