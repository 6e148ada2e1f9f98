#pragma once

#include <stdexcept>

namespace vessel1d {

/// Uniform mesh of the material domain [0, 1] with n subintervals of size
/// h = 1/n. Node i sits at i/n for i = 0..n, so node(0) == 0 and node(n) == 1
/// exactly.
class Mesh {
 public:
  explicit Mesh(int subintervals) : n_(subintervals) {
    if (subintervals < 2) {
      throw std::invalid_argument("Mesh: need at least 2 subintervals");
    }
    h_ = 1.0 / n_;
  }

  int n() const { return n_; }
  int node_count() const { return n_ + 1; }
  double h() const { return h_; }
  double node(int i) const { return static_cast<double>(i) / n_; }

 private:
  int n_;
  double h_;
};

inline Mesh build_mesh(int subintervals) { return Mesh(subintervals); }

}  // namespace vessel1d
