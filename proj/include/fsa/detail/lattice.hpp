#ifndef FSA_DETAIL_LATTICE_HPP
#define FSA_DETAIL_LATTICE_HPP

#include <cmath>
#include <vector>

#include "fsa/grid.hpp"

namespace fsa::detail {

/// Logical index at circulant storage position m on a 2N axis: m for m < N,
/// m - 2N otherwise.
inline int logical_index(int m, int n) { return m < n ? m : m - 2 * n; }

/// Storage position of mesh index i in [0, N) (logical i - N/2) on the
/// doubled axis.
inline int pad_index(int i, int n) { return (i + (3 * n) / 2) % (2 * n); }

/// Per-axis squared coordinates (n_j h_j)^2 and squared Fourier-mesh
/// frequencies (pi p_j / (2 L gamma_j))^2 over the doubled axis.
struct AxisTables {
  int dim = 0;
  int n2 = 0;  // 2N
  std::vector<double> x2[3];
  std::vector<double> k2[3];
};

inline AxisTables make_axis_tables(const GridSpec& grid) {
  AxisTables t;
  t.dim = grid.domain.dim;
  t.n2 = 2 * grid.n;
  constexpr double pi = 3.141592653589793238462643383279502884;
  for (int axis = 0; axis < t.dim; ++axis) {
    t.x2[axis].resize(t.n2);
    t.k2[axis].resize(t.n2);
    const double kf = pi / (2.0 * grid.domain.L * grid.domain.gamma[axis]);
    for (int m = 0; m < t.n2; ++m) {
      const double p = logical_index(m, grid.n);
      const double x = p * grid.h[axis];
      const double k = p * kf;
      t.x2[axis][m] = x * x;
      t.k2[axis][m] = k * k;
    }
  }
  return t;
}

}  // namespace fsa::detail

#endif  // FSA_DETAIL_LATTICE_HPP
