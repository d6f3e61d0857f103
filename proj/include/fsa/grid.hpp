#ifndef FSA_GRID_HPP
#define FSA_GRID_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fsa {

/// Rectangular domain prod_j [-L gamma_j, L gamma_j], gamma_1 = 1,
/// 0 < gamma_j <= 1.
struct Domain {
  int dim = 3;
  double L = 0.0;
  std::array<double, 3> gamma{1.0, 1.0, 1.0};

  static Domain make(int dim, double L, std::array<double, 3> gamma);
  double r0() const;       // min_j 2 L gamma_j
  double gamma_f() const;  // prod gamma_j^-1
};

/// Uniform mesh with N (even) points per axis, h_j = 2 L gamma_j / N.
/// Coordinates run over {h_j * l : l = -N/2 .. N/2 - 1} (origin included,
/// +N/2 excluded).
struct GridSpec {
  Domain domain;
  int n = 0;
  std::array<double, 3> h{0.0, 0.0, 0.0};

  static GridSpec make(const Domain& d, int n);
  std::size_t size() const;
  /// Physical coordinate of storage index i in [0, N) on the given axis.
  double coord(int axis, int i) const { return h[axis] * (i - n / 2); }
  bool operator==(const GridSpec& o) const;
};

/// Real samples on the N^dim mesh, last axis fastest-varying.
struct Field {
  GridSpec grid;
  std::vector<double> values;

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n + j]; }
  double& at(int i, int j, int k) {
    return values[(static_cast<std::size_t>(i) * grid.n + j) * grid.n + k];
  }
  double at(int i, int j, int k) const {
    return values[(static_cast<std::size_t>(i) * grid.n + j) * grid.n + k];
  }
};

Field make_field(const GridSpec& g);

enum class DensityPresetKind {
  gaussian,            // exp(-sum x_j^2/(gamma_j sigma)^2), gamma-aware
  shifted_laplacian,   // rho0(x) + rho0(x - x0), rho0 = -lap of a gaussian (3D)
  laplacian_aniso_2d,  // -lap of an anisotropic 2D gaussian
};

struct DensityPreset {
  DensityPresetKind kind = DensityPresetKind::gaussian;
  double sigma = 1.0;
  std::array<double, 3> x0{0.0, 0.0, 0.0};  // shift (shifted_laplacian only)
};

DensityPreset parse_density_spec(const std::string& spec);

/// -lap of exp(-(x^2+y^2+z^2/g3^2)/sigma^2) at x, in closed form.
double case2_density_component(const std::array<double, 3>& x, double sigma,
                               double gamma3);

/// Pointwise preset value at a physical coordinate.
double density_value(const DensityPreset& p, const Domain& dom,
                     const std::array<double, 3>& x);

/// Pointwise sampling of a preset. Emits a support warning on stderr when
/// the boundary layer fails density_support_ok.
Field sample_density(const DensityPreset& preset, const GridSpec& grid);

/// Boundary-layer check: max |rho| on the outermost shell < 1e-14 max |rho|.
bool density_support_ok(const Field& f);

/// FSAD field file, little-endian:
/// magic "FSAD", version u32 = 1, dim u32, N u64, L f64,
/// dim x f64 gamma, N^dim x f64 payload (last axis fastest).
void write_field(const Field& f, const std::string& path);
Field read_field(const std::string& path);

}  // namespace fsa

#endif  // FSA_GRID_HPP
