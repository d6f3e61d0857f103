#include "fsa/solve.hpp"

#include <cmath>
#include <iostream>

#include "fsa/detail/lattice.hpp"
#include "fsa/errors.hpp"

namespace fsa {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Embed the N^dim field at (n mod 2N) on each axis of a zeroed (2N)^dim
// complex buffer, run the spectral pipeline, and read the same positions
// back. `spectral` mutates the forward transform in place.
template <class Spectral>
Field convolve_padded(const Field& rho, const Spectral& spectral,
                      const char* what) {
  const GridSpec& g = rho.grid;
  const int n = g.n;
  const int n2 = 2 * n;
  const int dim = g.domain.dim;
  const fft::FftPlan fplan =
      fft::make_plan(std::vector<int>(static_cast<std::size_t>(dim), n2));
  std::vector<fft::cplx> buf(fplan.len, fft::cplx(0.0, 0.0));

  if (dim == 2) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      const int pi_ = detail::pad_index(i, n);
      for (int j = 0; j < n; ++j)
        buf[static_cast<std::size_t>(pi_) * n2 + detail::pad_index(j, n)] =
            rho.at(i, j);
    }
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      const int pi_ = detail::pad_index(i, n);
      for (int j = 0; j < n; ++j) {
        const int pj = detail::pad_index(j, n);
        for (int l = 0; l < n; ++l)
          buf[(static_cast<std::size_t>(pi_) * n2 + pj) * n2 +
              detail::pad_index(l, n)] = rho.at(i, j, l);
      }
    }
  }

  fft::forward(fplan, buf);
  spectral(buf);
  fft::inverse(fplan, buf);

  Field out = make_field(g);
  double max_re = 0.0, max_im = 0.0;
  if (dim == 2) {
#pragma omp parallel for schedule(static) reduction(max : max_re, max_im)
    for (int i = 0; i < n; ++i) {
      const int pi_ = detail::pad_index(i, n);
      for (int j = 0; j < n; ++j) {
        const fft::cplx v =
            buf[static_cast<std::size_t>(pi_) * n2 + detail::pad_index(j, n)];
        out.at(i, j) = v.real();
        max_re = std::max(max_re, std::fabs(v.real()));
        max_im = std::max(max_im, std::fabs(v.imag()));
      }
    }
  } else {
#pragma omp parallel for schedule(static) reduction(max : max_re, max_im)
    for (int i = 0; i < n; ++i) {
      const int pi_ = detail::pad_index(i, n);
      for (int j = 0; j < n; ++j) {
        const int pj = detail::pad_index(j, n);
        for (int l = 0; l < n; ++l) {
          const fft::cplx v = buf[(static_cast<std::size_t>(pi_) * n2 + pj) * n2 +
                                  detail::pad_index(l, n)];
          out.at(i, j, l) = v.real();
          max_re = std::max(max_re, std::fabs(v.real()));
          max_im = std::max(max_im, std::fabs(v.imag()));
        }
      }
    }
  }
  if (max_im > 1e-12 * std::max(max_re, 1e-300))
    throw ImaginaryResidueError(std::string(what) +
                                ": imaginary residue exceeds 1e-12 of the "
                                "output scale (index-map bug?)");
  return out;
}

}  // namespace

DipoleConfig make_dipole(std::array<double, 3> n, std::array<double, 3> m,
                         double eta) {
  auto normalize = [](std::array<double, 3>& v, const char* name) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::fabs(norm - 1.0) > 1e-3)
      throw std::invalid_argument(std::string("dipole vector ") + name +
                                  " is not close to unit length");
    for (double& c : v) c /= norm;
  };
  normalize(n, "n");
  normalize(m, "m");
  if (!(eta > 0.0)) throw std::invalid_argument("dipole: eta > 0");
  return DipoleConfig{n, m, eta};
}

namespace {

// Signed Fourier-mesh frequencies per circulant position, with the Nyquist
// mode differentiated as zero (it is its own conjugate partner, so odd powers
// of k_N in a multiplier would break the Hermitian symmetry of the spectrum).
std::vector<double> derivative_freqs(const GridSpec& g, int axis) {
  const int n2 = 2 * g.n;
  std::vector<double> kv(n2);
  const double kf = kPi / (2.0 * g.domain.L * g.domain.gamma[axis]);
  for (int m = 0; m < n2; ++m) {
    const int p = detail::logical_index(m, g.n);
    kv[m] = (p == -g.n) ? 0.0 : kf * p;
  }
  return kv;
}

// Shared spectral stage: T_hat times an optional k-multiplier, so derived
// sources convolve in one padded pipeline without an intermediate
// restriction to the N^dim box.
Field apply_impl(const ConvPlan& plan, const Field& rho,
                 const KMultiplier* mult, const char* what) {
  if (!(rho.grid == plan.grid))
    throw GridMismatchError(std::string(what) +
                            ": density grid differs from plan grid");
  const auto& t_hat = plan.t_hat;
  const GridSpec& g = rho.grid;
  const int n2 = 2 * g.n;
  const int dim = g.domain.dim;
  std::vector<double> kv[3];
  if (mult)
    for (int axis = 0; axis < dim; ++axis) kv[axis] = derivative_freqs(g, axis);
  return convolve_padded(
      rho,
      [&](std::vector<fft::cplx>& buf) {
        if (!mult) {
#pragma omp parallel for schedule(static)
          for (std::int64_t i = 0; i < static_cast<std::int64_t>(buf.size());
               ++i)
            buf[static_cast<std::size_t>(i)] *=
                t_hat[static_cast<std::size_t>(i)];
        } else if (dim == 2) {
#pragma omp parallel for schedule(static)
          for (int i = 0; i < n2; ++i) {
            const double kx = kv[0][i];
            for (int j = 0; j < n2; ++j) {
              const std::size_t idx = static_cast<std::size_t>(i) * n2 + j;
              buf[idx] *= t_hat[idx] * mult->eval(kx, kv[1][j], 0.0);
            }
          }
        } else {
#pragma omp parallel for schedule(static)
          for (int i = 0; i < n2; ++i) {
            const double kx = kv[0][i];
            for (int j = 0; j < n2; ++j) {
              const double ky = kv[1][j];
              for (int l = 0; l < n2; ++l) {
                const std::size_t idx =
                    (static_cast<std::size_t>(i) * n2 + j) * n2 + l;
                buf[idx] *= t_hat[idx] * mult->eval(kx, ky, kv[2][l]);
              }
            }
          }
        }
      },
      what);
}

}  // namespace

Field apply(const ConvPlan& plan, const Field& rho) {
  return apply_impl(plan, rho, nullptr, "apply");
}

KMultiplier identity_multiplier() {
  return {"identity", [](double, double, double) { return 1.0; }};
}

KMultiplier laplacian_multiplier() {
  return {"laplacian", [](double kx, double ky, double kz) {
            return -(kx * kx + ky * ky + kz * kz);
          }};
}

KMultiplier directional_second_derivative_multiplier(
    const std::array<double, 3>& n, const std::array<double, 3>& m) {
  return {"d_nm", [n, m](double kx, double ky, double kz) {
            const double kn = kx * n[0] + ky * n[1] + kz * n[2];
            const double km = kx * m[0] + ky * m[1] + kz * m[2];
            return -kn * km;
          }};
}

KMultiplier quasi2d_source_multiplier(const DipoleConfig& cfg) {
  const double n1 = cfg.n[0], n2 = cfg.n[1], n3 = cfg.n[2];
  return {"quasi2d_source", [n1, n2, n3](double kx, double ky, double) {
            const double kn = kx * n1 + ky * n2;
            const double kperp2 = kx * kx + ky * ky;
            return 1.5 * (kn * kn - n3 * n3 * kperp2);
          }};
}

Field fourier_derivative_source(const Field& rho, const KMultiplier& mult) {
  if (!density_support_ok(rho))
    std::cerr << "warning: derivative source of a density without compact "
                 "support on the grid\n";
  const GridSpec& g = rho.grid;
  const int n2 = 2 * g.n;
  const int dim = g.domain.dim;
  std::vector<double> kval[3];
  for (int axis = 0; axis < dim; ++axis)
    kval[axis] = derivative_freqs(g, axis);
  auto freq = [&](int axis, int idx) { return kval[axis][idx]; };
  return convolve_padded(
      rho,
      [&](std::vector<fft::cplx>& buf) {
        if (dim == 2) {
#pragma omp parallel for schedule(static)
          for (int i = 0; i < n2; ++i) {
            const double kx = freq(0, i);
            for (int j = 0; j < n2; ++j)
              buf[static_cast<std::size_t>(i) * n2 + j] *=
                  mult.eval(kx, freq(1, j), 0.0);
          }
        } else {
#pragma omp parallel for schedule(static)
          for (int i = 0; i < n2; ++i) {
            const double kx = freq(0, i);
            for (int j = 0; j < n2; ++j) {
              const double ky = freq(1, j);
              for (int l = 0; l < n2; ++l)
                buf[(static_cast<std::size_t>(i) * n2 + j) * n2 + l] *=
                    mult.eval(kx, ky, freq(2, l));
            }
          }
        }
      },
      "fourier_derivative_source");
}

Field solve_ddi3d(const ConvPlan& coulomb3d_plan, const Field& rho,
                  const DipoleConfig& cfg) {
  if (rho.grid.domain.dim != 3)
    throw GridMismatchError("solve_ddi3d: 3D density required");
  const double mn =
      cfg.m[0] * cfg.n[0] + cfg.m[1] * cfg.n[1] + cfg.m[2] * cfg.n[2];
  const KMultiplier mult =
      directional_second_derivative_multiplier(cfg.n, cfg.m);
  Field phi = apply_impl(coulomb3d_plan, rho, &mult, "solve_ddi3d");
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(phi.values.size());
       ++i)
    phi.values[static_cast<std::size_t>(i)] =
        -mn * rho.values[static_cast<std::size_t>(i)] -
        3.0 * phi.values[static_cast<std::size_t>(i)];
  return phi;
}

Field solve_ddi_quasi2d(const ConvPlan& utilde_plan, const Field& rho,
                        const DipoleConfig& cfg) {
  if (rho.grid.domain.dim != 2)
    throw GridMismatchError("solve_ddi_quasi2d: 2D density required");
  const KMultiplier mult = quasi2d_source_multiplier(cfg);
  return apply_impl(utilde_plan, rho, &mult, "solve_ddi_quasi2d");
}

}  // namespace fsa
