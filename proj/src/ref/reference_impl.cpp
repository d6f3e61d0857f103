#include "fsa/reference.hpp"

#include <cmath>
#include <unordered_map>

#include "fsa/detail/lattice.hpp"
#include "fsa/errors.hpp"
#include "fsa/params.hpp"

namespace fsa::ref {

namespace {

double cell_volume(const GridSpec& grid) {
  double v = 1.0;
  for (int j = 0; j < grid.domain.dim; ++j) v *= grid.h[j];
  return v;
}

void check_plan_inputs(const KernelDescriptor& k, const GridSpec& grid,
                       double eps) {
  if (k.dim != grid.domain.dim)
    throw GridMismatchError("plan: kernel and grid dimension differ");
  if (!(eps > 0.0)) throw std::invalid_argument("plan: eps > 0");
  if (k.fsa_form == FsaForm::windowed_erf &&
      !(k.window_hi(eps) < grid.domain.r0()))
    throw WindowEdgeError(k.name + ": window edge must stay below R0");
}

std::vector<double> spectrum_samples_serial(const KernelDescriptor& k,
                                            const GridSpec& grid, double eps) {
  const detail::AxisTables t = detail::make_axis_tables(grid);
  const int n2 = t.n2;
  const bool quadrature =
      k.residual_ft_mode == ResidualFtMode::radial_quadrature;
  const double r0 = grid.domain.r0();
  std::unordered_map<double, double> memo;
  auto w_at = [&](double k2) {
    if (!quadrature) return residual_ft(k, std::sqrt(k2), eps);
    if (auto it = memo.find(k2); it != memo.end()) return it->second;
    const double v = residual_ft_quadrature(k, std::sqrt(k2), eps, r0);
    memo.emplace(k2, v);
    return v;
  };
  std::vector<double> w;
  if (t.dim == 2) {
    w.resize(static_cast<std::size_t>(n2) * n2);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        w[static_cast<std::size_t>(i) * n2 + j] = w_at(t.k2[0][i] + t.k2[1][j]);
  } else {
    w.resize(static_cast<std::size_t>(n2) * n2 * n2);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l < n2; ++l)
          w[(static_cast<std::size_t>(i) * n2 + j) * n2 + l] =
              w_at(t.k2[0][i] + t.k2[1][j] + t.k2[2][l]);
  }
  return w;
}

}  // namespace

std::vector<double> build_regular_tensor(const KernelDescriptor& k_in,
                                         const GridSpec& grid, double eps) {
  check_plan_inputs(k_in, grid, eps);
  const KernelDescriptor k = with_plan_window(k_in, grid.domain.r0(), eps);
  const detail::AxisTables t = detail::make_axis_tables(grid);
  const int n2 = t.n2;
  const double vol = cell_volume(grid);
  std::vector<double> out;
  if (t.dim == 2) {
    out.resize(static_cast<std::size_t>(n2) * n2);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        out[static_cast<std::size_t>(i) * n2 + j] =
            vol * fsa_value(k, std::sqrt(t.x2[0][i] + t.x2[1][j]), eps);
  } else {
    out.resize(static_cast<std::size_t>(n2) * n2 * n2);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l < n2; ++l)
          out[(static_cast<std::size_t>(i) * n2 + j) * n2 + l] =
              vol *
              fsa_value(k, std::sqrt(t.x2[0][i] + t.x2[1][j] + t.x2[2][l]),
                        eps);
  }
  return out;
}

std::vector<double> build_fourier_tensor(const KernelDescriptor& k_in,
                                         const GridSpec& grid, double eps) {
  check_plan_inputs(k_in, grid, eps);
  const KernelDescriptor k = with_plan_window(k_in, grid.domain.r0(), eps);
  const std::vector<double> w = spectrum_samples_serial(k, grid, eps);
  const fft::FftPlan plan = fft::make_plan(
      std::vector<int>(static_cast<std::size_t>(grid.domain.dim), 2 * grid.n));
  std::vector<fft::cplx> buf(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) buf[i] = w[i];
  fft::inverse(plan, buf);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = buf[i].real();
  return out;
}

ConvPlan build_plan(const KernelDescriptor& k_in, const GridSpec& grid,
                    double eps) {
  check_plan_inputs(k_in, grid, eps);
  const double r0 = grid.domain.r0();
  const KernelDescriptor k = with_plan_window(k_in, r0, eps);
  const double tail = tail_integral(k, eps, r0);
  EpsilonReport report{eps, r0, tail, tail, r0 / eps};

  const std::vector<double> t1 = ref::build_regular_tensor(k, grid, eps);
  const std::vector<double> t2 = ref::build_fourier_tensor(k, grid, eps);
  const fft::FftPlan fplan = fft::make_plan(
      std::vector<int>(static_cast<std::size_t>(grid.domain.dim), 2 * grid.n));
  std::vector<fft::cplx> buf(t1.size());
  for (std::size_t i = 0; i < t1.size(); ++i)
    buf[i] = fft::cplx(t2[i] + t1[i], 0.0);
  fft::forward(fplan, buf);
  return ConvPlan{grid, k, eps, report, std::move(buf)};
}

Field apply(const ConvPlan& plan, const Field& rho) {
  if (!(rho.grid == plan.grid))
    throw GridMismatchError("apply: density grid differs from plan grid");
  const GridSpec& g = rho.grid;
  const int n = g.n;
  const int n2 = 2 * n;
  const int dim = g.domain.dim;
  const fft::FftPlan fplan =
      fft::make_plan(std::vector<int>(static_cast<std::size_t>(dim), n2));
  std::vector<fft::cplx> buf(fplan.len, fft::cplx(0.0, 0.0));

  if (dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        buf[static_cast<std::size_t>(detail::pad_index(i, n)) * n2 +
            detail::pad_index(j, n)] = rho.at(i, j);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          buf[(static_cast<std::size_t>(detail::pad_index(i, n)) * n2 +
               detail::pad_index(j, n)) *
                  n2 +
              detail::pad_index(l, n)] = rho.at(i, j, l);
  }

  fft::forward(fplan, buf);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= plan.t_hat[i];
  fft::inverse(fplan, buf);

  Field out = make_field(g);
  double max_re = 0.0, max_im = 0.0;
  auto take = [&](const fft::cplx& v) {
    max_re = std::max(max_re, std::fabs(v.real()));
    max_im = std::max(max_im, std::fabs(v.imag()));
    return v.real();
  };
  if (dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.at(i, j) =
            take(buf[static_cast<std::size_t>(detail::pad_index(i, n)) * n2 +
                     detail::pad_index(j, n)]);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          out.at(i, j, l) = take(
              buf[(static_cast<std::size_t>(detail::pad_index(i, n)) * n2 +
                   detail::pad_index(j, n)) *
                      n2 +
                  detail::pad_index(l, n)]);
  }
  if (max_im > 1e-12 * std::max(max_re, 1e-300))
    throw ImaginaryResidueError("ref::apply: imaginary residue exceeds bound");
  return out;
}

Field sample_density(const DensityPreset& preset, const GridSpec& grid) {
  Field f = make_field(grid);
  const int n = grid.n;
  const Domain& dom = grid.domain;
  if (dom.dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        f.at(i, j) = density_value(preset, dom,
                                   {grid.coord(0, i), grid.coord(1, j), 0.0});
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          f.at(i, j, l) = density_value(
              preset, dom,
              {grid.coord(0, i), grid.coord(1, j), grid.coord(2, l)});
  }
  return f;
}

double error_norm(const Field& phi_num, const Field& phi_ref) {
  if (!(phi_num.grid == phi_ref.grid))
    throw GridMismatchError("error_norm: fields on different grids");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < phi_num.values.size(); ++i) {
    num = std::max(num, std::fabs(phi_num.values[i] - phi_ref.values[i]));
    den = std::max(den, std::fabs(phi_ref.values[i]));
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return num / den;
}

}  // namespace fsa::ref
