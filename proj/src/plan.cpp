#include "fsa/plan.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "fsa/detail/lattice.hpp"
#include "fsa/errors.hpp"

namespace fsa {

namespace {

void check_plan_inputs(const KernelDescriptor& k, const GridSpec& grid,
                       double eps) {
  if (k.dim != grid.domain.dim)
    throw GridMismatchError("plan: kernel and grid dimension differ");
  if (!(eps > 0.0)) throw std::invalid_argument("plan: eps > 0");
  if (k.fsa_form == FsaForm::windowed_erf &&
      !(k.window_hi(eps) < grid.domain.r0()))
    throw WindowEdgeError(k.name + ": window edge 3*eps = " +
                          std::to_string(k.window_hi(eps)) +
                          " must stay below R0 = " +
                          std::to_string(grid.domain.r0()));
}

double cell_volume(const GridSpec& grid) {
  double v = 1.0;
  for (int j = 0; j < grid.domain.dim; ++j) v *= grid.h[j];
  return v;
}

// W evaluations memoized over distinct |k|^2 values; the Fourier mesh has
// huge radius multiplicity, which pays off when each sample is a quadrature.
std::vector<double> spectrum_samples_memoized(const KernelDescriptor& k,
                                              const GridSpec& grid, double eps,
                                              const detail::AxisTables& t) {
  const int n2 = t.n2;
  const std::size_t len =
      t.dim == 2 ? static_cast<std::size_t>(n2) * n2
                 : static_cast<std::size_t>(n2) * n2 * n2;
  std::vector<double> k2_flat(len);
  if (t.dim == 2) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        k2_flat[static_cast<std::size_t>(i) * n2 + j] =
            t.k2[0][i] + t.k2[1][j];
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l < n2; ++l)
          k2_flat[(static_cast<std::size_t>(i) * n2 + j) * n2 + l] =
              t.k2[0][i] + t.k2[1][j] + t.k2[2][l];
  }
  std::vector<double> unique_k2(k2_flat);
  std::sort(unique_k2.begin(), unique_k2.end());
  unique_k2.erase(std::unique(unique_k2.begin(), unique_k2.end()),
                  unique_k2.end());

  const double r0 = grid.domain.r0();
  std::vector<double> w_of(unique_k2.size());
  // Exceptions cannot unwind out of the parallel region; capture the first
  // one and rethrow after the loop.
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t u = 0; u < static_cast<std::int64_t>(unique_k2.size());
       ++u) {
    try {
      w_of[static_cast<std::size_t>(u)] = residual_ft_quadrature(
          k, std::sqrt(unique_k2[static_cast<std::size_t>(u)]), eps, r0);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> w(len);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(len); ++i) {
    const auto it = std::lower_bound(unique_k2.begin(), unique_k2.end(),
                                     k2_flat[static_cast<std::size_t>(i)]);
    w[static_cast<std::size_t>(i)] =
        w_of[static_cast<std::size_t>(it - unique_k2.begin())];
  }
  return w;
}

}  // namespace

std::vector<int> ConvPlan::padded_shape() const {
  return std::vector<int>(static_cast<std::size_t>(grid.domain.dim),
                          2 * grid.n);
}

namespace detail {

double lambda_radius(const GridSpec& grid, std::size_t flat) {
  const AxisTables t = make_axis_tables(grid);
  const int n2 = t.n2;
  double k2 = 0.0;
  if (t.dim == 2) {
    k2 = t.k2[0][flat / n2] + t.k2[1][flat % n2];
  } else {
    k2 = t.k2[0][flat / (static_cast<std::size_t>(n2) * n2)] +
         t.k2[1][(flat / n2) % n2] + t.k2[2][flat % n2];
  }
  return std::sqrt(k2);
}

std::vector<double> spectrum_samples(const KernelDescriptor& k,
                                     const GridSpec& grid, double eps) {
  const AxisTables t = make_axis_tables(grid);
  if (k.residual_ft_mode == ResidualFtMode::radial_quadrature)
    return spectrum_samples_memoized(k, grid, eps, t);
  const int n2 = t.n2;
  std::vector<double> w;
  if (t.dim == 2) {
    w.resize(static_cast<std::size_t>(n2) * n2);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        w[static_cast<std::size_t>(i) * n2 + j] =
            residual_ft(k, std::sqrt(t.k2[0][i] + t.k2[1][j]), eps);
  } else {
    w.resize(static_cast<std::size_t>(n2) * n2 * n2);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l < n2; ++l)
          w[(static_cast<std::size_t>(i) * n2 + j) * n2 + l] = residual_ft(
              k, std::sqrt(t.k2[0][i] + t.k2[1][j] + t.k2[2][l]), eps);
  }
  return w;
}

std::vector<double> spectrum_to_tensor(const std::vector<double>& w,
                                       const std::vector<int>& shape) {
  const fft::FftPlan plan = fft::make_plan(shape);
  std::vector<fft::cplx> buf(w.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(w.size()); ++i)
    buf[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];
  fft::inverse(plan, buf);
  std::vector<double> out(w.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(w.size()); ++i)
    out[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(i)].real();
  return out;
}

}  // namespace detail

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
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        out[static_cast<std::size_t>(i) * n2 + j] =
            vol * fsa_value(k, std::sqrt(t.x2[0][i] + t.x2[1][j]), eps);
  } else {
    out.resize(static_cast<std::size_t>(n2) * n2 * n2);
#pragma omp parallel for schedule(static)
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
  const std::vector<double> w = detail::spectrum_samples(k, grid, eps);
  return detail::spectrum_to_tensor(
      w, std::vector<int>(static_cast<std::size_t>(grid.domain.dim),
                          2 * grid.n));
}

ConvPlan build_plan(const KernelDescriptor& k_in, const GridSpec& grid,
                    double eps) {
  check_plan_inputs(k_in, grid, eps);
  const double r0 = grid.domain.r0();
  const KernelDescriptor k = with_plan_window(k_in, r0, eps);
  const double tail = tail_integral(k, eps, r0);
  EpsilonReport report{eps, r0, tail, tail, r0 / eps};

  // Singular part: inverse DFT of the W samples, done in place.
  const fft::FftPlan fplan = fft::make_plan(
      std::vector<int>(static_cast<std::size_t>(grid.domain.dim), 2 * grid.n));
  std::vector<double> w = detail::spectrum_samples(k, grid, eps);
  std::vector<fft::cplx> buf(w.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(w.size()); ++i)
    buf[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];
  w.clear();
  w.shrink_to_fit();
  fft::inverse(fplan, buf);

  // Combined tensor: add the regular entries on the fly, drop the O(eps_mach)
  // imaginary residue of the real tensor, then transform once.
  const detail::AxisTables t = detail::make_axis_tables(grid);
  const int n2 = t.n2;
  const double vol = cell_volume(grid);
  if (t.dim == 2) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) {
        auto& c = buf[static_cast<std::size_t>(i) * n2 + j];
        c = fft::cplx(
            c.real() +
                vol * fsa_value(k, std::sqrt(t.x2[0][i] + t.x2[1][j]), eps),
            0.0);
      }
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l < n2; ++l) {
          auto& c = buf[(static_cast<std::size_t>(i) * n2 + j) * n2 + l];
          c = fft::cplx(
              c.real() + vol * fsa_value(k,
                                         std::sqrt(t.x2[0][i] + t.x2[1][j] +
                                                   t.x2[2][l]),
                                         eps),
              0.0);
        }
  }
  fft::forward(fplan, buf);
  return ConvPlan{grid, k, eps, report, std::move(buf)};
}

ConvPlan build_plan_auto(const KernelDescriptor& k, const GridSpec& grid,
                         double tol) {
  const EpsilonReport report = choose_epsilon(k, grid.domain.r0(), tol);
  ConvPlan plan = build_plan(k, grid, report.eps);
  plan.eps_report = report;
  return plan;
}

namespace {

constexpr char kPlanMagic[4] = {'F', 'S', 'A', 'P'};
constexpr std::uint32_t kPlanVersion = 1;

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in, const char* what) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw MalformedFileError(std::string("plan file: truncated ") + what);
  return v;
}

}  // namespace

void write_plan(const ConvPlan& plan, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(kPlanMagic, 4);
  put<std::uint32_t>(out, kPlanVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(plan.kernel.name.size()));
  out.write(plan.kernel.name.data(),
            static_cast<std::streamsize>(plan.kernel.name.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(plan.grid.domain.dim));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(plan.grid.n));
  put<double>(out, plan.grid.domain.L);
  for (int j = 0; j < plan.grid.domain.dim; ++j)
    put<double>(out, plan.grid.domain.gamma[j]);
  put<double>(out, plan.kernel.params.lambda);
  put<double>(out, plan.kernel.params.eta);
  put<double>(out, plan.eps);
  put<double>(out, plan.eps_report.tol);
  put<double>(out, plan.eps_report.tail_value);
  put<double>(out, plan.eps_report.c);
  out.write(reinterpret_cast<const char*>(plan.t_hat.data()),
            static_cast<std::streamsize>(plan.t_hat.size() * sizeof(fft::cplx)));
  if (!out) throw Error("write failed: " + path);
}

ConvPlan read_plan(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kPlanMagic, 4) != 0)
    throw MalformedFileError("plan file: bad magic");
  if (get<std::uint32_t>(in, "version") != kPlanVersion)
    throw MalformedFileError("plan file: unsupported version");
  const auto name_len = get<std::uint32_t>(in, "name length");
  if (name_len > 64) throw MalformedFileError("plan file: bad kernel name");
  std::string name(name_len, '\0');
  in.read(name.data(), name_len);
  if (!in) throw MalformedFileError("plan file: truncated kernel name");
  const auto dim = get<std::uint32_t>(in, "dim");
  const auto n = get<std::uint64_t>(in, "N");
  const auto L = get<double>(in, "L");
  std::array<double, 3> gamma{1.0, 1.0, 1.0};
  for (std::uint32_t j = 0; j < dim; ++j) gamma[j] = get<double>(in, "gamma");
  KernelParams kp;
  kp.lambda = get<double>(in, "lambda");
  kp.eta = get<double>(in, "eta");
  const double eps = get<double>(in, "eps");
  EpsilonReport report;
  report.eps = eps;
  report.tol = get<double>(in, "tol");
  report.tail_value = get<double>(in, "tail");
  report.c = get<double>(in, "c");
  const Domain dom = Domain::make(static_cast<int>(dim), L, gamma);
  report.r0 = dom.r0();
  const GridSpec grid = GridSpec::make(dom, static_cast<int>(n));
  const KernelDescriptor kernel = make_kernel(name, kp);
  std::size_t len = 1;
  for (std::uint32_t j = 0; j < dim; ++j)
    len *= static_cast<std::size_t>(2 * grid.n);
  std::vector<fft::cplx> t_hat(len);
  in.read(reinterpret_cast<char*>(t_hat.data()),
          static_cast<std::streamsize>(len * sizeof(fft::cplx)));
  if (!in ||
      static_cast<std::size_t>(in.gcount()) != len * sizeof(fft::cplx))
    throw MalformedFileError("plan file: truncated payload");
  return ConvPlan{grid, kernel, eps, report, std::move(t_hat)};
}

}  // namespace fsa
