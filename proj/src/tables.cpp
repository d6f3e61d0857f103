#include "fsa/tables.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fsa/grid.hpp"
#include "fsa/plan.hpp"
#include "fsa/solve.hpp"
#include "fsa/validate.hpp"

namespace fsa::tables {

namespace {

const double kSigma08 = std::sqrt(0.8);
const double kSigma12 = std::sqrt(1.2);
const double kEtaQ2d = 1.0 / std::sqrt(32.0);

// Table 5 dipole orientations (normalized to unit length on construction).
const std::array<double, 3> kDdiN{0.82778, 0.41505, -0.37751};
const std::array<double, 3> kDdiM{0.3118, 0.9378, -0.15214};

struct RowSpec {
  std::string kernel;
  std::string case_label;
  int dim;
  double L;
  double gamma;
  double h_over_gamma;  // h_j = h_over_gamma * gamma_j
  double eps;
  double sigma;
  double expected;
  CheckKind check;
  double check_param;
};

Domain domain_of(const RowSpec& s) {
  std::array<double, 3> gamma{1.0, 1.0, 1.0};
  gamma[s.dim - 1] = s.gamma;
  return Domain::make(s.dim, s.L, gamma);
}

int points_of(const RowSpec& s) {
  // h_j = 2 L gamma_j / N and h_j = h_over_gamma * gamma_j.
  const double n = 2.0 * s.L / s.h_over_gamma;
  const int ni = static_cast<int>(std::lround(n));
  if (std::fabs(n - ni) > 1e-9 || ni % 2 != 0)
    throw std::invalid_argument("table row: N = 2L/h must be even");
  return ni;
}

double run_row(const RowSpec& s, const TableOptions& opt) {
  const Domain dom = domain_of(s);
  const GridSpec grid = GridSpec::make(dom, points_of(s));

  if (s.kernel == "ddi3d") {
    const DipoleConfig cfg = make_dipole(kDdiN, kDdiM);
    const DensityPreset preset{DensityPresetKind::gaussian, s.sigma, {}};
    const Field rho = sample_density(preset, grid);
    const ConvPlan plan = build_plan(make_kernel("coulomb3d"), grid, s.eps);
    const Field phi = solve_ddi3d(plan, rho, cfg);
    const Field ref =
        evaluate_reference(reference_ddi3d(s.sigma, cfg), grid);
    return error_norm(phi, ref);
  }
  if (s.kernel == "ddiq2d") {
    const DipoleConfig cfg = make_dipole({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0},
                                         kEtaQ2d);
    KernelParams kp;
    kp.eta = cfg.eta;
    const DensityPreset preset{DensityPresetKind::gaussian, s.sigma, {}};
    const Field rho = sample_density(preset, grid);
    const ConvPlan plan = build_plan(make_kernel("ddiq2d", kp), grid, s.eps);
    const Field phi = solve_ddi_quasi2d(plan, rho, cfg);
    const Field ref =
        evaluate_reference(reference_ddi_quasi2d(s.sigma, cfg), grid);
    return error_norm(phi, ref);
  }

  KernelParams kp;
  kp.lambda = opt.lambda;
  const KernelDescriptor kernel = make_kernel(s.kernel, kp);

  DensityPreset preset{DensityPresetKind::gaussian, s.sigma, {}};
  ReferenceSolution ref_sol;
  if (s.case_label == "caseII") {
    preset = DensityPreset{DensityPresetKind::shifted_laplacian, s.sigma,
                           {1.0, 1.0, 0.0}};
    ref_sol = reference_case2(kernel, s.sigma, dom, {1.0, 1.0, 0.0});
  } else if (s.case_label == "aniso" && kernel.id == KernelId::poisson2d) {
    preset = DensityPreset{DensityPresetKind::laplacian_aniso_2d, s.sigma, {}};
    ref_sol = reference_case2(kernel, s.sigma, dom);
  } else if (s.gamma != 1.0) {
    ref_sol = reference_gaussian_aniso(kernel, s.sigma, dom);
  } else {
    ref_sol = reference_radial(kernel, s.sigma);
  }

  const Field rho = sample_density(preset, grid);
  const ConvPlan plan = build_plan(kernel, grid, s.eps);
  const Field phi = apply(plan, rho);
  const Field ref = evaluate_reference(ref_sol, grid);
  return error_norm(phi, ref);
}

std::vector<RowSpec> specs_for(const std::string& name,
                               const TableOptions& opt) {
  std::vector<RowSpec> rows;
  auto band = [](double v) { return v; };
  if (name == "table2-iso") {
    for (auto [h, exp_err, chk, par] :
         {std::tuple{1.0, 1.3856e-2, CheckKind::band10x, band(1.3856e-2)},
          std::tuple{0.5, 2.9648e-8, CheckKind::band10x, band(2.9648e-8)},
          std::tuple{0.25, 2.8012e-16, CheckKind::floor_val, 1e-13},
          std::tuple{0.125, 5.6025e-16, CheckKind::floor_val, 1e-13}})
      rows.push_back({"coulomb2d", "iso", 2, 8.0, 1.0, h, 1.0, kSigma08,
                      exp_err, chk, par});
    for (auto [h, exp_err, chk, par] :
         {std::tuple{1.0, 2.0681e-2, CheckKind::band10x, band(2.0681e-2)},
          std::tuple{0.5, 2.5036e-6, CheckKind::band10x, band(2.5036e-6)},
          std::tuple{0.25, 5.5511e-16, CheckKind::floor_val, 1e-13}})
      rows.push_back({"coulomb3d", "iso", 3, 8.0, 1.0, h, 1.0, kSigma08,
                      exp_err, chk, par});
    return rows;
  }
  if (name == "table2-aniso") {
    const double g[4] = {1.0, 0.5, 0.25, 0.125};
    const double e2d[4] = {4.1758e-16, 2.5550e-15, 1.5455e-15, 1.8119e-15};
    const double e3dI[4] = {3.7007e-16, 5.3559e-15, 5.1651e-15, 3.9372e-15};
    const double e3dII[4] = {6.0077e-16, 6.0289e-16, 8.0178e-16, 1.2020e-15};
    for (int i = 0; i < 4; ++i)
      rows.push_back({"coulomb2d", "caseI", 2, 8.0, g[i], 0.25, 0.5, kSigma12,
                      e2d[i], CheckKind::floor_val, 1e-12});
    for (int i = 0; i < 4; ++i)
      rows.push_back({"coulomb3d", "caseI", 3, 8.0, g[i], 0.25, 0.5, kSigma12,
                      e3dI[i], CheckKind::floor_val, 1e-12});
    for (int i = 0; i < 4; ++i)
      rows.push_back({"coulomb3d", "caseII", 3, 12.0, g[i], 0.125, 0.4,
                      kSigma08, e3dII[i], CheckKind::floor_val, 1e-12});
    return rows;
  }
  if (name == "table4") {
    for (auto [h, exp_err, chk, par] :
         {std::tuple{2.0, 2.1786e-1, CheckKind::band10x, band(2.1786e-1)},
          std::tuple{1.0, 1.3761e-3, CheckKind::band10x, band(1.3761e-3)},
          std::tuple{0.5, 5.5617e-9, CheckKind::band10x, band(5.5617e-9)},
          std::tuple{0.25, 4.9577e-16, CheckKind::floor_val, 1e-13}})
      rows.push_back({"poisson2d", "iso", 2, 8.0, 1.0, h, 1.0, kSigma12,
                      exp_err, chk, par});
    const double g[4] = {1.0, 0.5, 0.25, 0.125};
    const double e[4] = {4.5519e-16, 2.2204e-16, 6.2728e-16, 1.5016e-15};
    for (int i = 0; i < 4; ++i)
      rows.push_back({"poisson2d", "aniso", 2, 10.0, g[i], 0.125, 0.4, 1.2,
                      e[i], CheckKind::floor_val, 1e-12});
    return rows;
  }
  if (name == "table5") {
    for (auto [h, exp_err, chk, par] :
         {std::tuple{2.0, 2.0847e-1, CheckKind::band10x, band(2.0847e-1)},
          std::tuple{1.0, 7.4038e-3, CheckKind::band10x, band(7.4038e-3)},
          std::tuple{0.5, 2.2647e-7, CheckKind::band10x, band(2.2647e-7)},
          std::tuple{0.25, 5.0826e-15, CheckKind::floor_val, 1e-12}})
      rows.push_back({"ddiq2d", "quasi2d", 2, 12.0, 1.0, h, 1.0, kSigma12,
                      exp_err, chk, par});
    for (auto [h, exp_err, chk, par] :
         {std::tuple{2.0, 2.2087, CheckKind::none, 0.0},
          std::tuple{1.0, 3.3668e-2, CheckKind::band10x, band(3.3668e-2)},
          std::tuple{0.5, 8.5098e-7, CheckKind::none, 0.0},
          std::tuple{0.25, 7.5667e-15, CheckKind::floor_val, 1e-12}})
      rows.push_back({"ddi3d", "ddi3d", 3, 8.0, 1.0, h, 1.0, kSigma12,
                      exp_err, chk, par});
    for (auto [h, exp_err, chk, par] :
         {std::tuple{2.0, 2.1351e-1, CheckKind::none, 0.0},
          std::tuple{1.0, 2.6558e-5, CheckKind::band10x, band(2.6558e-5)},
          std::tuple{0.5, 5.8860e-12, CheckKind::none, 0.0},
          std::tuple{0.25, 1.2938e-15, CheckKind::floor_val, 1e-13}})
      rows.push_back({"biharmonic2d", "iso", 2, 12.0, 1.0, h, 1.0, kSigma12,
                      exp_err, chk, par});
    for (auto [h, exp_err, chk, par] :
         {std::tuple{2.0, 3.4293e-1, CheckKind::none, 0.0},
          std::tuple{1.0, 2.6307e-4, CheckKind::band10x, band(2.6307e-4)},
          std::tuple{0.5, 1.1065e-10, CheckKind::none, 0.0},
          std::tuple{0.25, 1.0623e-15, CheckKind::floor_val, 1e-13}})
      rows.push_back({"biharmonic3d", "iso", 3, 12.0, 1.0, h, 1.0, kSigma12,
                      exp_err, chk, par});
    // Yukawa rows: lambda is a free parameter (CLI --lambda), so only the
    // spectral decay shape error(h=1/2)/error(h=1) is checked.
    (void)opt;
    for (auto [h, exp_err, chk, par] :
         {std::tuple{2.0, 1.7460e-1, CheckKind::none, 0.0},
          std::tuple{1.0, 4.5096e-3, CheckKind::none, 0.0},
          std::tuple{0.5, 4.3501e-8, CheckKind::ratio_prev, 1e-4}})
      rows.push_back({"yukawa2d", "iso", 2, 12.0, 1.0, h, 1.0, kSigma12,
                      exp_err, chk, par});
    for (auto [h, exp_err, chk, par] :
         {std::tuple{2.0, 2.4997e-1, CheckKind::none, 0.0},
          std::tuple{1.0, 6.8294e-3, CheckKind::none, 0.0},
          std::tuple{0.5, 7.3633e-8, CheckKind::ratio_prev, 1e-4}})
      rows.push_back({"yukawa3d", "iso", 3, 12.0, 1.0, h, 1.0, kSigma12,
                      exp_err, chk, par});
    return rows;
  }
  throw std::invalid_argument("unknown table: " + name);
}

}  // namespace

std::vector<std::string> table_names() {
  return {"table2-iso", "table2-aniso", "table4", "table5"};
}

std::vector<RowResult> run_table(const std::string& name,
                                 const TableOptions& opt) {
  std::vector<RowResult> out;
  double prev_error = 0.0;
  for (const RowSpec& s : specs_for(name, opt)) {
    RowResult r;
    r.table = name;
    r.kernel = s.kernel;
    r.case_label = s.case_label;
    r.dim = s.dim;
    r.L = s.L;
    r.gamma = s.gamma;
    r.N = points_of(s);
    r.h = s.h_over_gamma;
    r.eps = s.eps;
    r.expected_error = s.expected;
    r.check = s.check;
    r.check_param = s.check_param;
    r.error = run_row(s, opt);
    switch (s.check) {
      case CheckKind::none:
        r.pass = true;
        break;
      case CheckKind::band10x:
        r.pass = r.error <= 10.0 * s.check_param &&
                 r.error >= 0.1 * s.check_param;
        break;
      case CheckKind::floor_val:
        r.pass = r.error <= s.check_param;
        break;
      case CheckKind::ratio_prev:
        r.pass = prev_error > 0.0 && r.error / prev_error <= s.check_param;
        break;
    }
    prev_error = r.error;
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_csv(const std::vector<RowResult>& rows) {
  std::string csv = "kernel,dim,case,L,gamma,N,h,eps,error,expected_error\n";
  char line[256];
  for (const RowResult& r : rows) {
    std::snprintf(line, sizeof line, "%s,%d,%s,%g,%g,%d,%g,%g,%.6e,%.6e\n",
                  r.kernel.c_str(), r.dim, r.case_label.c_str(), r.L, r.gamma,
                  r.N, r.h, r.eps, r.error, r.expected_error);
    csv += line;
  }
  return csv;
}

bool all_pass(const std::vector<RowResult>& rows) {
  for (const RowResult& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace fsa::tables
