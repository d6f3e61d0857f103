#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsa/errors.hpp"
#include "fsa/fft.hpp"
#include "fsa/grid.hpp"
#include "fsa/kernels.hpp"
#include "fsa/params.hpp"
#include "fsa/plan.hpp"
#include "fsa/reference.hpp"
#include "fsa/solve.hpp"
#include "fsa/tables.hpp"
#include "fsa/validate.hpp"

namespace {

using namespace fsa;

struct SolveOptions {
  std::string kernel;
  double L = 8.0;
  int N = 0;
  std::vector<double> gamma;
  std::string eps = "auto:1e-16";
  std::string density = "gaussian:sigma=1";
  std::string density_file;
  std::string out;
  std::string save_plan, load_plan;
  double lambda = 1.0;
  double eta = 1.0 / std::sqrt(32.0);
  std::vector<double> n_vec{0.0, 0.0, 1.0};
  std::vector<double> m_vec{0.0, 0.0, 1.0};
};

int kernel_dim(const std::string& name) {
  if (name == "ddi3d") return 3;
  if (name == "ddiq2d") return 2;
  if (name.size() >= 2 && name.substr(name.size() - 2) == "2d") return 2;
  return 3;
}

Domain make_domain(const SolveOptions& o) {
  const int dim = kernel_dim(o.kernel);
  std::array<double, 3> gamma{1.0, 1.0, 1.0};
  if (!o.gamma.empty()) {
    if (static_cast<int>(o.gamma.size()) != dim)
      throw std::invalid_argument("--gamma needs one entry per axis");
    for (int j = 0; j < dim; ++j) gamma[j] = o.gamma[static_cast<size_t>(j)];
  }
  return Domain::make(dim, o.L, gamma);
}

// eps flag: a number, or auto:TOL.
std::pair<bool, double> parse_eps(const std::string& s) {
  if (s.rfind("auto", 0) == 0) {
    double tol = 1e-16;
    if (auto pos = s.find(':'); pos != std::string::npos)
      tol = std::stod(s.substr(pos + 1));
    return {true, tol};
  }
  return {false, std::stod(s)};
}

std::optional<ReferenceSolution> pick_reference(const KernelDescriptor& k,
                                                const DensityPreset& preset,
                                                const Domain& dom,
                                                const DipoleConfig& cfg,
                                                bool is_ddi3d) {
  if (is_ddi3d) {
    if (preset.kind != DensityPresetKind::gaussian) return std::nullopt;
    return reference_ddi3d(preset.sigma, cfg);
  }
  switch (preset.kind) {
    case DensityPresetKind::shifted_laplacian:
      if (k.id != KernelId::coulomb3d) return std::nullopt;
      return reference_case2(k, preset.sigma, dom, preset.x0);
    case DensityPresetKind::laplacian_aniso_2d:
      if (k.id != KernelId::poisson2d) return std::nullopt;
      return reference_case2(k, preset.sigma, dom);
    case DensityPresetKind::gaussian:
      break;
  }
  const bool iso = dom.gamma[dom.dim - 1] == 1.0;
  if (k.id == KernelId::coulomb2d || k.id == KernelId::coulomb3d)
    return iso ? reference_radial(k, preset.sigma)
               : reference_gaussian_aniso(k, preset.sigma, dom);
  if (!iso) return std::nullopt;
  if (k.id == KernelId::ddiq2d) {
    if (std::fabs(cfg.n[0]) > 1e-14 || std::fabs(cfg.n[1]) > 1e-14)
      return std::nullopt;
    return reference_ddi_quasi2d(preset.sigma, cfg);
  }
  return reference_radial(k, preset.sigma);
}

int cmd_solve(const SolveOptions& o) {
  const bool is_ddi3d = o.kernel == "ddi3d";
  KernelParams kp;
  kp.lambda = o.lambda;
  kp.eta = o.eta;
  const KernelDescriptor kernel =
      make_kernel(is_ddi3d ? "coulomb3d" : o.kernel, kp);

  Field rho;
  GridSpec grid;
  if (!o.density_file.empty()) {
    rho = read_field(o.density_file);
    grid = rho.grid;
  } else {
    if (o.N <= 0) throw std::invalid_argument("solve: --N required");
    grid = GridSpec::make(make_domain(o), o.N);
    rho = sample_density(parse_density_spec(o.density), grid);
  }

  ConvPlan plan;
  if (!o.load_plan.empty()) {
    plan = read_plan(o.load_plan);
    if (!(plan.grid == grid))
      throw GridMismatchError("loaded plan does not match the requested grid");
  } else {
    const auto [auto_eps, val] = parse_eps(o.eps);
    if (auto_eps) {
      plan = build_plan_auto(kernel, grid, val);
      std::cout << format_report(plan.eps_report);
    } else {
      plan = build_plan(kernel, grid, val);
    }
  }
  if (!o.save_plan.empty()) write_plan(plan, o.save_plan);

  DipoleConfig cfg = make_dipole({o.n_vec[0], o.n_vec[1], o.n_vec[2]},
                                 {o.m_vec[0], o.m_vec[1], o.m_vec[2]}, o.eta);

  Field phi;
  if (is_ddi3d)
    phi = solve_ddi3d(plan, rho, cfg);
  else if (kernel.id == KernelId::ddiq2d)
    phi = solve_ddi_quasi2d(plan, rho, cfg);
  else
    phi = apply(plan, rho);

  if (!o.out.empty()) write_field(phi, o.out);

  std::printf("kernel=%s dim=%d N=%d h=%.17g eps=%.17g", o.kernel.c_str(),
              grid.domain.dim, grid.n, grid.h[grid.domain.dim - 1], plan.eps);
  if (o.density_file.empty()) {
    const DensityPreset preset = parse_density_spec(o.density);
    if (auto ref = pick_reference(kernel, preset, grid.domain, cfg, is_ddi3d)) {
      const Field ref_field = evaluate_reference(*ref, grid);
      std::printf(" error=%.6e", error_norm(phi, ref_field));
    }
  }
  std::printf("\n");
  return 0;
}

int cmd_choose_eps(const std::string& kernel_name, double L,
                   const std::vector<double>& gamma, double tol, double lambda,
                   double eta) {
  SolveOptions o;
  o.kernel = kernel_name;
  o.L = L;
  o.gamma = gamma;
  const Domain dom = make_domain(o);
  KernelParams kp;
  kp.lambda = lambda;
  kp.eta = eta;
  const KernelDescriptor kernel =
      make_kernel(kernel_name == "ddi3d" ? "coulomb3d" : kernel_name, kp);
  std::cout << format_report(choose_epsilon(kernel, dom.r0(), tol));
  return 0;
}

int cmd_reproduce(const std::string& table, const std::string& out_path,
                  bool check, double lambda) {
  tables::TableOptions opt;
  opt.lambda = lambda;
  const auto rows = tables::run_table(table, opt);
  const std::string csv = tables::to_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot open " + out_path);
    out << csv;
  }
  if (check && !tables::all_pass(rows)) {
    for (const auto& r : rows)
      if (!r.pass)
        std::fprintf(stderr, "check failed: %s %s h=%g error=%.3e\n",
                     r.kernel.c_str(), r.case_label.c_str(), r.h, r.error);
    return 1;
  }
  return 0;
}

int cmd_bench(const SolveOptions& o, int reps) {
  KernelParams kp;
  kp.lambda = o.lambda;
  kp.eta = o.eta;
  const KernelDescriptor kernel = make_kernel(o.kernel, kp);
  const GridSpec grid = GridSpec::make(make_domain(o), o.N);
  const auto [auto_eps, val] = parse_eps(o.eps);
  const double eps =
      auto_eps ? choose_epsilon(kernel, grid.domain.r0(), val).eps : val;
  const DensityPreset preset{DensityPresetKind::gaussian, 1.0, {}};
  const Field rho = sample_density(preset, grid);

  std::printf("kernel,dim,N,gamma,eps,phase,mode,rep,seconds,fft_transforms,fft_points\n");
  auto emit = [&](const char* phase, const char* mode, int rep, double sec,
                  fft::FftStats st) {
    std::printf("%s,%d,%d,%g,%g,%s,%s,%d,%.6f,%llu,%llu\n", o.kernel.c_str(),
                grid.domain.dim, grid.n, grid.domain.gamma[grid.domain.dim - 1],
                eps, phase, mode, rep, sec,
                static_cast<unsigned long long>(st.transforms),
                static_cast<unsigned long long>(st.points));
  };
  using clock = std::chrono::steady_clock;
  ConvPlan plan;
  for (int rep = 0; rep < reps; ++rep) {
    fft::stats_reset();
    auto t0 = clock::now();
    plan = build_plan(kernel, grid, eps);
    emit("precompute", "parallel", rep,
         std::chrono::duration<double>(clock::now() - t0).count(),
         fft::stats());

    fft::stats_reset();
    t0 = clock::now();
    ConvPlan splan = ref::build_plan(kernel, grid, eps);
    emit("precompute", "serial", rep,
         std::chrono::duration<double>(clock::now() - t0).count(),
         fft::stats());

    fft::stats_reset();
    t0 = clock::now();
    Field phi = apply(plan, rho);
    emit("execute", "parallel", rep,
         std::chrono::duration<double>(clock::now() - t0).count(),
         fft::stats());

    fft::stats_reset();
    t0 = clock::now();
    Field phi_s = ref::apply(splan, rho);
    emit("execute", "serial", rep,
         std::chrono::duration<double>(clock::now() - t0).count(),
         fft::stats());

    if (error_norm(phi, phi_s) != 0.0)
      throw Error("bench: serial and parallel outputs differ");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fsaconv: spectral evaluation of convolution-type nonlocal potentials "
      "on uniform grids via a far-field smooth kernel split"};
  app.require_subcommand(1);
  app.set_config("--config");

  SolveOptions so;
  auto* solve = app.add_subcommand(
      "solve", "evaluate one potential and report the error vs a reference");
  solve->add_option("--kernel", so.kernel,
                    "poisson2d|coulomb2d|coulomb3d|biharmonic2d|biharmonic3d|"
                    "yukawa2d|yukawa3d|ddi3d|ddiq2d")
      ->required();
  solve->add_option("--L", so.L, "domain half-width");
  solve->add_option("--N", so.N, "grid points per axis (even)");
  solve->add_option("--gamma", so.gamma, "anisotropy vector (gamma_1 = 1)")
      ->delimiter(',');
  solve->add_option("--eps", so.eps, "split parameter, number or auto:TOL");
  solve->add_option("--density", so.density,
                    "preset spec, e.g. gaussian:sigma=0.894 or "
                    "shifted-laplacian:sigma=0.894,x0=1/1/0");
  solve->add_option("--density-file", so.density_file,
                    "read the density from an FSAD field file");
  solve->add_option("--out", so.out, "write the potential as an FSAD file");
  solve->add_option("--save-plan", so.save_plan, "cache the plan to a file");
  solve->add_option("--load-plan", so.load_plan, "reuse a cached plan");
  solve->add_option("--lambda", so.lambda, "Yukawa screening parameter");
  solve->add_option("--eta", so.eta, "quasi-2D trap width");
  solve->add_option("--n", so.n_vec, "dipole orientation n")->delimiter(',');
  solve->add_option("--m", so.m_vec, "dipole orientation m")->delimiter(',');

  std::string table, repro_out;
  bool check = false;
  double repro_lambda = 1.0;
  auto* repro = app.add_subcommand("reproduce",
                                   "run a built-in error-table configuration "
                                   "and emit CSV");
  repro->add_option("table", table, "table2-iso|table2-aniso|table4|table5")
      ->required();
  repro->add_option("--out", repro_out, "CSV output path (default stdout)");
  repro->add_flag("--check", check, "exit 1 unless every row passes its band");
  repro->add_option("--lambda", repro_lambda, "Yukawa screening for table5");

  std::string ce_kernel;
  double ce_L = 8.0, ce_tol = 1e-16, ce_lambda = 1.0,
         ce_eta = 1.0 / std::sqrt(32.0);
  std::vector<double> ce_gamma;
  auto* ce = app.add_subcommand("choose-eps",
                                "certify the largest feasible split parameter");
  ce->add_option("--kernel", ce_kernel)->required();
  ce->add_option("--L", ce_L);
  ce->add_option("--gamma", ce_gamma)->delimiter(',');
  ce->add_option("--tol", ce_tol, "tail tolerance");
  ce->add_option("--lambda", ce_lambda);
  ce->add_option("--eta", ce_eta);

  SolveOptions bo;
  int reps = 3;
  auto* bench = app.add_subcommand(
      "bench", "time precompute/execute, serial vs parallel, as CSV");
  bench->add_option("--kernel", bo.kernel)->required();
  bench->add_option("--L", bo.L);
  bench->add_option("--N", bo.N)->required();
  bench->add_option("--gamma", bo.gamma)->delimiter(',');
  bench->add_option("--eps", bo.eps);
  bench->add_option("--lambda", bo.lambda);
  bench->add_option("--eta", bo.eta);
  bench->add_option("--reps", reps, "repetitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(so);
    if (repro->parsed())
      return cmd_reproduce(table, repro_out, check, repro_lambda);
    if (ce->parsed())
      return cmd_choose_eps(ce_kernel, ce_L, ce_gamma, ce_tol, ce_lambda,
                            ce_eta);
    if (bench->parsed()) return cmd_bench(bo, reps);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
