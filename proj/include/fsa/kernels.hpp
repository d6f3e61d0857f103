#ifndef FSA_KERNELS_HPP
#define FSA_KERNELS_HPP

#include <string>
#include <string_view>

namespace fsa {

enum class KernelId {
  poisson2d,
  coulomb2d,
  coulomb3d,
  biharmonic2d,
  biharmonic3d,
  yukawa2d,
  yukawa3d,
  ddiq2d,  // quasi-2D dipole base kernel (convolved with a derived source)
};

/// How the far-field smooth approximation of U is built.
enum class FsaForm {
  erf_multiplier,   // U(r) * erf(r/eps)
  e1_subtraction,   // log-type kernels: subtract (1/2) E1(r^2/eps^2)
  windowed_erf,     // U(r) * erf(r/eps) * (1 - xi(r)), xi = window(r, eps, 3 eps)
};

enum class ResidualFtMode { analytic, radial_quadrature };

struct KernelParams {
  double lambda = 1.0;               // Yukawa screening
  double eta = 0.17677669529663687;  // quasi-2D trap width, 1/sqrt(32)
};

struct KernelDescriptor {
  KernelId id;
  std::string name;
  int dim;  // 2 or 3
  KernelParams params;
  FsaForm fsa_form;
  ResidualFtMode residual_ft_mode;
  /// Absolute window upper edge for windowed_erf kernels; 0 selects the
  /// default 3 * eps. Plan construction widens it to a grid-resolvable
  /// fraction of R0 (see with_plan_window).
  double window_b = 0.0;

  bool singular_at_origin() const;
  double window_lo(double eps) const { return eps; }
  double window_hi(double eps) const {
    return window_b > 0.0 ? window_b : 3.0 * eps;
  }
};

/// Registry lookup by CLI name: poisson2d, coulomb2d, coulomb3d,
/// biharmonic2d, biharmonic3d, yukawa2d, yukawa3d, ddiq2d.
/// (The composite ddi3d solver runs on the coulomb3d descriptor.)
KernelDescriptor make_kernel(std::string_view name, KernelParams params = {});

/// Plan-time window policy for windowed kernels: unless the caller pinned
/// window_b, stretch the transition to b = max(3 eps, 0.45 R0), capped at
/// 0.9 R0, so the trapezoidal rule resolves it at coarse h while b < R0
/// keeps the tail condition intact. No-op for the other forms.
KernelDescriptor with_plan_window(KernelDescriptor k, double r0, double eps);

/// U(r). Throws SingularKernelError at r = 0 for singular kernels;
/// the biharmonic kernels return their removable limit 0.
double kernel_value(const KernelDescriptor& k, double r);

/// U_eps(r), finite for all r >= 0 (analytic limit at the origin).
double fsa_value(const KernelDescriptor& k, double r, double eps);

/// (U - U_eps)(r) in cancellation-free form, r > 0.
double residual_value(const KernelDescriptor& k, double r, double eps);

/// Whole-space Fourier transform of (U - U_eps) at radius |k|.
/// Dispatches on residual_ft_mode; analytic kernels switch to a small-k
/// series below k_switch, quadrature kernels integrate the radial transform.
double residual_ft(const KernelDescriptor& k, double kk, double eps);

/// Forces the radial-quadrature evaluation regardless of mode
/// (cross-validation path for the analytic formulas).
double residual_ft_quadrature(const KernelDescriptor& k, double kk, double eps,
                              double r0_hint = 0.0);

/// Truncation radius of the radial quadrature for a given grid scale r0.
double residual_quadrature_cutoff(const KernelDescriptor& k, double eps,
                                  double r0_hint);

/// Series/closed-form switch point of the analytic residual transform.
double residual_ft_k_switch(const KernelDescriptor& k, double eps);

namespace detail {
// Both branches of the analytic transform, exposed for the continuity tests.
double residual_ft_series(const KernelDescriptor& k, double kk, double eps);
double residual_ft_closed(const KernelDescriptor& k, double kk, double eps);
// ln(r) + (1/2) E1(r^2/eps^2) with the logarithms cancelled analytically for
// small r (shared by the e1-subtraction kernels and the log-type potentials).
double log_plus_half_e1(double r, double eps);
}  // namespace detail

}  // namespace fsa

#endif  // FSA_KERNELS_HPP
