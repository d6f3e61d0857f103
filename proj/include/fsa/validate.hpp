#ifndef FSA_VALIDATE_HPP
#define FSA_VALIDATE_HPP

#include <array>
#include <functional>
#include <string>

#include "fsa/grid.hpp"
#include "fsa/kernels.hpp"
#include "fsa/solve.hpp"

namespace fsa {

/// Closed-form (or 1D-quadrature-backed) potential, evaluable at every mesh
/// point. Every solution used for acceptance runs is gated behind a
/// self-convergence check in the tests; `provenance` records the derivation.
/// Quadrature-backed evaluators memoize internally and are not thread-safe.
struct ReferenceSolution {
  std::function<double(std::array<double, 3>)> phi;
  std::string provenance;
};

/// max |num - ref| / max |ref| over mesh points.
double error_norm(const Field& phi_num, const Field& phi_ref);

Field evaluate_reference(const ReferenceSolution& ref, const GridSpec& grid);

/// Potentials whose density was manufactured as -lap(Phi0): the convolution
/// equals Phi0 exactly (U is the Green function of -lap).
/// coulomb3d: Phi0(x) + Phi0(x - x0) with gaussian Phi0 (pass x0 = 0 for the
/// single unshifted gaussian); poisson2d: the anisotropic gaussian itself.
ReferenceSolution reference_case2(const KernelDescriptor& k, double sigma,
                                  const Domain& dom,
                                  std::array<double, 3> x0 = {0, 0, 0});

/// Potential of the isotropic gaussian exp(-r^2/sigma^2) for every radial
/// kernel in the registry.
ReferenceSolution reference_radial(const KernelDescriptor& k, double sigma);

/// Coulomb potential of the gamma-compressed gaussian (reduces to
/// reference_radial at gamma = 1). coulomb2d / coulomb3d only.
ReferenceSolution reference_gaussian_aniso(const KernelDescriptor& k,
                                           double sigma, const Domain& dom);

/// 3D DDI of the isotropic gaussian via directional second derivatives of
/// the closed-form Coulomb potential.
ReferenceSolution reference_ddi3d(double sigma, const DipoleConfig& cfg);

/// Quasi-2D DDI of the isotropic gaussian, n = (0, 0, n3) only, via a
/// 1D Hankel integral of the explicit spectral product.
ReferenceSolution reference_ddi_quasi2d(double sigma, const DipoleConfig& cfg);

/// Literal evaluation of the discrete convolution (no FFT), with the same
/// tensor entries a plan would use. Guarded to N <= 16.
Field direct_sum_oracle(const KernelDescriptor& k, const GridSpec& grid,
                        double eps, const Field& rho);

}  // namespace fsa

#endif  // FSA_VALIDATE_HPP
