#ifndef FSA_REFERENCE_HPP
#define FSA_REFERENCE_HPP

#include "fsa/grid.hpp"
#include "fsa/plan.hpp"
#include "fsa/solve.hpp"

// Plain serial implementations of the OpenMP kernels. They share the FFT
// backend and the per-point formulas with the production paths, so outputs
// must match bitwise; the tests enforce that and the bench subcommand times
// the two side by side.
namespace fsa::ref {

std::vector<double> build_regular_tensor(const KernelDescriptor& k,
                                         const GridSpec& grid, double eps);
std::vector<double> build_fourier_tensor(const KernelDescriptor& k,
                                         const GridSpec& grid, double eps);
ConvPlan build_plan(const KernelDescriptor& k, const GridSpec& grid,
                    double eps);
Field apply(const ConvPlan& plan, const Field& rho);
Field sample_density(const DensityPreset& preset, const GridSpec& grid);
double error_norm(const Field& phi_num, const Field& phi_ref);

}  // namespace fsa::ref

#endif  // FSA_REFERENCE_HPP
