#ifndef FSA_SOLVE_HPP
#define FSA_SOLVE_HPP

#include <array>
#include <functional>
#include <string>

#include "fsa/grid.hpp"
#include "fsa/plan.hpp"

namespace fsa {

/// Dipole orientations: n, m unit 3-vectors for the 3D interaction;
/// (n_perp, n3) read from n plus the trap width eta for the quasi-2D one.
struct DipoleConfig {
  std::array<double, 3> n{0.0, 0.0, 1.0};
  std::array<double, 3> m{0.0, 0.0, 1.0};
  double eta = 0.17677669529663687;  // 1/sqrt(32)
};

/// Normalizes near-unit inputs (within 1e-3 of unit length) so the stored
/// vectors are unit to machine precision; rejects anything further off.
DipoleConfig make_dipole(std::array<double, 3> n, std::array<double, 3> m,
                         double eta = 0.17677669529663687);

/// Phi = iFFT(T_hat .* FFT(zero-padded rho)) restricted to the N^dim box.
/// Throws GridMismatchError / ImaginaryResidueError.
Field apply(const ConvPlan& plan, const Field& rho);

/// Constant-coefficient differential operator as a Fourier multiplier in k,
/// applied on the two-fold zero-padded grid (no periodic wrap-around).
struct KMultiplier {
  std::string label;
  std::function<double(double kx, double ky, double kz)> eval;
};

KMultiplier identity_multiplier();
KMultiplier laplacian_multiplier();
/// (n . grad)(m . grad)  ->  -(k.n)(k.m)
KMultiplier directional_second_derivative_multiplier(
    const std::array<double, 3>& n, const std::array<double, 3>& m);
/// -(3/2)(d_{n_perp n_perp} - n3^2 lap_perp)  ->
///  (3/2)((k_perp . n_perp)^2 - n3^2 |k_perp|^2)
KMultiplier quasi2d_source_multiplier(const DipoleConfig& cfg);

Field fourier_derivative_source(const Field& rho, const KMultiplier& mult);

/// Phi = -(m.n) rho - 3 * coulomb3d_conv(d_nm rho).
Field solve_ddi3d(const ConvPlan& coulomb3d_plan, const Field& rho,
                  const DipoleConfig& cfg);

/// Phi = Utilde_conv( -(3/2)(d_{n_perp n_perp} - n3^2 lap_perp) rho ).
Field solve_ddi_quasi2d(const ConvPlan& utilde_plan, const Field& rho,
                        const DipoleConfig& cfg);

}  // namespace fsa

#endif  // FSA_SOLVE_HPP
