#ifndef FSA_PLAN_HPP
#define FSA_PLAN_HPP

#include <string>
#include <vector>

#include "fsa/fft.hpp"
#include "fsa/grid.hpp"
#include "fsa/kernels.hpp"
#include "fsa/params.hpp"

namespace fsa {

/// Precomputed convolution tensor: T_hat is the forward FFT of the combined
/// tensor T = T1 + T2 on the (2N)^dim circulant grid. Storage is FFT-natural:
/// position m on each axis holds logical index m for m < N and m - 2N
/// otherwise, i.e. logical n in [-N, N-1] lives at n mod 2N.
/// Immutable after construction; shareable across threads.
struct ConvPlan {
  GridSpec grid;
  KernelDescriptor kernel;
  double eps = 0.0;
  EpsilonReport eps_report;
  std::vector<fft::cplx> t_hat;  // (2N)^dim

  std::vector<int> padded_shape() const;
};

/// Regular tensor T1_n = (prod_j h_j) U_eps(|n . h|) over the logical box
/// [-N, N-1]^dim, returned in the circulant layout described above.
std::vector<double> build_regular_tensor(const KernelDescriptor& k,
                                         const GridSpec& grid, double eps);

/// Singular tensor T2: samples W(k) = residual_ft at the Fourier mesh
/// k_j = pi p_j / (2 L gamma_j), p_j in [-N, N-1], then applies the scaled
/// inverse DFT. Same layout as build_regular_tensor.
std::vector<double> build_fourier_tensor(const KernelDescriptor& k,
                                         const GridSpec& grid, double eps);

/// Full plan: T_hat = forward FFT of (T1 + T2). Throws WindowEdgeError when
/// a windowed kernel has 3 eps >= R0.
ConvPlan build_plan(const KernelDescriptor& k, const GridSpec& grid,
                    double eps);

/// Chooses eps via choose_epsilon(k, R0, tol) first.
ConvPlan build_plan_auto(const KernelDescriptor& k, const GridSpec& grid,
                         double tol);

/// Plan cache file ("FSAP"): header (kernel name, params, dim, N, L, gamma,
/// eps report, format version) + T_hat as interleaved f64 pairs,
/// little-endian.
void write_plan(const ConvPlan& plan, const std::string& path);
ConvPlan read_plan(const std::string& path);

namespace detail {

/// W samples on the Fourier mesh in circulant layout ((2N)^dim reals).
std::vector<double> spectrum_samples(const KernelDescriptor& k,
                                     const GridSpec& grid, double eps);

/// Scaled inverse DFT of a real spectrum; returns the real part.
std::vector<double> spectrum_to_tensor(const std::vector<double>& w,
                                       const std::vector<int>& shape);

/// Fourier-mesh radius |k| at circulant position m (flattened index).
double lambda_radius(const GridSpec& grid, std::size_t flat);

}  // namespace detail

}  // namespace fsa

#endif  // FSA_PLAN_HPP
