#ifndef FSA_FFT_HPP
#define FSA_FFT_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace fsa::fft {

using cplx = std::complex<double>;

/// Shape descriptor for d-dimensional complex transforms.
/// Normalization: forward is the plain DFT (e^{-2 pi i ...}, unscaled);
/// inverse is scaled by 1/len so inverse(forward(v)) == v.
struct FftPlan {
  std::vector<int> shape;
  std::size_t len = 0;
};

FftPlan make_plan(std::vector<int> shape);

/// In-place transforms. Throw GridMismatchError when the buffer length does
/// not match the plan shape.
void forward(const FftPlan& plan, std::vector<cplx>& data);
void inverse(const FftPlan& plan, std::vector<cplx>& data);

/// Out-of-place convenience wrappers.
std::vector<cplx> forward_copy(const FftPlan& plan, const std::vector<cplx>& v);
std::vector<cplx> inverse_copy(const FftPlan& plan, const std::vector<cplx>& v);

/// Running totals of executed transforms (precompute-cost accounting).
struct FftStats {
  std::uint64_t transforms = 0;
  std::uint64_t points = 0;  // sum of transform lengths
};

FftStats stats();
void stats_reset();

}  // namespace fsa::fft

#endif  // FSA_FFT_HPP
