#include "fsa/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <mutex>
#include <stdexcept>

#include "fsa/errors.hpp"

namespace fsa::fft {

namespace {

std::atomic<std::uint64_t> g_transforms{0};
std::atomic<std::uint64_t> g_points{0};

// The FFTW planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void execute(const FftPlan& plan, std::vector<cplx>& data, int sign) {
  if (data.size() != plan.len)
    throw GridMismatchError("fft: buffer length does not match plan shape");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan p;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE keeps planning deterministic and leaves the data intact.
    p = fftw_plan_dft(static_cast<int>(plan.shape.size()), plan.shape.data(),
                      ptr, ptr, sign, FFTW_ESTIMATE);
  }
  if (p == nullptr) throw Error("fft: planner failed");
  fftw_execute(p);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(p);
  }
  g_transforms.fetch_add(1, std::memory_order_relaxed);
  g_points.fetch_add(plan.len, std::memory_order_relaxed);
}

}  // namespace

FftPlan make_plan(std::vector<int> shape) {
  if (shape.empty()) throw std::invalid_argument("fft: empty shape");
  std::size_t len = 1;
  for (int n : shape) {
    if (n < 1) throw std::invalid_argument("fft: shape entries must be >= 1");
    len *= static_cast<std::size_t>(n);
  }
  return FftPlan{std::move(shape), len};
}

void forward(const FftPlan& plan, std::vector<cplx>& data) {
  execute(plan, data, FFTW_FORWARD);
}

void inverse(const FftPlan& plan, std::vector<cplx>& data) {
  execute(plan, data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(plan.len);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(plan.len); ++i)
    data[static_cast<std::size_t>(i)] *= scale;
}

std::vector<cplx> forward_copy(const FftPlan& plan, const std::vector<cplx>& v) {
  std::vector<cplx> out(v);
  forward(plan, out);
  return out;
}

std::vector<cplx> inverse_copy(const FftPlan& plan, const std::vector<cplx>& v) {
  std::vector<cplx> out(v);
  inverse(plan, out);
  return out;
}

FftStats stats() {
  return FftStats{g_transforms.load(std::memory_order_relaxed),
                  g_points.load(std::memory_order_relaxed)};
}

void stats_reset() {
  g_transforms.store(0, std::memory_order_relaxed);
  g_points.store(0, std::memory_order_relaxed);
}

}  // namespace fsa::fft
