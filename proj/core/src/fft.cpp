#include "teflow/fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>
#include <stdexcept>

namespace teflow::fft {

namespace {

// FFTW's planner is not thread-safe; execution of a plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer allocate(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (p == nullptr) throw std::bad_alloc();
  return Buffer(p);
}

std::vector<std::complex<double>> transform(std::span<const std::complex<double>> input,
                                            int sign) {
  const std::size_t n = input.size();
  if (n == 0) return {};
  auto in = allocate(n);
  auto out = allocate(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = input[i].real();
    in[i][1] = input[i].imag();
  }

  fftw_plan plan = nullptr;
  {
    // FFTW_ESTIMATE picks the algorithm without timing, so results do not
    // depend on machine load.
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  std::vector<std::complex<double>> result(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = {out[i][0], out[i][1]};
  return result;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> input) {
  return transform(input, FFTW_FORWARD);
}

std::vector<std::complex<double>> forward(std::span<const double> input) {
  std::vector<std::complex<double>> z(input.begin(), input.end());
  return transform(z, FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> input) {
  auto out = transform(input, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(input.size());
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace teflow::fft
