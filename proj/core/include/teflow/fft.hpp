#pragma once

#include <complex>
#include <span>
#include <vector>

namespace teflow::fft {

/// Unnormalized forward DFT, X[k] = sum_t x[t] exp(-2 pi i k t / n), any n >= 1.
std::vector<std::complex<double>> forward(std::span<const std::complex<double>> input);
std::vector<std::complex<double>> forward(std::span<const double> input);

/// Inverse DFT including the 1/n factor.
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> input);

}  // namespace teflow::fft
