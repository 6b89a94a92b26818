#include "teflow/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "teflow/error.hpp"
#include "teflow/fft.hpp"

namespace teflow {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Chains one field into the running hash. The state is rehashed before the
// field enters, so swapping two fields changes the result.
std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(splitmix64(h) ^ v); }

}  // namespace

std::string_view to_string(SurrogateDomain domain) {
  return domain == SurrogateDomain::LogPrice ? "log-price" : "price";
}

SurrogateDomain parse_surrogate_domain(std::string_view text) {
  if (text == "log-price") return SurrogateDomain::LogPrice;
  if (text == "price") return SurrogateDomain::Price;
  throw ConfigError("surrogate.domain must be 'log-price' or 'price', got '" +
                    std::string(text) + "'");
}

std::uint64_t derive_seed(const SeedLineage& lineage) {
  std::uint64_t h = splitmix64(lineage.master);
  h = mix(h, lineage.window);
  h = mix(h, lineage.stock);
  h = mix(h, lineage.realization);
  return h;
}

double uniform_phase(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * std::numbers::pi * u;
}

PhaseRandomized phase_randomize(std::span<const double> series, std::mt19937_64& rng) {
  const std::size_t n = series.size();
  if (n < 2) throw InsufficientData("phase randomization needs at least two samples");

  auto spectrum = fft::forward(series);
  // Bins k and n-k are paired; k = 0 and (even n) k = n/2 keep phase 0.
  for (std::size_t k = 1; k < n - k; ++k) {
    const double phi = uniform_phase(rng);
    const auto rotated = spectrum[k] * std::polar(1.0, phi);
    spectrum[k] = rotated;
    spectrum[n - k] = std::conj(rotated);
  }

  const auto time_domain = fft::inverse(spectrum);
  PhaseRandomized out;
  out.values.resize(n);
  double max_abs = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    out.values[t] = time_domain[t].real();
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(time_domain[t].imag()));
    max_abs = std::max(max_abs, std::abs(series[t]));
  }
  if (out.max_imag_residue > 1e-9 * max_abs)
    throw std::logic_error("phase randomization produced a complex series");
  return out;
}

SpectrumCheck check_spectrum(std::span<const double> source, const PhaseRandomized& surrogate) {
  if (source.size() != surrogate.values.size())
    throw std::invalid_argument("surrogate length differs from source");
  SpectrumCheck check;
  check.max_imag_residue = surrogate.max_imag_residue;
  for (double v : source) check.max_abs_source = std::max(check.max_abs_source, std::abs(v));
  if (source.empty()) return check;

  const auto original = fft::forward(source);
  const auto randomized = fft::forward(surrogate.values);
  double peak = 0.0;
  for (const auto& c : original) peak = std::max(peak, std::abs(c));
  const double floor = static_cast<double>(source.size()) *
                       std::numeric_limits<double>::epsilon() * peak;
  for (std::size_t k = 0; k < original.size(); ++k) {
    const double ref = std::abs(original[k]);
    const double err = std::abs(std::abs(randomized[k]) - ref);
    const double denom = std::max(ref, floor);
    if (denom > 0.0) check.max_relative_error = std::max(check.max_relative_error, err / denom);
  }
  return check;
}

std::vector<std::vector<SurrogateSeries>> surrogate_window_set(
    std::span<const SeriesView> window_slices, std::size_t n_realizations,
    std::uint64_t master_seed, std::size_t window_index, SurrogateDomain domain) {
  std::vector<std::vector<SurrogateSeries>> out(window_slices.size());
  std::vector<double> source;
  for (std::size_t stock = 0; stock < window_slices.size(); ++stock) {
    const auto& slice = window_slices[stock];
    if (slice.size() < 2) continue;

    source.assign(slice.values.begin(), slice.values.end());
    if (domain == SurrogateDomain::LogPrice) {
      for (auto& v : source) {
        if (!(v > 0.0)) throw std::domain_error("log-price surrogate of a non-positive price");
        v = std::log(v);
      }
    }

    out[stock].reserve(n_realizations);
    for (std::size_t r = 0; r < n_realizations; ++r) {
      const SeedLineage lineage{master_seed, window_index, stock, r};
      std::mt19937_64 rng(derive_seed(lineage));
      auto randomized = phase_randomize(source, rng);
      if (domain == SurrogateDomain::LogPrice)
        for (auto& v : randomized.values) v = std::exp(v);
      out[stock].push_back({std::move(randomized.values), stock, r, lineage});
    }
  }
  return out;
}

}  // namespace teflow
