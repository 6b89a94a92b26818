#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "teflow/market_data.hpp"

namespace teflow {

/// Which transform of the closing prices is phase-randomized.
enum class SurrogateDomain {
  LogPrice,  // randomize ln p, then exponentiate (surrogate prices stay positive)
  Price,     // randomize p itself; surrogates may contain non-positive values
};

std::string_view to_string(SurrogateDomain domain);
/// Accepts "log-price" and "price". Throws ConfigError otherwise.
SurrogateDomain parse_surrogate_domain(std::string_view text);

struct SeedLineage {
  std::uint64_t master = 0;
  std::size_t window = 0;
  std::size_t stock = 0;
  std::size_t realization = 0;
};

/// Seed for one surrogate realization. Every field of the lineage changes the
/// result, and the value does not depend on the order in which seeds are drawn.
std::uint64_t derive_seed(const SeedLineage& lineage);

/// Uniform draw on [0, 2 pi) built from the top 53 bits of one engine output,
/// so the sequence is identical across standard library implementations.
double uniform_phase(std::mt19937_64& rng);

struct PhaseRandomized {
  std::vector<double> values;
  double max_imag_residue = 0.0;  // largest |imag| of the inverse transform
};

/// Spectrum-preserving surrogate: the DFT of `series` gets an independent
/// uniform phase on each positive frequency, mirrored with opposite sign on
/// the negative frequency; the DC and (even-length) Nyquist phases are zero.
/// Throws InsufficientData for fewer than two samples.
PhaseRandomized phase_randomize(std::span<const double> series, std::mt19937_64& rng);

/// Per-bin comparison of the DFT magnitudes of a source series and a surrogate.
struct SpectrumCheck {
  double max_relative_error = 0.0;  // max_k ||S'_k| - |S_k|| / |S_k|
  double max_imag_residue = 0.0;
  double max_abs_source = 0.0;

  bool passed(double tolerance = 1e-9) const {
    return max_relative_error <= tolerance && max_imag_residue <= tolerance * max_abs_source;
  }
};

/// Bins whose source magnitude is below n * epsilon * max_k |S_k| (numerically
/// empty bins, e.g. every non-DC bin of a constant series) are compared
/// against that floor instead of their own magnitude.
SpectrumCheck check_spectrum(std::span<const double> source, const PhaseRandomized& surrogate);

struct SurrogateSeries {
  std::vector<double> values;
  std::size_t source = 0;
  std::size_t realization = 0;
  SeedLineage lineage;
};

/// Independent surrogates for every stock slice of one window, indexed
/// [stock][realization]. Slices shorter than two samples get no surrogates.
std::vector<std::vector<SurrogateSeries>> surrogate_window_set(
    std::span<const SeriesView> window_slices, std::size_t n_realizations,
    std::uint64_t master_seed, std::size_t window_index,
    SurrogateDomain domain = SurrogateDomain::LogPrice);

}  // namespace teflow
