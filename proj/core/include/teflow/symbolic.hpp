#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace teflow {

/// Largest pattern length accepted anywhere in the library. The extended
/// (k+1)-symbols used by the entropy estimator need k + 1 <= kMaxPatternLength.
inline constexpr std::size_t kMaxPatternLength = 9;

using SymbolCode = std::uint32_t;

/// k! for k <= kMaxPatternLength.
std::uint32_t factorial(std::size_t k);

/// Ordinal pattern of k observations. `pattern` lists the positions (1-based,
/// oldest observation = 1) in ascending order of value; equal values keep the
/// smaller position first. `code` is the lexicographic rank of the pattern.
struct OrdinalSymbol {
  std::vector<int> pattern;
  SymbolCode code = 0;

  std::size_t k() const { return pattern.size(); }
  friend bool operator==(const OrdinalSymbol&, const OrdinalSymbol&) = default;
};

/// Lexicographic rank in [0, k!) of a permutation of 1..k.
/// Throws std::invalid_argument if `pattern` is not a permutation.
SymbolCode encode(std::span<const int> pattern);

/// Inverse of encode. Throws std::out_of_range when code >= k!.
std::vector<int> decode(SymbolCode code, std::size_t k);

/// Code of the pattern formed by series[last - (k-1)*delta], ..., series[last]
/// (0-based). Unchecked hot path: the caller guarantees last >= (k-1)*delta,
/// last < |series|, 1 <= k <= kMaxPatternLength and delta >= 1.
SymbolCode ordinal_code(std::span<const double> series, std::size_t last, std::size_t k,
                        std::size_t delta);

/// Checked variant of ordinal_code returning the full pattern. Throws
/// InsufficientData when the pattern would start before index 0.
OrdinalSymbol symbolize_at(std::span<const double> series, std::size_t last, std::size_t k,
                           std::size_t delta);

struct SymbolSequence {
  std::vector<SymbolCode> codes;  // one per admissible last index, ascending
  std::size_t k = 0;
  std::size_t delta = 0;
  std::size_t source_length = 0;

  std::size_t size() const { return codes.size(); }
  /// Last index in the source sequence of the i-th symbol.
  std::size_t last_index(std::size_t i) const { return i + (k - 1) * delta; }
};

/// All symbols of the series, ending at indices (k-1)*delta, ..., |series|-1.
/// Short series give an empty sequence.
SymbolSequence symbol_sequence(std::span<const double> series, std::size_t k, std::size_t delta);

}  // namespace teflow
