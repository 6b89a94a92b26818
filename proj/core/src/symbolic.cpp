#include "teflow/symbolic.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "teflow/error.hpp"

namespace teflow {

namespace {

constexpr auto kFactorials = [] {
  std::array<std::uint32_t, kMaxPatternLength + 1> f{};
  f[0] = 1;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<std::uint32_t>(i);
  return f;
}();

void check_order(std::size_t k) {
  if (k == 0 || k > kMaxPatternLength)
    throw std::invalid_argument("pattern length must be in [1, " +
                                std::to_string(kMaxPatternLength) + "]");
}

// Positions 0..k-1 sorted by value; insertion sort is stable, so ties keep the
// older position first.
template <typename Positions>
void sort_positions(std::span<const double> series, std::size_t first, std::size_t k,
                    std::size_t delta, Positions& pos) {
  for (std::size_t i = 0; i < k; ++i) {
    const double v = series[first + i * delta];
    std::size_t j = i;
    while (j > 0 && series[first + pos[j - 1] * delta] > v) {
      pos[j] = pos[j - 1];
      --j;
    }
    pos[j] = static_cast<std::uint8_t>(i);
  }
}

// Lehmer rank of a permutation of 0..k-1.
template <typename Positions>
SymbolCode rank(const Positions& perm, std::size_t k) {
  SymbolCode code = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t smaller_after = 0;
    for (std::size_t j = i + 1; j < k; ++j) smaller_after += perm[j] < perm[i];
    code += smaller_after * kFactorials[k - 1 - i];
  }
  return code;
}

}  // namespace

std::uint32_t factorial(std::size_t k) {
  if (k > kMaxPatternLength) throw std::out_of_range("factorial argument too large");
  return kFactorials[k];
}

SymbolCode encode(std::span<const int> pattern) {
  const std::size_t k = pattern.size();
  check_order(k);
  std::array<bool, kMaxPatternLength> seen{};
  std::array<std::uint8_t, kMaxPatternLength> zero_based{};
  for (std::size_t i = 0; i < k; ++i) {
    const int p = pattern[i];
    if (p < 1 || static_cast<std::size_t>(p) > k || seen[p - 1])
      throw std::invalid_argument("not a permutation of 1..k");
    seen[p - 1] = true;
    zero_based[i] = static_cast<std::uint8_t>(p - 1);
  }
  return rank(zero_based, k);
}

std::vector<int> decode(SymbolCode code, std::size_t k) {
  check_order(k);
  if (code >= kFactorials[k]) throw std::out_of_range("symbol code out of range for k");
  std::vector<int> remaining(k);
  for (std::size_t i = 0; i < k; ++i) remaining[i] = static_cast<int>(i + 1);
  std::vector<int> pattern;
  pattern.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint32_t f = kFactorials[k - 1 - i];
    const auto idx = static_cast<std::ptrdiff_t>(code / f);
    code %= f;
    pattern.push_back(remaining[idx]);
    remaining.erase(remaining.begin() + idx);
  }
  return pattern;
}

SymbolCode ordinal_code(std::span<const double> series, std::size_t last, std::size_t k,
                        std::size_t delta) {
  std::array<std::uint8_t, kMaxPatternLength> pos;
  const std::size_t first = last - (k - 1) * delta;
  sort_positions(series, first, k, delta, pos);
  return rank(pos, k);
}

OrdinalSymbol symbolize_at(std::span<const double> series, std::size_t last, std::size_t k,
                           std::size_t delta) {
  check_order(k);
  if (delta == 0) throw std::invalid_argument("symbol step must be positive");
  if (last >= series.size()) throw std::out_of_range("symbol end index beyond series");
  if (last < (k - 1) * delta) throw InsufficientData("insufficient history for symbol");

  std::array<std::uint8_t, kMaxPatternLength> pos;
  const std::size_t first = last - (k - 1) * delta;
  sort_positions(series, first, k, delta, pos);

  OrdinalSymbol symbol;
  symbol.pattern.reserve(k);
  for (std::size_t i = 0; i < k; ++i) symbol.pattern.push_back(pos[i] + 1);
  symbol.code = rank(pos, k);
  return symbol;
}

SymbolSequence symbol_sequence(std::span<const double> series, std::size_t k, std::size_t delta) {
  check_order(k);
  if (delta == 0) throw std::invalid_argument("symbol step must be positive");
  SymbolSequence seq{{}, k, delta, series.size()};
  const std::size_t span = (k - 1) * delta;
  if (series.size() < span + 1) return seq;
  seq.codes.reserve(series.size() - span);
  for (std::size_t last = span; last < series.size(); ++last)
    seq.codes.push_back(ordinal_code(series, last, k, delta));
  return seq;
}

}  // namespace teflow
