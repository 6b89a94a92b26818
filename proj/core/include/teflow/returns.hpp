#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace teflow {

/// Geometric returns at lag `delta`, measured in steps of the parent sequence.
struct ReturnSeries {
  std::vector<double> values;  // |values| == parent_length - delta
  std::size_t delta = 0;
  std::size_t parent_length = 0;
};

/// values[i] = ln(prices[i + delta]) - ln(prices[i]).
/// Throws InsufficientData when |prices| <= delta and std::domain_error on a
/// non-positive price. `delta` must be positive.
ReturnSeries log_returns(std::span<const double> prices, std::size_t delta);

}  // namespace teflow
