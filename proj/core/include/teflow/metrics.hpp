#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teflow/market_data.hpp"
#include "teflow/validation.hpp"

namespace teflow {

/// Window-level observables of one (window, delta) flow matrix.
struct WindowReport {
  std::size_t window = 0;
  Date center_date{};
  std::size_t delta = 0;
  double total_flow = 0.0;
  std::optional<double> drift;       // none for the last window
  std::vector<double> directionality;
  std::optional<double> link_ratio;  // none when no surrogate link passes
  std::size_t valid_pairs = 0;       // valid directed cells
  std::size_t pool_size = 0;
};

/// Sum of all valid weights, accumulated in row-major order.
double total_flow(const FlowMatrix& flow);

/// (1/N) sum_i |sum_j (next(i,j) - current(i,j))|. Throws std::invalid_argument
/// when the matrices differ in size.
double window_drift(const FlowMatrix& current, const FlowMatrix& next);

/// Outgoing minus incoming weight per series; positive values lead the market.
std::vector<double> directionality(const FlowMatrix& flow);

/// Element-wise means over consecutive non-overlapping groups of `group` rows.
/// A trailing partial group is averaged over its actual size. Throws
/// std::invalid_argument when group == 0 or the rows differ in length.
std::vector<std::vector<double>> smooth_directionality(std::span<const std::vector<double>> rows,
                                                       std::size_t group = 3);
std::vector<std::vector<double>> smooth_directionality(std::span<const WindowReport> reports,
                                                       std::size_t group = 3);

struct InfluenceRank {
  std::size_t series = 0;
  double total_directionality = 0.0;
};

/// Series ordered by descending directionality summed over all windows; ties
/// keep the lower index first.
std::vector<InfluenceRank> influence_ranking(std::span<const WindowReport> reports);

}  // namespace teflow
