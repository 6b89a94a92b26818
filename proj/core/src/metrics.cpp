#include "teflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace teflow {

double total_flow(const FlowMatrix& flow) {
  double sum = 0.0;
  for (std::size_t i = 0; i < flow.size(); ++i)
    for (std::size_t j = 0; j < flow.size(); ++j)
      if (flow.valid(i, j)) sum += flow.weight(i, j);
  return sum;
}

double window_drift(const FlowMatrix& current, const FlowMatrix& next) {
  if (current.size() != next.size())
    throw std::invalid_argument("drift needs flow matrices of equal size");
  const std::size_t n = current.size();
  if (n == 0) return 0.0;
  // Invalid cells hold weight 0, so they enter the row sums as 0.
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_change = 0.0;
    for (std::size_t j = 0; j < n; ++j) row_change += next.weight(i, j) - current.weight(i, j);
    sum += std::abs(row_change);
  }
  return sum / static_cast<double>(n);
}

std::vector<double> directionality(const FlowMatrix& flow) {
  const std::size_t n = flow.size();
  std::vector<double> out(n, 0.0);
  // Summing per-pair differences keeps the result exactly antisymmetric under
  // transposition and exactly zero for symmetric matrices.
  for (std::size_t s = 0; s < n; ++s) {
    double net = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == s) continue;
      net += flow.weight(s, j) - flow.weight(j, s);
    }
    out[s] = net;
  }
  return out;
}

std::vector<std::vector<double>> smooth_directionality(std::span<const std::vector<double>> rows,
                                                       std::size_t group) {
  if (group == 0) throw std::invalid_argument("smoothing group must be positive");
  std::vector<std::vector<double>> out;
  if (rows.empty()) return out;
  const std::size_t width = rows.front().size();
  for (std::size_t start = 0; start < rows.size(); start += group) {
    const std::size_t end = std::min(start + group, rows.size());
    std::vector<double> mean(width, 0.0);
    for (std::size_t r = start; r < end; ++r) {
      if (rows[r].size() != width) throw std::invalid_argument("ragged directionality rows");
      for (std::size_t c = 0; c < width; ++c) mean[c] += rows[r][c];
    }
    for (auto& v : mean) v /= static_cast<double>(end - start);
    out.push_back(std::move(mean));
  }
  return out;
}

std::vector<std::vector<double>> smooth_directionality(std::span<const WindowReport> reports,
                                                       std::size_t group) {
  std::vector<std::vector<double>> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back(r.directionality);
  return smooth_directionality(std::span<const std::vector<double>>(rows), group);
}

std::vector<InfluenceRank> influence_ranking(std::span<const WindowReport> reports) {
  std::vector<InfluenceRank> ranks;
  for (const auto& report : reports) {
    if (ranks.size() < report.directionality.size()) {
      for (std::size_t s = ranks.size(); s < report.directionality.size(); ++s)
        ranks.push_back({s, 0.0});
    }
    for (std::size_t s = 0; s < report.directionality.size(); ++s)
      ranks[s].total_directionality += report.directionality[s];
  }
  std::stable_sort(ranks.begin(), ranks.end(), [](const InfluenceRank& a, const InfluenceRank& b) {
    return a.total_directionality > b.total_directionality;
  });
  return ranks;
}

}  // namespace teflow
