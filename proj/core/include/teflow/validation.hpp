#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "teflow/entropy.hpp"

namespace teflow {

struct ValidationParams {
  double a = 100.0;             // logistic steepness
  double r_star = 0.03;         // survival ratio at which the weight is 1/2
  std::size_t bracket = 10;     // windows pooled on each side of w
  double link_threshold = 0.03; // raw TE threshold for link counting
};

/// Number of elements of an ascending sequence that are >= x.
std::size_t tail_count(std::span<const double> sorted, double x);

/// r(x) = [#{s >= x} / |S|] / [#{t >= x} / |T|], the ratio of empirical
/// survival functions of the surrogate and real samples. Throws
/// std::invalid_argument when either sample is empty or no real value reaches x.
double survival_ratio(double x, std::span<const double> real_values,
                      std::span<const double> surrogate_values);

/// 1 / (exp(2a (r - r*)) + 1).
double flow_weight(double r, double a = 100.0, double r_star = 0.03);

/// Surrogate transfer-entropy values of windows [first_window, last_window].
struct BenchmarkPool {
  std::vector<double> values;  // ascending
  std::size_t window = 0;
  std::size_t bracket = 0;
  std::size_t first_window = 0;
  std::size_t last_window = 0;

  std::size_t windows_spanned() const { return last_window - first_window + 1; }
};

/// Pools every valid entry of the surrogate matrices of windows
/// max(w - bracket, 0) .. min(w + bracket, last). `by_window[v]` holds the
/// surrogate matrices (one per realization) of window v.
BenchmarkPool make_benchmark_pool(std::span<const std::vector<TEMatrix>> by_window,
                                  std::size_t window, std::size_t bracket);

/// Filtered link weights in [0, 1]. Entry (i, j) weighs the flow i -> j;
/// invalid entries carry weight 0.
class FlowMatrix {
 public:
  FlowMatrix() = default;
  FlowMatrix(std::size_t n, std::size_t window, std::size_t delta, double a, double r_star);

  std::size_t size() const { return n_; }
  std::size_t window() const { return window_; }
  std::size_t delta() const { return delta_; }
  double a() const { return a_; }
  double r_star() const { return r_star_; }

  double weight(std::size_t from, std::size_t to) const { return weights_[from * n_ + to]; }
  bool valid(std::size_t from, std::size_t to) const { return valid_[from * n_ + to] != 0; }
  /// Throws std::invalid_argument on the diagonal or outside [0, 1].
  void set(std::size_t from, std::size_t to, double weight);

 private:
  std::size_t n_ = 0;
  std::size_t window_ = 0;
  std::size_t delta_ = 0;
  double a_ = 0.0;
  double r_star_ = 0.0;
  std::vector<double> weights_;
  std::vector<std::uint8_t> valid_;
};

/// Weighs every valid entry of `real` by flow_weight(survival_ratio(x, T, S))
/// where T is the set of valid entries of `real` and S the pool. Throws
/// std::invalid_argument when the pool is empty.
FlowMatrix flow_matrix(const TEMatrix& real, const BenchmarkPool& pool,
                       double a = 100.0, double r_star = 0.03);

/// #{real > threshold} / #{surrogate > threshold} over valid entries; nullopt
/// when no surrogate entry exceeds the threshold.
std::optional<double> link_count_ratio(const TEMatrix& real, const TEMatrix& surrogate,
                                       double threshold = 0.03);

}  // namespace teflow
