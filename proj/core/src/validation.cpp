#include "teflow/validation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace teflow {

std::size_t tail_count(std::span<const double> sorted, double x) {
  return static_cast<std::size_t>(sorted.end() -
                                  std::lower_bound(sorted.begin(), sorted.end(), x));
}

namespace {

double sorted_survival_ratio(double x, std::span<const double> real_sorted,
                             std::span<const double> surrogate_sorted) {
  const std::size_t real_tail = tail_count(real_sorted, x);
  if (real_tail == 0) throw std::invalid_argument("survival ratio evaluated beyond the real sample");
  const double surrogate_survival =
      static_cast<double>(tail_count(surrogate_sorted, x)) /
      static_cast<double>(surrogate_sorted.size());
  const double real_survival =
      static_cast<double>(real_tail) / static_cast<double>(real_sorted.size());
  return surrogate_survival / real_survival;
}

}  // namespace

double survival_ratio(double x, std::span<const double> real_values,
                      std::span<const double> surrogate_values) {
  if (real_values.empty() || surrogate_values.empty())
    throw std::invalid_argument("survival ratio needs nonempty samples");
  std::vector<double> real(real_values.begin(), real_values.end());
  std::vector<double> surrogate(surrogate_values.begin(), surrogate_values.end());
  std::sort(real.begin(), real.end());
  std::sort(surrogate.begin(), surrogate.end());
  return sorted_survival_ratio(x, real, surrogate);
}

double flow_weight(double r, double a, double r_star) {
  return 1.0 / (std::exp(2.0 * a * (r - r_star)) + 1.0);
}

BenchmarkPool make_benchmark_pool(std::span<const std::vector<TEMatrix>> by_window,
                                  std::size_t window, std::size_t bracket) {
  if (window >= by_window.size()) throw std::out_of_range("pool window out of range");
  BenchmarkPool pool;
  pool.window = window;
  pool.bracket = bracket;
  pool.first_window = window >= bracket ? window - bracket : 0;
  pool.last_window = std::min(window + bracket, by_window.size() - 1);
  for (std::size_t v = pool.first_window; v <= pool.last_window; ++v) {
    for (const auto& m : by_window[v]) {
      const auto values = m.valid_values();
      pool.values.insert(pool.values.end(), values.begin(), values.end());
    }
  }
  std::sort(pool.values.begin(), pool.values.end());
  return pool;
}

FlowMatrix::FlowMatrix(std::size_t n, std::size_t window, std::size_t delta, double a,
                       double r_star)
    : n_(n), window_(window), delta_(delta), a_(a), r_star_(r_star),
      weights_(n * n, 0.0), valid_(n * n, 0) {}

void FlowMatrix::set(std::size_t from, std::size_t to, double weight) {
  if (from >= n_ || to >= n_) throw std::out_of_range("FlowMatrix index");
  if (from == to) throw std::invalid_argument("FlowMatrix diagonal is always invalid");
  if (!(weight >= 0.0 && weight <= 1.0)) throw std::invalid_argument("flow weight outside [0, 1]");
  weights_[from * n_ + to] = weight;
  valid_[from * n_ + to] = 1;
}

FlowMatrix flow_matrix(const TEMatrix& real, const BenchmarkPool& pool, double a,
                       double r_star) {
  if (pool.values.empty()) throw std::invalid_argument("empty surrogate benchmark pool");
  FlowMatrix flow(real.size(), real.window(), real.delta(), a, r_star);
  auto real_sorted = real.valid_values();
  std::sort(real_sorted.begin(), real_sorted.end());
  for (std::size_t i = 0; i < real.size(); ++i) {
    for (std::size_t j = 0; j < real.size(); ++j) {
      if (!real.valid(i, j)) continue;
      const double r = sorted_survival_ratio(real.value(i, j), real_sorted, pool.values);
      flow.set(i, j, flow_weight(r, a, r_star));
    }
  }
  return flow;
}

std::optional<double> link_count_ratio(const TEMatrix& real, const TEMatrix& surrogate,
                                       double threshold) {
  auto above = [threshold](const TEMatrix& m) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m.valid(i, j) && m.value(i, j) > threshold) ++count;
    return count;
  };
  const std::size_t denominator = above(surrogate);
  if (denominator == 0) return std::nullopt;
  return static_cast<double>(above(real)) / static_cast<double>(denominator);
}

}  // namespace teflow
