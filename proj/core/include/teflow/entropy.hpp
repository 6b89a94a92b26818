#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "teflow/symbolic.hpp"

namespace teflow {

/// Which symbol of the target series is predicted.
enum class FutureSymbol {
  /// The (k+1)-pattern ending at t: the k-past of the target plus its newest
  /// value x_t. This is the estimator used throughout the pipeline.
  Extended,
  /// The k-pattern ending at t (classic symbolic transfer entropy).
  Shifted,
};

/// Occurrence counts of (future, target past, source past) symbol triples.
///
/// For each admissible t (k*delta <= t < n) the target past is the k-pattern
/// of x ending at t - delta, the source past the k-pattern of y ending at
/// t - delta, and the future the pattern of x ending at t. Cells are kept in
/// ascending (future, past_x, past_y) order.
class JointCountTable {
 public:
  struct Cell {
    SymbolCode future;
    SymbolCode past_x;
    SymbolCode past_y;
    std::uint64_t count;
  };

  JointCountTable(std::size_t k, FutureSymbol mode, std::vector<Cell> cells);

  std::span<const Cell> cells() const { return cells_; }
  std::uint64_t total() const { return total_; }
  std::size_t k() const { return k_; }
  FutureSymbol mode() const { return mode_; }
  /// Number of distinct future codes: (k+1)! or k!.
  std::size_t future_alphabet() const;
  std::uint64_t count(SymbolCode future, SymbolCode past_x, SymbolCode past_y) const;

 private:
  std::size_t k_;
  FutureSymbol mode_;
  std::vector<Cell> cells_;
  std::uint64_t total_ = 0;
};

/// Number of (future, past, past) samples a pair of length-n sequences yields.
inline std::size_t admissible_samples(std::size_t n, std::size_t k, std::size_t delta) {
  return n > k * delta ? n - k * delta : 0;
}

/// Throws InsufficientData unless |x| == |y| and |x| >= k*delta + 1.
JointCountTable joint_counts(std::span<const double> x, std::span<const double> y, std::size_t k,
                             std::size_t delta, FutureSymbol mode = FutureSymbol::Extended);

/// Plug-in transfer entropy in bits from a count table. Only observed triples
/// contribute.
double transfer_entropy(const JointCountTable& counts);

/// Information flow from y to x predicting the (k+1)-pattern future of x.
double transfer_entropy(std::span<const double> x, std::span<const double> y, std::size_t k,
                        std::size_t delta);

/// Information flow from y to x predicting the k-pattern future of x.
double transfer_entropy_ste(std::span<const double> x, std::span<const double> y, std::size_t k,
                            std::size_t delta);

/// Directed transfer-entropy values between N series for one window and lag.
/// Entry (i, j) is the flow from series i to series j. The diagonal and any
/// pair that could not be evaluated are invalid.
class TEMatrix {
 public:
  TEMatrix() = default;
  TEMatrix(std::size_t n, std::size_t window, std::size_t delta, std::size_t k);

  std::size_t size() const { return n_; }
  std::size_t window() const { return window_; }
  std::size_t delta() const { return delta_; }
  std::size_t k() const { return k_; }

  double value(std::size_t from, std::size_t to) const { return values_[from * n_ + to]; }
  bool valid(std::size_t from, std::size_t to) const { return valid_[from * n_ + to] != 0; }
  /// Sets a valid entry. Throws std::invalid_argument on the diagonal, on a
  /// negative value, or on a non-finite value.
  void set(std::size_t from, std::size_t to, double value);
  void invalidate(std::size_t from, std::size_t to);

  std::size_t valid_count() const;
  /// Valid entries in row-major order.
  std::vector<double> valid_values() const;

 private:
  std::size_t n_ = 0;
  std::size_t window_ = 0;
  std::size_t delta_ = 0;
  std::size_t k_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> valid_;
};

/// Two aligned, equally long sequences for series i < j.
struct PairSequences {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<double> first;   // from series i
  std::vector<double> second;  // from series j
};

/// Evaluates both directions of every supplied pair. Pairs not supplied, and
/// pairs whose sequences are too short, stay invalid. The result does not
/// depend on the order of `pairs`.
TEMatrix te_matrix(std::size_t n_series, std::span<const PairSequences> pairs, std::size_t k,
                   std::size_t delta, std::size_t window = 0);

}  // namespace teflow
