#include "teflow/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "teflow/error.hpp"

namespace teflow {

namespace {

// Tables up to this many cells are counted in a dense array; larger ones
// (k >= 4) are sorted instead.
constexpr std::size_t kDenseLimit = std::size_t{1} << 18;

}  // namespace

JointCountTable::JointCountTable(std::size_t k, FutureSymbol mode, std::vector<Cell> cells)
    : k_(k), mode_(mode), cells_(std::move(cells)) {
  for (const auto& c : cells_) total_ += c.count;
}

std::size_t JointCountTable::future_alphabet() const {
  return factorial(mode_ == FutureSymbol::Extended ? k_ + 1 : k_);
}

std::uint64_t JointCountTable::count(SymbolCode future, SymbolCode past_x,
                                     SymbolCode past_y) const {
  const auto key = std::make_tuple(future, past_x, past_y);
  const auto it = std::lower_bound(cells_.begin(), cells_.end(), key, [](const Cell& c, auto k) {
    return std::make_tuple(c.future, c.past_x, c.past_y) < k;
  });
  if (it == cells_.end() || std::make_tuple(it->future, it->past_x, it->past_y) != key) return 0;
  return it->count;
}

JointCountTable joint_counts(std::span<const double> x, std::span<const double> y, std::size_t k,
                             std::size_t delta, FutureSymbol mode) {
  if (k == 0 || k + 1 > kMaxPatternLength)
    throw std::invalid_argument("pattern length out of supported range");
  if (delta == 0) throw std::invalid_argument("symbol step must be positive");
  if (x.size() != y.size()) throw std::invalid_argument("source and target must be aligned");
  if (x.size() < k * delta + 1) throw InsufficientData("insufficient samples");

  const std::size_t future_len = mode == FutureSymbol::Extended ? k + 1 : k;
  const std::uint64_t past_alpha = factorial(k);
  const std::uint64_t future_alpha = factorial(future_len);
  const std::uint64_t cells = future_alpha * past_alpha * past_alpha;

  std::vector<std::uint64_t> keys;
  keys.reserve(x.size() - k * delta);
  for (std::size_t t = k * delta; t < x.size(); ++t) {
    const std::uint64_t f = ordinal_code(x, t, future_len, delta);
    const std::uint64_t a = ordinal_code(x, t - delta, k, delta);
    const std::uint64_t b = ordinal_code(y, t - delta, k, delta);
    keys.push_back((f * past_alpha + a) * past_alpha + b);
  }

  std::vector<JointCountTable::Cell> out;
  auto emit = [&](std::uint64_t key, std::uint64_t count) {
    const auto b = static_cast<SymbolCode>(key % past_alpha);
    key /= past_alpha;
    const auto a = static_cast<SymbolCode>(key % past_alpha);
    const auto f = static_cast<SymbolCode>(key / past_alpha);
    out.push_back({f, a, b, count});
  };

  if (cells <= kDenseLimit) {
    std::vector<std::uint32_t> dense(cells, 0);
    for (const auto key : keys) ++dense[key];
    for (std::uint64_t key = 0; key < cells; ++key)
      if (dense[key] != 0) emit(key, dense[key]);
  } else {
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      emit(keys[i], j - i);
      i = j;
    }
  }
  return JointCountTable(k, mode, std::move(out));
}

double transfer_entropy(const JointCountTable& counts) {
  const auto cells = counts.cells();
  if (cells.empty()) return 0.0;
  const std::size_t past_alpha = factorial(counts.k());

  // Marginals over the target past (a) and (a, source past b).
  std::vector<std::uint64_t> count_a(past_alpha, 0);
  std::vector<std::uint64_t> count_ab(past_alpha * past_alpha, 0);
  for (const auto& c : cells) {
    count_a[c.past_x] += c.count;
    count_ab[c.past_x * past_alpha + c.past_y] += c.count;
  }

  const double total = static_cast<double>(counts.total());
  double sum = 0.0;
  // Cells sharing (future, past_x) are contiguous.
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    std::uint64_t count_fa = 0;
    while (j < cells.size() && cells[j].future == cells[i].future &&
           cells[j].past_x == cells[i].past_x) {
      count_fa += cells[j].count;
      ++j;
    }
    for (std::size_t m = i; m < j; ++m) {
      const auto& c = cells[m];
      // p(f|a,b) / p(f|a) = c(f,a,b) c(a) / (c(a,b) c(f,a)), exact in integers.
      const std::uint64_t num = c.count * count_a[c.past_x];
      const std::uint64_t den = count_ab[c.past_x * past_alpha + c.past_y] * count_fa;
      if (num != den)
        sum += static_cast<double>(c.count) / total *
               std::log2(static_cast<double>(num) / static_cast<double>(den));
    }
    i = j;
  }
  // Gibbs' inequality makes the exact value nonnegative; only rounding can
  // push the sum below zero.
  return std::max(sum, 0.0);
}

double transfer_entropy(std::span<const double> x, std::span<const double> y, std::size_t k,
                        std::size_t delta) {
  return transfer_entropy(joint_counts(x, y, k, delta, FutureSymbol::Extended));
}

double transfer_entropy_ste(std::span<const double> x, std::span<const double> y, std::size_t k,
                            std::size_t delta) {
  return transfer_entropy(joint_counts(x, y, k, delta, FutureSymbol::Shifted));
}

TEMatrix::TEMatrix(std::size_t n, std::size_t window, std::size_t delta, std::size_t k)
    : n_(n), window_(window), delta_(delta), k_(k), values_(n * n, 0.0), valid_(n * n, 0) {}

void TEMatrix::set(std::size_t from, std::size_t to, double value) {
  if (from >= n_ || to >= n_) throw std::out_of_range("TEMatrix index");
  if (from == to) throw std::invalid_argument("TEMatrix diagonal is always invalid");
  if (!std::isfinite(value) || value < 0.0)
    throw std::invalid_argument("transfer entropy must be finite and nonnegative");
  values_[from * n_ + to] = value;
  valid_[from * n_ + to] = 1;
}

void TEMatrix::invalidate(std::size_t from, std::size_t to) {
  if (from >= n_ || to >= n_) throw std::out_of_range("TEMatrix index");
  values_[from * n_ + to] = 0.0;
  valid_[from * n_ + to] = 0;
}

std::size_t TEMatrix::valid_count() const {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), 1));
}

std::vector<double> TEMatrix::valid_values() const {
  std::vector<double> out;
  out.reserve(valid_count());
  for (std::size_t idx = 0; idx < values_.size(); ++idx)
    if (valid_[idx]) out.push_back(values_[idx]);
  return out;
}

TEMatrix te_matrix(std::size_t n_series, std::span<const PairSequences> pairs, std::size_t k,
                   std::size_t delta, std::size_t window) {
  TEMatrix m(n_series, window, delta, k);
  for (const auto& p : pairs) {
    if (p.i >= n_series || p.j >= n_series || p.i == p.j)
      throw std::invalid_argument("pair index out of range");
    try {
      // flow i -> j: target is series j, source series i
      m.set(p.i, p.j, transfer_entropy(p.second, p.first, k, delta));
      m.set(p.j, p.i, transfer_entropy(p.first, p.second, k, delta));
    } catch (const InsufficientData&) {
      m.invalidate(p.i, p.j);
      m.invalidate(p.j, p.i);
    }
  }
  return m;
}

}  // namespace teflow
