#pragma once

// Reference implementations used only by tests. They share no code with the
// library: patterns are compared as vectors, counts come from brute-force
// scans over all samples, and the DFT is the O(n^2) definition.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <tuple>
#include <utility>
#include <vector>

namespace teflow::oracle {

/// Positions (1-based, oldest first) sorted by (value, position).
inline std::vector<int> pattern(const std::vector<double>& s, std::size_t last, std::size_t k,
                                std::size_t delta) {
  std::vector<std::pair<double, int>> items;
  for (std::size_t p = 0; p < k; ++p)
    items.emplace_back(s[last - (k - 1 - p) * delta], static_cast<int>(p + 1));
  std::sort(items.begin(), items.end());
  std::vector<int> out;
  for (const auto& it : items) out.push_back(it.second);
  return out;
}

using Triple = std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>;

inline std::vector<Triple> samples(const std::vector<double>& x, const std::vector<double>& y,
                                   std::size_t k, std::size_t delta, bool extended) {
  std::vector<Triple> out;
  for (std::size_t t = k * delta; t < x.size(); ++t) {
    out.emplace_back(pattern(x, t, extended ? k + 1 : k, delta), pattern(x, t - delta, k, delta),
                     pattern(y, t - delta, k, delta));
  }
  return out;
}

/// Plug-in transfer entropy y -> x by naive tabulation: each conditional
/// probability is recomputed by scanning every sample.
inline double transfer_entropy(const std::vector<double>& x, const std::vector<double>& y,
                               std::size_t k, std::size_t delta, bool extended = true) {
  const auto all = samples(x, y, k, delta, extended);
  std::map<Triple, std::size_t> joint;
  for (const auto& s : all) ++joint[s];
  const double n = static_cast<double>(all.size());
  double te = 0.0;
  for (const auto& [triple, count] : joint) {
    const auto& [f, a, b] = triple;
    double c_ab = 0, c_fa = 0, c_a = 0;
    for (const auto& s : all) {
      const bool same_a = std::get<1>(s) == a;
      if (!same_a) continue;
      c_a += 1;
      if (std::get<2>(s) == b) c_ab += 1;
      if (std::get<0>(s) == f) c_fa += 1;
    }
    const double p_fab = static_cast<double>(count) / n;
    const double p_f_given_ab = static_cast<double>(count) / c_ab;
    const double p_f_given_a = c_fa / c_a;
    te += p_fab * std::log2(p_f_given_ab / p_f_given_a);
  }
  return te;
}

inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double angle =
          -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
      acc += x[t] * std::polar(1.0, angle);
    }
    out[k] = acc;
  }
  return out;
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
inline std::pair<double, double> ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  const double ne = static_cast<double>(a.size() * b.size()) / static_cast<double>(a.size() + b.size());
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0.0;
  for (int m = 1; m <= 100; ++m) {
    const double term = 2.0 * (m % 2 ? 1.0 : -1.0) * std::exp(-2.0 * m * m * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  return {d, std::clamp(p, 0.0, 1.0)};
}

}  // namespace teflow::oracle
