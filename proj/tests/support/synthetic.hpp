#pragma once

// Synthetic price panels for tests. Returns are generated first and turned
// into prices by p_t = 100 * exp(sum of returns), so the pipeline's lag-1 log
// returns recover them exactly (up to rounding).

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "teflow/market_data.hpp"

namespace teflow::synthetic {

inline Date day(std::size_t i) {
  return std::chrono::sys_days{std::chrono::year{2000} / 1 / 3} + std::chrono::days{i};
}

inline std::string ticker(std::size_t i) {
  return (i < 10 ? "S0" : "S") + std::to_string(i);
}

inline PriceSeries from_returns(std::string name, const std::vector<double>& returns) {
  std::vector<Observation> obs;
  obs.reserve(returns.size() + 1);
  double log_price = std::log(100.0);
  obs.push_back({day(0), 100.0});
  for (std::size_t t = 0; t < returns.size(); ++t) {
    log_price += returns[t];
    obs.push_back({day(t + 1), std::exp(log_price)});
  }
  return PriceSeries(std::move(name), std::move(obs));
}

inline std::vector<double> gaussian(std::size_t n, std::mt19937_64& rng, double sigma = 1.0) {
  std::normal_distribution<double> dist(0.0, sigma);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

/// Independent Gaussian-return series.
inline std::vector<PriceSeries> independent_panel(std::size_t stocks, std::size_t days,
                                                  std::uint64_t seed, double sigma = 0.01) {
  std::mt19937_64 rng(seed);
  std::vector<PriceSeries> out;
  for (std::size_t s = 0; s < stocks; ++s) out.push_back(from_returns(ticker(s), gaussian(days, rng, sigma)));
  return out;
}

/// x_t = coupling * y_{t-lag} + eps_t with unit-variance Gaussian y and eps,
/// both read as daily log returns. Series 0 is X, series 1 is Y.
inline std::vector<PriceSeries> lagged_pair(std::size_t days, std::size_t lag, double coupling,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto y = gaussian(days + lag, rng);
  const auto eps = gaussian(days, rng);
  std::vector<double> x(days), y_out(days);
  for (std::size_t t = 0; t < days; ++t) {
    x[t] = coupling * y[t] + eps[t];  // y[t] is y_{t - lag} on the output clock
    y_out[t] = y[t + lag];
  }
  // Small daily scale keeps prices in a realistic range; the analysis is
  // scale-free.
  for (auto& v : x) v *= 0.01;
  for (auto& v : y_out) v *= 0.01;
  return {from_returns("X", x), from_returns("Y", y_out)};
}

/// Crisis panel: independent returns everywhere except in days
/// [block_start, block_start + block_length), where the first half of the
/// stocks load on a common factor f_t and the second half on f_{t-lag}.
inline std::vector<PriceSeries> crisis_panel(std::size_t stocks, std::size_t days,
                                             std::size_t block_start, std::size_t block_length,
                                             std::size_t lag, double loading,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto factor = gaussian(days + lag, rng);
  std::vector<PriceSeries> out;
  for (std::size_t s = 0; s < stocks; ++s) {
    auto r = gaussian(days, rng);
    const bool follower = s >= stocks / 2;
    for (std::size_t t = block_start; t < block_start + block_length && t < days; ++t)
      r[t] += loading * factor[follower ? t : t + lag];
    for (auto& v : r) v *= 0.01;
    out.push_back(from_returns(ticker(s), r));
  }
  return out;
}

/// Long-format CSV `date,ticker,close`.
inline void write_long_csv(const std::filesystem::path& path, const std::vector<PriceSeries>& panel) {
  std::ofstream out(path);
  out << "date,ticker,close\n";
  out.precision(17);
  for (const auto& s : panel)
    for (std::size_t i = 0; i < s.size(); ++i)
      out << format_date(s.dates()[i]) << ',' << s.ticker() << ',' << s.closes()[i] << '\n';
}

}  // namespace teflow::synthetic
