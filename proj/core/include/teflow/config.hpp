#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "teflow/surrogate.hpp"
#include "teflow/validation.hpp"

namespace teflow {

/// Series the ordinal patterns are built from.
enum class AnalysisDomain {
  Returns,  // log returns at lag delta
  Prices,   // closing prices as they are
};

std::string_view to_string(AnalysisDomain domain);
AnalysisDomain parse_analysis_domain(std::string_view text);

/// Every tunable of a run. Defaults reproduce the reference protocol:
/// 500-day windows shifted by 25 days, k = 2, lags 1..10, 80% pair coverage,
/// a = 100, r* = 0.03, 21-window surrogate pooling.
struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  std::size_t window_length = 500;
  std::size_t window_shift = 25;
  std::size_t k = 2;
  std::vector<std::size_t> deltas = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double coverage = 0.8;
  ValidationParams validation;
  std::size_t n_realizations = 1;
  SurrogateDomain surrogate_domain = SurrogateDomain::LogPrice;
  std::uint64_t seed = 0;
  AnalysisDomain domain = AnalysisDomain::Returns;
  std::size_t smoothing_group = 3;
  std::size_t threads = 0;  // 0: hardware concurrency
  bool record_timing = false;

  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

/// Parses "1,2,3" and ranges such as "1-10" or "1-3,7". Sorted, unique.
std::vector<std::size_t> parse_delta_list(std::string_view text);

/// Applies one `key = value` setting. Throws ConfigError on unknown keys or
/// malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat key-value text: one `key = value` per line, `#` starts a comment.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Canonical `key = value` lines of every setting that affects results.
/// Output location and thread count are omitted; parse_config round-trips it.
std::string config_snapshot(const RunConfig& config);

}  // namespace teflow
