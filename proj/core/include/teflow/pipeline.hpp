#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teflow/config.hpp"
#include "teflow/entropy.hpp"
#include "teflow/market_data.hpp"
#include "teflow/metrics.hpp"
#include "teflow/validation.hpp"

namespace teflow {

/// Outcome of one (window, delta) unit.
struct UnitOutcome {
  std::size_t window = 0;
  std::size_t delta = 0;
  bool ok = true;
  std::string message;
  double seconds = 0.0;
};

struct RunManifest {
  std::string version;
  std::string config_snapshot;
  std::string input_checksum;  // SHA-256 of the input file or directory tree
  std::vector<std::string> tickers;
  std::size_t windows = 0;
  std::vector<Diagnostic> diagnostics;
  std::vector<UnitOutcome> units;  // ordered by (delta, window)
  std::vector<std::string> notes;
};

/// All artifacts of one lag.
struct DeltaResult {
  std::size_t delta = 0;
  std::vector<std::optional<TEMatrix>> real;       // [window]
  std::vector<std::vector<TEMatrix>> surrogate;    // [window][realization]
  std::vector<std::optional<FlowMatrix>> flow;     // [window]
  std::vector<WindowReport> reports;               // windows with a flow matrix
};

struct RunResult {
  std::vector<std::string> tickers;
  std::vector<WindowSpec> windows;
  std::vector<DeltaResult> deltas;  // same order as config.deltas
  RunManifest manifest;
};

/// Sequence fed to the symbolizer for one aligned price sequence.
std::vector<double> analysis_series(std::span<const double> closes, std::size_t delta,
                                    AnalysisDomain domain);

/// Real and surrogate transfer-entropy matrices of one (window, delta) unit.
struct UnitMatrices {
  TEMatrix real;
  std::vector<TEMatrix> surrogate;
};
UnitMatrices compute_unit(std::span<const PriceSeries> series, const WindowSpec& window,
                          std::size_t delta, const RunConfig& config);

/// Surrogate pooling, flow matrices and window reports for one lag, given its
/// transfer-entropy matrices. Failures are appended to `units`.
void finish_delta(DeltaResult& result, std::span<const WindowSpec> windows,
                  const RunConfig& config, std::vector<UnitOutcome>& units);

/// Runs every (window, delta) unit over in-memory series. No files are
/// touched. Units that throw are recorded as failed and the run continues.
RunResult analyze(std::span<const PriceSeries> series, const RunConfig& config);

/// Loads config.input, analyzes it and, when config.output is set, writes all
/// artifacts. Fatal input errors throw.
RunResult run(const RunConfig& config);

/// run() with the analysis domain forced to raw prices.
RunResult run_prices_variant(RunConfig config);

/// Writes matrices, roll-up tables and the manifest below config.output.
void write_outputs(const RunResult& result, const RunConfig& config);

/// Rebuilds flow matrices and roll-up tables from the cached matrices of a
/// previous run in `out_dir`.
RunResult regenerate_reports(const std::filesystem::path& out_dir);

/// Runs fn(0) ... fn(count - 1) on up to `threads` workers (0: hardware
/// concurrency). Exceptions propagate after all workers finish.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace teflow
