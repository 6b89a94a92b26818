// teflow: directed information-flow networks between price series.
//
//   teflow analyze --config run.cfg [--input prices.csv] [--out results/]
//                  [--delta 1,2,3] [--seed N] [--domain returns|prices]
//   teflow report --out results/
//   teflow surrogate-check --input prices.csv

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "teflow/config.hpp"
#include "teflow/error.hpp"
#include "teflow/market_data.hpp"
#include "teflow/pipeline.hpp"
#include "teflow/surrogate.hpp"

namespace {

int cmd_analyze(const std::string& config_path, const std::string& input, const std::string& out,
                const std::string& deltas, const std::optional<std::uint64_t>& seed,
                const std::string& domain, const std::optional<std::size_t>& threads) {
  auto config = teflow::load_config(config_path);
  if (!input.empty()) config.input = input;
  if (!out.empty()) config.output = out;
  if (!deltas.empty()) config.deltas = teflow::parse_delta_list(deltas);
  if (seed) config.seed = *seed;
  if (!domain.empty()) config.domain = teflow::parse_analysis_domain(domain);
  if (threads) config.threads = *threads;
  if (config.output.empty()) throw teflow::ConfigError("no output directory (--out or 'out =')");

  const auto result = teflow::run(config);
  for (const auto& d : result.manifest.diagnostics)
    std::cerr << "warning: " << d.source << ':' << d.line << ": " << d.message << '\n';
  for (const auto& n : result.manifest.notes) std::cerr << "warning: " << n << '\n';

  std::size_t failed = 0;
  for (const auto& u : result.manifest.units) {
    if (u.ok) continue;
    ++failed;
    std::cerr << "unit delta=" << u.delta << " window=" << u.window << " failed: " << u.message
              << '\n';
  }
  std::cout << result.tickers.size() << " series, " << result.windows.size() << " windows, "
            << config.deltas.size() << " lags; " << failed << " failed units; output in "
            << config.output.string() << '\n';
  return 0;
}

int cmd_report(const std::string& out) {
  const auto result = teflow::regenerate_reports(out);
  std::size_t reports = 0;
  for (const auto& d : result.deltas) reports += d.reports.size();
  std::cout << "regenerated " << reports << " window reports in " << out << '\n';
  return 0;
}

int cmd_surrogate_check(const std::string& input, std::uint64_t seed, const std::string& domain,
                        double tolerance) {
  const auto loaded = teflow::load_price_csv(input);
  const auto surrogate_domain = teflow::parse_surrogate_domain(domain);
  bool all_ok = true;
  std::printf("%-12s %8s %14s %14s %s\n", "ticker", "length", "max_rel_err", "imag_residue",
              "status");
  for (std::size_t s = 0; s < loaded.series.size(); ++s) {
    const auto& series = loaded.series[s];
    if (series.size() < 2) {
      std::printf("%-12s %8zu %14s %14s skipped\n", series.ticker().c_str(), series.size(), "-",
                  "-");
      continue;
    }
    std::vector<double> source(series.closes().begin(), series.closes().end());
    if (surrogate_domain == teflow::SurrogateDomain::LogPrice)
      for (auto& v : source) v = std::log(v);
    std::mt19937_64 rng(teflow::derive_seed({seed, 0, s, 0}));
    const auto surrogate = teflow::phase_randomize(source, rng);
    const auto check = teflow::check_spectrum(source, surrogate);
    const bool ok = check.passed(tolerance);
    all_ok = all_ok && ok;
    std::printf("%-12s %8zu %14.3e %14.3e %s\n", series.ticker().c_str(), series.size(),
                check.max_relative_error, check.max_imag_residue, ok ? "ok" : "FAILED");
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed information-flow networks between financial time series"};
  app.require_subcommand(1);

  std::string config_path, input, out, deltas, domain;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  auto* analyze = app.add_subcommand("analyze", "Run the full window/lag sweep");
  analyze->add_option("--config", config_path, "Key-value configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--input", input, "Price CSV file or per-ticker directory");
  analyze->add_option("--out", out, "Output directory");
  analyze->add_option("--delta", deltas, "Lags, e.g. 1,2,3 or 1-10");
  analyze->add_option("--seed", seed, "Master surrogate seed");
  analyze->add_option("--domain", domain, "returns or prices");
  analyze->add_option("--threads", threads, "Worker threads (0: all cores)");

  std::string report_out;
  auto* report = app.add_subcommand("report", "Regenerate roll-up tables from cached matrices");
  report->add_option("--out", report_out, "Output directory of a previous run")
      ->required()
      ->check(CLI::ExistingDirectory);

  std::string check_input, check_domain = "log-price";
  std::uint64_t check_seed = 0;
  double tolerance = 1e-9;
  auto* check = app.add_subcommand("surrogate-check", "Spectrum-preservation diagnostic");
  check->add_option("--input", check_input, "Price CSV file or per-ticker directory")
      ->required()
      ->check(CLI::ExistingPath);
  check->add_option("--seed", check_seed, "Seed for the random phases");
  check->add_option("--domain", check_domain, "log-price or price");
  check->add_option("--tolerance", tolerance, "Relative tolerance per frequency bin");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(config_path, input, out, deltas, seed, domain, threads);
    if (*report) return cmd_report(report_out);
    if (*check) return cmd_surrogate_check(check_input, check_seed, check_domain, tolerance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
