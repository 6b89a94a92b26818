#include "teflow/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "teflow/checksum.hpp"
#include "teflow/error.hpp"
#include "teflow/matrix_io.hpp"
#include "teflow/returns.hpp"
#include "teflow/surrogate.hpp"

#ifndef TEFLOW_VERSION
#define TEFLOW_VERSION "unknown"
#endif

namespace teflow {

namespace fs = std::filesystem;

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<double> analysis_series(std::span<const double> closes, std::size_t delta,
                                    AnalysisDomain domain) {
  if (domain == AnalysisDomain::Prices) return {closes.begin(), closes.end()};
  return log_returns(closes, delta).values;
}

namespace {

// Aligns, transforms and evaluates every pair of one set of window slices.
TEMatrix pair_sweep(std::span<const SeriesView> slices, const WindowSpec& window,
                    std::size_t delta, const RunConfig& config) {
  std::vector<PairSequences> pairs;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    for (std::size_t j = i + 1; j < slices.size(); ++j) {
      const auto aligned = align_pair(slices[i], slices[j], window.length, config.coverage);
      if (!aligned) continue;
      try {
        pairs.push_back({i, j, analysis_series(aligned->closes_a, delta, config.domain),
                         analysis_series(aligned->closes_b, delta, config.domain)});
      } catch (const InsufficientData&) {
      } catch (const std::domain_error&) {
        // Non-positive surrogate prices in the raw-price surrogate domain.
      }
    }
  }
  return te_matrix(slices.size(), pairs, config.k, delta, window.index);
}

}  // namespace

UnitMatrices compute_unit(std::span<const PriceSeries> series, const WindowSpec& window,
                          std::size_t delta, const RunConfig& config) {
  std::vector<SeriesView> slices;
  slices.reserve(series.size());
  for (const auto& s : series) slices.push_back(s.slice(window.first, window.last));

  UnitMatrices out{pair_sweep(slices, window, delta, config), {}};

  const auto surrogates = surrogate_window_set(slices, config.n_realizations, config.seed,
                                               window.index, config.surrogate_domain);
  std::vector<SeriesView> views(slices.size());
  for (std::size_t r = 0; r < config.n_realizations; ++r) {
    for (std::size_t s = 0; s < slices.size(); ++s) {
      views[s] = slices[s];
      if (surrogates[s].empty()) {
        views[s].dates = {};
        views[s].values = {};
      } else {
        views[s].values = surrogates[s][r].values;
      }
    }
    out.surrogate.push_back(pair_sweep(views, window, delta, config));
  }
  return out;
}

void finish_delta(DeltaResult& result, std::span<const WindowSpec> windows,
                  const RunConfig& config, std::vector<UnitOutcome>& units) {
  const std::size_t n_windows = windows.size();
  const auto& vp = config.validation;
  result.flow.assign(n_windows, std::nullopt);
  std::vector<std::size_t> pool_sizes(n_windows, 0);
  std::vector<std::string> failures(n_windows);

  parallel_for(n_windows, config.threads, [&](std::size_t w) {
    if (!result.real[w]) return;
    try {
      const auto pool = make_benchmark_pool(result.surrogate, w, vp.bracket);
      pool_sizes[w] = pool.values.size();
      result.flow[w] = flow_matrix(*result.real[w], pool, vp.a, vp.r_star);
    } catch (const std::exception& e) {
      failures[w] = std::string("validation: ") + e.what();
    }
  });

  for (std::size_t w = 0; w < n_windows; ++w) {
    if (failures[w].empty()) continue;
    auto it = std::find_if(units.begin(), units.end(), [&](const UnitOutcome& u) {
      return u.delta == result.delta && u.window == w;
    });
    if (it == units.end()) it = units.insert(units.end(), UnitOutcome{w, result.delta, true, {}, 0.0});
    it->ok = false;
    it->message = failures[w];
  }

  result.reports.clear();
  for (std::size_t w = 0; w < n_windows; ++w) {
    if (!result.flow[w]) continue;
    const auto& flow = *result.flow[w];
    WindowReport report;
    report.window = w;
    report.center_date = windows[w].center;
    report.delta = result.delta;
    report.total_flow = total_flow(flow);
    if (w + 1 < n_windows && result.flow[w + 1])
      report.drift = window_drift(flow, *result.flow[w + 1]);
    report.directionality = directionality(flow);
    if (!result.surrogate[w].empty())
      report.link_ratio =
          link_count_ratio(*result.real[w], result.surrogate[w].front(), vp.link_threshold);
    report.valid_pairs = result.real[w]->valid_count();
    report.pool_size = pool_sizes[w];
    result.reports.push_back(std::move(report));
  }
}

RunResult analyze(std::span<const PriceSeries> series, const RunConfig& config) {
  config.validate();
  RunResult result;
  for (const auto& s : series) result.tickers.push_back(s.ticker());

  const auto calendar = union_calendar(series);
  result.windows = enumerate_windows(calendar, config.window_length, config.window_shift);
  result.manifest.version = TEFLOW_VERSION;
  result.manifest.config_snapshot = config_snapshot(config);
  result.manifest.tickers = result.tickers;
  result.manifest.windows = result.windows.size();
  if (result.windows.empty()) {
    result.manifest.notes.push_back("calendar has " + std::to_string(calendar.size()) +
                                    " days, fewer than one window of " +
                                    std::to_string(config.window_length));
  }

  const std::size_t n_windows = result.windows.size();
  const std::size_t n_deltas = config.deltas.size();
  result.deltas.resize(n_deltas);
  for (std::size_t d = 0; d < n_deltas; ++d) {
    result.deltas[d].delta = config.deltas[d];
    result.deltas[d].real.assign(n_windows, std::nullopt);
    result.deltas[d].surrogate.assign(n_windows, {});
  }

  auto& units = result.manifest.units;
  units.resize(n_deltas * n_windows);
  parallel_for(n_deltas * n_windows, config.threads, [&](std::size_t unit) {
    const std::size_t d = unit / n_windows;
    const std::size_t w = unit % n_windows;
    auto& outcome = units[unit];
    outcome.window = w;
    outcome.delta = config.deltas[d];
    const auto start = std::chrono::steady_clock::now();
    try {
      auto matrices = compute_unit(series, result.windows[w], config.deltas[d], config);
      result.deltas[d].real[w] = std::move(matrices.real);
      result.deltas[d].surrogate[w] = std::move(matrices.surrogate);
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.message = e.what();
    }
    outcome.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  for (auto& delta_result : result.deltas) finish_delta(delta_result, result.windows, config, units);
  return result;
}

RunResult run(const RunConfig& config) {
  config.validate();
  if (config.input.empty()) throw ConfigError("no input path configured");
  auto loaded = load_price_csv(config.input);
  auto result = analyze(loaded.series, config);
  result.manifest.input_checksum = sha256_path(config.input);
  result.manifest.diagnostics = std::move(loaded.diagnostics);
  if (!config.output.empty()) write_outputs(result, config);
  return result;
}

RunResult run_prices_variant(RunConfig config) {
  config.domain = AnalysisDomain::Prices;
  return run(config);
}

namespace {

std::string window_tag(std::size_t w) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "w%04zu", w);
  return buf;
}

fs::path delta_dir(const fs::path& out, std::size_t delta) {
  return out / ("delta_" + std::to_string(delta));
}

fs::path te_path(const fs::path& out, std::size_t delta, std::size_t w) {
  return delta_dir(out, delta) / ("te_" + window_tag(w) + ".csv");
}

fs::path surrogate_path(const fs::path& out, std::size_t delta, std::size_t w, std::size_t r) {
  return delta_dir(out, delta) / ("surrogate_" + window_tag(w) + "_r" + std::to_string(r) + ".csv");
}

fs::path flow_path(const fs::path& out, std::size_t delta, std::size_t w) {
  return delta_dir(out, delta) / ("flow_" + window_tag(w) + ".csv");
}

std::string join_tickers(std::span<const std::string> tickers) {
  std::string out;
  for (const auto& t : tickers) {
    out += ',';
    out += t;
  }
  return out;
}

void write_rollups(const RunResult& result, const RunConfig& config) {
  const auto& out = config.output;
  std::string windows = "w,offset,first_date,center_date,last_date\n";
  for (const auto& w : result.windows) {
    windows += std::to_string(w.index) + ',' + std::to_string(w.offset) + ',' +
               format_date(w.first) + ',' + format_date(w.center) + ',' + format_date(w.last) +
               '\n';
  }
  write_text_file(out / "windows.csv", windows);

  std::string reports = "w,center_date,delta,total_flow,drift,link_ratio\n";
  for (const auto& d : result.deltas) {
    for (const auto& r : d.reports) {
      reports += std::to_string(r.window) + ',' + format_date(r.center_date) + ',' +
                 std::to_string(r.delta) + ',' + format_double(r.total_flow) + ',' +
                 format_optional(r.drift) + ',' + format_optional(r.link_ratio) + '\n';
    }
  }
  write_text_file(out / "reports.csv", reports);

  const auto header = join_tickers(result.tickers);
  for (const auto& d : result.deltas) {
    const auto dir = delta_dir(out, d.delta);

    std::string summary = "w,valid_pairs,pool_size\n";
    std::string heat = "w,center_date" + header + '\n';
    for (const auto& r : d.reports) {
      summary += std::to_string(r.window) + ',' + std::to_string(r.valid_pairs) + ',' +
                 std::to_string(r.pool_size) + '\n';
      heat += std::to_string(r.window) + ',' + format_date(r.center_date);
      for (double v : r.directionality) heat += ',' + format_double(v);
      heat += '\n';
    }
    write_text_file(dir / "summary.csv", summary);
    write_text_file(dir / "directionality.csv", heat);

    std::string smoothed = "tick,first_w,last_w" + header + '\n';
    const auto ticks = smooth_directionality(std::span<const WindowReport>(d.reports),
                                             config.smoothing_group);
    for (std::size_t t = 0; t < ticks.size(); ++t) {
      const std::size_t first = t * config.smoothing_group;
      const std::size_t last = std::min(first + config.smoothing_group, d.reports.size()) - 1;
      smoothed += std::to_string(t) + ',' + std::to_string(d.reports[first].window) + ',' +
                  std::to_string(d.reports[last].window);
      for (double v : ticks[t]) smoothed += ',' + format_double(v);
      smoothed += '\n';
    }
    write_text_file(dir / "directionality_smoothed.csv", smoothed);

    std::string ranking = "rank,ticker,total_directionality\n";
    const auto ranks = influence_ranking(d.reports);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      ranking += std::to_string(i + 1) + ',' + result.tickers[ranks[i].series] + ',' +
                 format_double(ranks[i].total_directionality) + '\n';
    }
    write_text_file(dir / "ranking.csv", ranking);

    for (std::size_t w = 0; w < d.flow.size(); ++w)
      if (d.flow[w]) write_flow_matrix(flow_path(out, d.delta, w), *d.flow[w], result.tickers);
  }
}

std::string render_manifest(const RunManifest& m, bool timing) {
  std::ostringstream out;
  out << "# teflow run manifest\n"
      << "version = " << m.version << '\n'
      << "input_sha256 = " << m.input_checksum << '\n'
      << "series = " << m.tickers.size() << '\n'
      << "windows = " << m.windows << '\n'
      << "[config]\n"
      << m.config_snapshot << "[series]\n";
  for (const auto& t : m.tickers) out << t << '\n';
  out << "[diagnostics]\n";
  for (const auto& d : m.diagnostics) out << d.source << ':' << d.line << ": " << d.message << '\n';
  out << "[units]\n";
  for (const auto& u : m.units) {
    out << "delta=" << u.delta << " window=" << u.window << (u.ok ? " ok" : " failed");
    if (timing) out << " seconds=" << format_double(u.seconds);
    if (!u.ok) out << " message=" << u.message;
    out << '\n';
  }
  out << "[notes]\n";
  for (const auto& n : m.notes) out << n << '\n';
  return out.str();
}

struct ParsedManifest {
  std::string config_text;
  std::vector<std::string> tickers;
};

ParsedManifest parse_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read manifest " + path.string());
  ParsedManifest parsed;
  std::string section, line;
  while (std::getline(in, line)) {
    if (line.starts_with('[') && line.ends_with(']')) {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    if (section == "config") parsed.config_text += line + '\n';
    if (section == "series" && !line.empty()) parsed.tickers.push_back(line);
  }
  return parsed;
}

}  // namespace

void write_outputs(const RunResult& result, const RunConfig& config) {
  if (config.output.empty()) throw ConfigError("no output directory configured");
  const auto& out = config.output;
  fs::create_directories(out);
  for (const auto& d : result.deltas) {
    for (std::size_t w = 0; w < d.real.size(); ++w) {
      if (d.real[w]) write_te_matrix(te_path(out, d.delta, w), *d.real[w], result.tickers);
      for (std::size_t r = 0; r < d.surrogate[w].size(); ++r)
        write_te_matrix(surrogate_path(out, d.delta, w, r), d.surrogate[w][r], result.tickers);
    }
  }
  write_rollups(result, config);
  write_text_file(out / "manifest.txt", render_manifest(result.manifest, config.record_timing));
}

RunResult regenerate_reports(const fs::path& out_dir) {
  const auto parsed = parse_manifest(out_dir / "manifest.txt");
  RunConfig config = parse_config(parsed.config_text);
  config.output = out_dir;
  config.validate();

  RunResult result;
  result.tickers = parsed.tickers;

  std::ifstream windows_in(out_dir / "windows.csv");
  if (!windows_in) throw InputError("cannot read " + (out_dir / "windows.csv").string());
  std::string line;
  std::getline(windows_in, line);
  while (std::getline(windows_in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string index, offset, first, center, last;
    std::getline(fields, index, ',');
    std::getline(fields, offset, ',');
    std::getline(fields, first, ',');
    std::getline(fields, center, ',');
    std::getline(fields, last, ',');
    const auto d_first = parse_date(first), d_center = parse_date(center), d_last = parse_date(last);
    if (!d_first || !d_center || !d_last) throw InputError("malformed windows.csv row: " + line);
    result.windows.push_back({config.window_length, config.window_shift,
                              static_cast<std::size_t>(std::stoul(index)),
                              static_cast<std::size_t>(std::stoul(offset)), *d_first, *d_last,
                              *d_center});
  }

  const std::size_t n_windows = result.windows.size();
  auto& units = result.manifest.units;
  for (const auto delta : config.deltas) {
    DeltaResult d;
    d.delta = delta;
    d.real.assign(n_windows, std::nullopt);
    d.surrogate.assign(n_windows, {});
    for (std::size_t w = 0; w < n_windows; ++w) {
      UnitOutcome outcome{w, delta, true, {}, 0.0};
      const auto path = te_path(out_dir, delta, w);
      if (!fs::exists(path)) {
        outcome.ok = false;
        outcome.message = "no cached matrix";
      } else {
        d.real[w] = read_te_matrix(path, w, delta, config.k);
        for (std::size_t r = 0; r < config.n_realizations; ++r) {
          const auto sp = surrogate_path(out_dir, delta, w, r);
          if (fs::exists(sp)) d.surrogate[w].push_back(read_te_matrix(sp, w, delta, config.k));
        }
      }
      units.push_back(std::move(outcome));
    }
    finish_delta(d, result.windows, config, units);
    result.deltas.push_back(std::move(d));
  }
  write_rollups(result, config);
  return result;
}

}  // namespace teflow
