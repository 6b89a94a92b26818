#include "teflow/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "teflow/error.hpp"

namespace teflow {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::optional<double> parse_close(std::string_view s) {
  double value = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct RawRow {
  std::string ticker;
  Date date;
  double close;
  std::string source;
  std::size_t line;
};

// Returns the close or records why the row was rejected.
std::optional<std::pair<Date, double>> parse_row(std::string_view date_field,
                                                 std::string_view close_field,
                                                 const std::string& source, std::size_t line,
                                                 std::vector<Diagnostic>& diagnostics) {
  const auto date = parse_date(date_field);
  if (!date) {
    diagnostics.push_back({source, line, "invalid date '" + std::string(date_field) + "'"});
    return std::nullopt;
  }
  const auto close = parse_close(close_field);
  if (!close || !std::isfinite(*close)) {
    diagnostics.push_back({source, line, "non-numeric close '" + std::string(close_field) + "'"});
    return std::nullopt;
  }
  if (*close <= 0.0) {
    diagnostics.push_back({source, line, "non-positive close '" + std::string(close_field) + "'"});
    return std::nullopt;
  }
  return std::make_pair(*date, *close);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read price file " + path.string());
  return in;
}

bool header_matches(std::string_view line, std::span<const std::string_view> expected) {
  const auto fields = split_fields(line);
  if (fields.size() != expected.size()) return false;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::string lowered(fields[i]);
    // Tolerate a UTF-8 byte order mark on the first column.
    if (i == 0 && lowered.starts_with("\xEF\xBB\xBF")) lowered.erase(0, 3);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered != expected[i]) return false;
  }
  return true;
}

void read_long_format(const std::filesystem::path& path, std::vector<RawRow>& rows,
                      std::vector<Diagnostic>& diagnostics) {
  auto in = open_or_throw(path);
  const std::string source = path.string();
  std::string line;
  std::size_t line_no = 0;
  constexpr std::string_view kHeader[] = {"date", "ticker", "close"};
  if (!std::getline(in, line)) return;
  ++line_no;
  if (!header_matches(line, kHeader))
    throw InputError(source + ": expected header 'date,ticker,close'");
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      diagnostics.push_back({source, line_no, "expected 3 fields"});
      continue;
    }
    if (fields[1].empty()) {
      diagnostics.push_back({source, line_no, "empty ticker"});
      continue;
    }
    if (auto parsed = parse_row(fields[0], fields[2], source, line_no, diagnostics))
      rows.push_back({std::string(fields[1]), parsed->first, parsed->second, source, line_no});
  }
}

void read_ticker_file(const std::filesystem::path& path, std::vector<RawRow>& rows,
                      std::vector<Diagnostic>& diagnostics) {
  auto in = open_or_throw(path);
  const std::string source = path.string();
  const std::string ticker = path.stem().string();
  std::string line;
  std::size_t line_no = 0;
  constexpr std::string_view kHeader[] = {"date", "close"};
  if (!std::getline(in, line)) return;
  ++line_no;
  if (!header_matches(line, kHeader)) throw InputError(source + ": expected header 'date,close'");
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      diagnostics.push_back({source, line_no, "expected 2 fields"});
      continue;
    }
    if (auto parsed = parse_row(fields[0], fields[1], source, line_no, diagnostics))
      rows.push_back({ticker, parsed->first, parsed->second, source, line_no});
  }
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  text = trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d))
    return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

PriceSeries::PriceSeries(std::string ticker, std::vector<Observation> observations)
    : ticker_(std::move(ticker)) {
  dates_.reserve(observations.size());
  closes_.reserve(observations.size());
  for (const auto& obs : observations) {
    if (!dates_.empty() && obs.date <= dates_.back())
      throw InputError(ticker_ + ": dates must be strictly increasing (" +
                       format_date(obs.date) + ")");
    if (!(obs.close > 0.0) || !std::isfinite(obs.close))
      throw InputError(ticker_ + ": close must be positive on " + format_date(obs.date));
    dates_.push_back(obs.date);
    closes_.push_back(obs.close);
  }
}

SeriesView PriceSeries::slice(Date first, Date last) const {
  const auto lo = std::lower_bound(dates_.begin(), dates_.end(), first);
  const auto hi = std::upper_bound(lo, dates_.end(), last);
  const auto begin = static_cast<std::size_t>(lo - dates_.begin());
  const auto count = static_cast<std::size_t>(hi - lo);
  return {ticker_, std::span<const Date>(dates_).subspan(begin, count),
          std::span<const double>(closes_).subspan(begin, count)};
}

LoadResult load_price_csv(const std::filesystem::path& path) {
  std::error_code ec;
  std::vector<RawRow> rows;
  LoadResult result;

  if (std::filesystem::is_directory(path, ec)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv")
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) read_ticker_file(file, rows, result.diagnostics);
  } else {
    read_long_format(path, rows, result.diagnostics);
  }

  std::map<std::string, std::vector<const RawRow*>> by_ticker;
  for (const auto& row : rows) by_ticker[row.ticker].push_back(&row);

  for (auto& [ticker, ticker_rows] : by_ticker) {
    std::stable_sort(ticker_rows.begin(), ticker_rows.end(),
                     [](const RawRow* a, const RawRow* b) { return a->date < b->date; });
    std::vector<Observation> observations;
    observations.reserve(ticker_rows.size());
    for (std::size_t i = 0; i < ticker_rows.size(); ++i) {
      if (i > 0 && ticker_rows[i]->date == ticker_rows[i - 1]->date) {
        throw InputError(ticker_rows[i]->source + ":" + std::to_string(ticker_rows[i]->line) +
                         ": duplicate observation for " + ticker + " on " +
                         format_date(ticker_rows[i]->date));
      }
      observations.push_back({ticker_rows[i]->date, ticker_rows[i]->close});
    }
    result.series.emplace_back(ticker, std::move(observations));
  }
  return result;
}

std::vector<Date> union_calendar(std::span<const PriceSeries> series) {
  std::vector<Date> all;
  for (const auto& s : series) all.insert(all.end(), s.dates().begin(), s.dates().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<WindowSpec> enumerate_windows(std::span<const Date> calendar, std::size_t length,
                                          std::size_t shift) {
  if (length == 0) throw std::invalid_argument("window length must be positive");
  if (shift == 0 || shift > length)
    throw std::invalid_argument("window shift must be in [1, window length]");
  std::vector<WindowSpec> windows;
  if (calendar.size() < length) return windows;
  for (std::size_t offset = 0, w = 0; offset + length <= calendar.size(); offset += shift, ++w) {
    windows.push_back({length, shift, w, offset, calendar[offset],
                       calendar[offset + length - 1], calendar[offset + length / 2]});
  }
  return windows;
}

std::optional<AlignedPair> align_pair(const SeriesView& a, const SeriesView& b,
                                      std::size_t window_length, double min_coverage) {
  if (window_length == 0) throw std::invalid_argument("window length must be positive");
  AlignedPair pair;
  pair.ticker_a = std::string(a.ticker);
  pair.ticker_b = std::string(b.ticker);
  const std::size_t reserve = std::min(a.size(), b.size());
  pair.dates.reserve(reserve);
  pair.closes_a.reserve(reserve);
  pair.closes_b.reserve(reserve);

  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a.dates[i] < b.dates[j]) {
      ++i;
    } else if (b.dates[j] < a.dates[i]) {
      ++j;
    } else {
      pair.dates.push_back(a.dates[i]);
      pair.closes_a.push_back(a.values[i]);
      pair.closes_b.push_back(b.values[j]);
      ++i;
      ++j;
    }
  }
  pair.coverage = static_cast<double>(pair.dates.size()) / static_cast<double>(window_length);
  if (pair.coverage < min_coverage) return std::nullopt;
  return pair;
}

}  // namespace teflow
