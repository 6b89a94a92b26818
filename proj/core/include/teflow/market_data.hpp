#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace teflow {

using Date = std::chrono::sys_days;

/// Parses an ISO-8601 calendar day (`YYYY-MM-DD`). Returns nullopt on any
/// malformed or impossible date.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

struct Observation {
  Date date;
  double close;
};

/// Non-owning view of a dated real sequence. Used for price slices and for
/// surrogate series, which share the dates of their source slice.
struct SeriesView {
  std::string_view ticker;
  std::span<const Date> dates;
  std::span<const double> values;

  std::size_t size() const { return dates.size(); }
  bool empty() const { return dates.empty(); }
};

/// A ticker's closing prices. Dates strictly increase and every close is
/// positive; construction throws InputError otherwise.
class PriceSeries {
 public:
  PriceSeries(std::string ticker, std::vector<Observation> observations);

  const std::string& ticker() const { return ticker_; }
  std::span<const Date> dates() const { return dates_; }
  std::span<const double> closes() const { return closes_; }
  std::size_t size() const { return dates_.size(); }

  SeriesView view() const { return {ticker_, dates_, closes_}; }
  /// Observations with first <= date <= last.
  SeriesView slice(Date first, Date last) const;

 private:
  std::string ticker_;
  std::vector<Date> dates_;
  std::vector<double> closes_;
};

struct Diagnostic {
  std::string source;
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<PriceSeries> series;  // ascending ticker order
  std::vector<Diagnostic> diagnostics;
};

/// Loads `date,ticker,close` rows from a CSV file, or one `<TICKER>.csv`
/// file (header `date,close`) per ticker when `path` is a directory.
/// Malformed rows are skipped with a diagnostic. An unreadable file or a
/// duplicate (ticker, date) throws InputError.
LoadResult load_price_csv(const std::filesystem::path& path);

struct WindowSpec {
  std::size_t length = 0;  // trading days in the window
  std::size_t shift = 0;
  std::size_t index = 0;
  std::size_t offset = 0;  // position of the first day in the global calendar
  Date first{};
  Date last{};
  Date center{};  // day at position length / 2 within the window
};

/// Sorted union of every series' trading days.
std::vector<Date> union_calendar(std::span<const PriceSeries> series);

/// Windows of `length` days starting at offsets 0, shift, 2*shift, ... while a
/// full window fits. Empty when the calendar is shorter than one window.
/// Throws std::invalid_argument when shift is zero or exceeds length.
std::vector<WindowSpec> enumerate_windows(std::span<const Date> calendar,
                                          std::size_t length, std::size_t shift);

struct AlignedPair {
  std::string ticker_a;
  std::string ticker_b;
  std::vector<Date> dates;
  std::vector<double> closes_a;
  std::vector<double> closes_b;
  double coverage = 0.0;  // |dates| / window length
};

inline constexpr double kDefaultCoverage = 0.8;

/// Common trading days of two window slices. Returns nullopt when the common
/// days cover less than `min_coverage` of the window length.
std::optional<AlignedPair> align_pair(const SeriesView& a, const SeriesView& b,
                                      std::size_t window_length,
                                      double min_coverage = kDefaultCoverage);

}  // namespace teflow
