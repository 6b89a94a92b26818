#include "teflow/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "teflow/error.hpp"
#include "teflow/matrix_io.hpp"

namespace teflow {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean '" + std::string(value) + "' for " + std::string(key));
}

}  // namespace

std::string_view to_string(AnalysisDomain domain) {
  return domain == AnalysisDomain::Returns ? "returns" : "prices";
}

AnalysisDomain parse_analysis_domain(std::string_view text) {
  if (text == "returns") return AnalysisDomain::Returns;
  if (text == "prices") return AnalysisDomain::Prices;
  throw ConfigError("domain must be 'returns' or 'prices', got '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  if (window_length == 0) throw ConfigError("window.length must be positive");
  if (window_shift == 0 || window_shift > window_length)
    throw ConfigError("window.shift must be in [1, window.length]");
  if (k == 0 || k + 1 > kMaxPatternLength)
    throw ConfigError("k must be in [1, " + std::to_string(kMaxPatternLength - 1) + "]");
  if (deltas.empty()) throw ConfigError("delta list is empty");
  if (std::find(deltas.begin(), deltas.end(), std::size_t{0}) != deltas.end())
    throw ConfigError("delta values must be positive");
  if (!(coverage >= 0.0 && coverage <= 1.0)) throw ConfigError("coverage must be in [0, 1]");
  if (!(validation.a > 0.0)) throw ConfigError("validation.a must be positive");
  if (!(validation.r_star >= 0.0)) throw ConfigError("validation.r_star must be nonnegative");
  if (n_realizations == 0) throw ConfigError("surrogate.n_realizations must be positive");
  if (smoothing_group == 0) throw ConfigError("smoothing.group must be positive");
}

std::vector<std::size_t> parse_delta_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = trim(text.substr(start, comma - start));
    if (item.empty()) throw ConfigError("empty entry in delta list");
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(parse_number<std::size_t>("delta", item));
    } else {
      const auto lo = parse_number<std::size_t>("delta", trim(item.substr(0, dash)));
      const auto hi = parse_number<std::size_t>("delta", trim(item.substr(dash + 1)));
      if (lo > hi) throw ConfigError("descending delta range '" + std::string(item) + "'");
      for (auto d = lo; d <= hi; ++d) out.push_back(d);
    }
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "input") {
    c.input = std::string(value);
  } else if (key == "out" || key == "output") {
    c.output = std::string(value);
  } else if (key == "window.length") {
    c.window_length = parse_number<std::size_t>(key, value);
  } else if (key == "window.shift") {
    c.window_shift = parse_number<std::size_t>(key, value);
  } else if (key == "k") {
    c.k = parse_number<std::size_t>(key, value);
  } else if (key == "delta") {
    c.deltas = parse_delta_list(value);
  } else if (key == "coverage") {
    c.coverage = parse_number<double>(key, value);
  } else if (key == "validation.a") {
    c.validation.a = parse_number<double>(key, value);
  } else if (key == "validation.r_star") {
    c.validation.r_star = parse_number<double>(key, value);
  } else if (key == "validation.bracket") {
    c.validation.bracket = parse_number<std::size_t>(key, value);
  } else if (key == "validation.link_threshold") {
    c.validation.link_threshold = parse_number<double>(key, value);
  } else if (key == "surrogate.n_realizations") {
    c.n_realizations = parse_number<std::size_t>(key, value);
  } else if (key == "surrogate.domain") {
    c.surrogate_domain = parse_surrogate_domain(value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "domain") {
    c.domain = parse_analysis_domain(value);
  } else if (key == "smoothing.group") {
    c.smoothing_group = parse_number<std::size_t>(key, value);
  } else if (key == "threads") {
    c.threads = parse_number<std::size_t>(key, value);
  } else if (key == "manifest.timing") {
    c.record_timing = parse_bool(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

std::string config_snapshot(const RunConfig& c) {
  std::string deltas;
  for (std::size_t i = 0; i < c.deltas.size(); ++i) {
    if (i) deltas += ',';
    deltas += std::to_string(c.deltas[i]);
  }
  std::ostringstream out;
  out << "input = " << c.input.string() << '\n'
      << "window.length = " << c.window_length << '\n'
      << "window.shift = " << c.window_shift << '\n'
      << "k = " << c.k << '\n'
      << "delta = " << deltas << '\n'
      << "coverage = " << format_double(c.coverage) << '\n'
      << "validation.a = " << format_double(c.validation.a) << '\n'
      << "validation.r_star = " << format_double(c.validation.r_star) << '\n'
      << "validation.bracket = " << c.validation.bracket << '\n'
      << "validation.link_threshold = " << format_double(c.validation.link_threshold) << '\n'
      << "surrogate.n_realizations = " << c.n_realizations << '\n'
      << "surrogate.domain = " << to_string(c.surrogate_domain) << '\n'
      << "seed = " << c.seed << '\n'
      << "domain = " << to_string(c.domain) << '\n'
      << "smoothing.group = " << c.smoothing_group << '\n';
  return out.str();
}

}  // namespace teflow
