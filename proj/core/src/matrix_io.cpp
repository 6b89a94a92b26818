#include "teflow/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "teflow/error.hpp"

namespace teflow {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string("null");
}

namespace {

template <typename Matrix, typename Get>
std::string render(const Matrix& m, std::span<const std::string> tickers, Get get) {
  if (tickers.size() != m.size()) throw std::invalid_argument("ticker count does not match matrix");
  std::string out;
  for (const auto& t : tickers) {
    out += ',';
    out += t;
  }
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += tickers[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      out += ',';
      if (m.valid(i, j)) out += format_double(get(m, i, j));
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_te_matrix(const std::filesystem::path& path, const TEMatrix& matrix,
                     std::span<const std::string> tickers) {
  write_text_file(path, render(matrix, tickers, [](const TEMatrix& m, std::size_t i,
                                                   std::size_t j) { return m.value(i, j); }));
}

void write_flow_matrix(const std::filesystem::path& path, const FlowMatrix& matrix,
                       std::span<const std::string> tickers) {
  write_text_file(path, render(matrix, tickers, [](const FlowMatrix& m, std::size_t i,
                                                   std::size_t j) { return m.weight(i, j); }));
}

MatrixCsv read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read matrix " + path.string());
  MatrixCsv csv;
  std::string line;
  if (!std::getline(in, line)) throw InputError(path.string() + ": empty matrix file");
  auto header = split(line);
  if (header.empty() || !header[0].empty()) throw InputError(path.string() + ": bad header");
  csv.tickers.assign(header.begin() + 1, header.end());
  const std::size_t n = csv.tickers.size();
  csv.cells.reserve(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    if (!std::getline(in, line)) throw InputError(path.string() + ": missing rows");
    const auto fields = split(line);
    if (fields.size() != n + 1 || fields[0] != csv.tickers[row])
      throw InputError(path.string() + ": malformed row " + std::to_string(row + 1));
    for (std::size_t col = 1; col <= n; ++col) {
      const auto& f = fields[col];
      if (f.empty()) {
        csv.cells.emplace_back();
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size())
        throw InputError(path.string() + ": bad value '" + f + "'");
      csv.cells.emplace_back(v);
    }
  }
  return csv;
}

TEMatrix read_te_matrix(const std::filesystem::path& path, std::size_t window, std::size_t delta,
                        std::size_t k, std::vector<std::string>* tickers) {
  auto csv = read_matrix_csv(path);
  const std::size_t n = csv.tickers.size();
  TEMatrix m(n, window, delta, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (const auto& v = csv.cells[i * n + j]) m.set(i, j, *v);
  if (tickers) *tickers = std::move(csv.tickers);
  return m;
}

}  // namespace teflow
