#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "teflow/entropy.hpp"
#include "teflow/validation.hpp"

namespace teflow {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);  // "null" when empty

/// Matrix CSV: header `,T1,...,TN`, then one row per ticker `Ti,v1,...,vN`.
/// Invalid entries are left empty. Values round-trip exactly.
void write_te_matrix(const std::filesystem::path& path, const TEMatrix& matrix,
                     std::span<const std::string> tickers);
void write_flow_matrix(const std::filesystem::path& path, const FlowMatrix& matrix,
                       std::span<const std::string> tickers);

struct MatrixCsv {
  std::vector<std::string> tickers;
  std::vector<std::optional<double>> cells;  // row-major, nullopt = invalid
};

/// Throws InputError on a missing file or malformed content.
MatrixCsv read_matrix_csv(const std::filesystem::path& path);
TEMatrix read_te_matrix(const std::filesystem::path& path, std::size_t window, std::size_t delta,
                        std::size_t k, std::vector<std::string>* tickers = nullptr);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace teflow
