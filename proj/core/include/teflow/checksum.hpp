#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace teflow {

/// Lowercase hex SHA-256 digests.
std::string sha256_hex(std::string_view data);
/// Throws InputError when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);
/// Digest over every regular file below `root`: relative paths in sorted
/// order, each followed by its content digest. For a directory input this
/// is the tree digest; for a file it is the file digest.
std::string sha256_path(const std::filesystem::path& root);

}  // namespace teflow
