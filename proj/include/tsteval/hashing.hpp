#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace tsteval {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Lowercase hex SHA-256 of a file's contents. Throws DataError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

/// 64-bit FNV-1a; used for cheap deterministic splits, never for integrity.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace tsteval
