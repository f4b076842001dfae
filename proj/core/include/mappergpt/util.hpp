#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mappergpt {

/// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

/// Splits on a separator character; empty pieces are kept, nothing trimmed.
std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits into lines on '\n', dropping one '\r' at each line end (CRLF
/// tolerance). A trailing newline does not produce a final empty line.
std::vector<std::string_view> split_lines(std::string_view text);

/// ASCII-lowercased copy.
std::string to_lower(std::string_view s);

/// Case-insensitive ASCII equality.
bool iequals(std::string_view a, std::string_view b);

/// Reads a whole file into a string. Throws DataError when the file cannot
/// be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes content through a temp file in the same directory followed by an
/// atomic rename, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Hex-encoded SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Fixed-point with at most max_decimals places, trailing zeros and a bare
/// trailing dot trimmed ("0.9000" -> "0.9", "1.0000" -> "1").
std::string format_trimmed(double value, int max_decimals);

/// Plain fixed-point with exactly `decimals` places.
std::string format_fixed(double value, int decimals);

} // namespace mappergpt
