#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bmap {

// Locale-independent numeric formatting and parsing.
//
// Doubles are written with the shortest decimal form that round-trips to
// the same bits, so persisted files are reproducible across runs and hosts
// and re-reading a file restores values exactly.

std::string format_double(double value);
std::string format_int(std::int64_t value);
std::string format_uint(std::uint64_t value);

// Parse failures throw DataError naming `what` (e.g. a column or key).
double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_uint(std::string_view text, std::string_view what);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);
bool starts_with(std::string_view text, std::string_view prefix);

std::string read_file(const std::string& path);              // throws DataError
void write_file(const std::string& path, std::string_view contents);

} // namespace bmap
