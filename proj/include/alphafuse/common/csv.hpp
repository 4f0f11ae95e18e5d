#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace alphafuse::csv {

// Minimal RFC-4180-ish reader: comma separated, optional double quotes.
std::vector<std::string> split_line(std::string_view line);

// Reads every line of a text file; strips trailing '\r'. Throws IoError.
std::vector<std::string> read_lines(const std::string& path);

double parse_double(std::string_view field, std::size_t line);

// Shortest text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace alphafuse::csv
