#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace citnet::csv {

// Minimal RFC-4180-ish CSV: comma separated, optional double-quote quoting,
// LF or CRLF line endings, first row is the header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_file(const std::filesystem::path& path);

std::string escape(const std::string& field);

// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace citnet::csv
