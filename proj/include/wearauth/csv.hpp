#pragma once

#include <string>
#include <vector>

namespace wearauth {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a comma-separated file with a mandatory header line.
// No quoting support: none of the formats here embed commas.
CsvTable read_csv(const std::string& path);

// Shortest representation that round-trips the exact double value.
std::string format_double(double v);

double parse_double(const std::string& field, const std::string& context);

}  // namespace wearauth
