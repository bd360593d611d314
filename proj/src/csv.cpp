#include "wearauth/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "wearauth/errors.hpp"

namespace wearauth {

static std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split_fields(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    table.rows.push_back(split_fields(line));
  }
  return table;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, const std::string& context) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw DataError("non-numeric field '" + field + "' (" + context + ")");
  }
  return value;
}

}  // namespace wearauth
