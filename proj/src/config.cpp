#include "wearauth/config.hpp"

#include <cstdlib>
#include <fstream>

#include "wearauth/csv.hpp"
#include "wearauth/errors.hpp"

namespace wearauth {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key \"" + key + "\": not an integer: " + value);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key \"" + key + "\": not an unsigned integer: " + value);
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    return parse_double(value, "config key \"" + key + "\"");
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

void set_config_value(Config& config, const std::string& key,
                      const std::string& value) {
  if (key == "data_dir")
    config.data_dir = value;
  else if (key == "out_dir")
    config.out_dir = value;
  else if (key == "noise_dir")
    config.noise_dir = value;
  else if (key == "sample_rate")
    config.sample_rate = parse_int(key, value);
  else if (key == "window_len")
    config.window_len = parse_int(key, value);
  else if (key == "window_step")
    config.window_step = parse_int(key, value);
  else if (key == "k_best")
    config.k_best = parse_int(key, value);
  else if (key == "nu")
    config.nu = parse_real(key, value);
  else if (key == "theta")
    config.theta = parse_real(key, value);
  else if (key == "tau_move")
    config.tau_move = parse_real(key, value);
  else if (key == "seed")
    config.seed = parse_u64(key, value);
  else if (key == "subjects")
    config.subjects = parse_int(key, value);
  else if (key == "separation")
    config.separation = parse_real(key, value);
  else if (key == "grid_folds")
    config.grid_folds = parse_int(key, value);
  else
    throw UsageError("unknown config key \"" + key + "\"");
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + path);
  Config config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + " line " + std::to_string(line_no) +
                       ": expected key=value");
    set_config_value(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  return config;
}

Config load_config_from_env() {
  const char* path = std::getenv("WEARAUTH_CONFIG");
  if (path != nullptr && *path != '\0') return load_config_file(path);
  return Config{};
}

}  // namespace wearauth
