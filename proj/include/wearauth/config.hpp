#pragma once

#include <cstdint>
#include <string>

namespace wearauth {

// Defaults are the pipeline's standing bindings; a config file and CLI
// flags override them in that order.
struct Config {
  std::string data_dir;
  std::string out_dir = "out";
  std::string noise_dir;  // optional user-supplied noise bank directory
  int sample_rate = 22050;
  int window_len = 10;
  int window_step = 5;
  int k_best = 20;
  double nu = 0.5;
  double theta = 0.52;
  double tau_move = 0.5;
  std::uint64_t seed = 1;
  int subjects = 10;
  double separation = 3.0;
  int grid_folds = 3;
};

// Assign one key=value pair; unknown keys and malformed values raise
// UsageError naming the key.
void set_config_value(Config& config, const std::string& key,
                      const std::string& value);

// Flat key=value file; blank lines and lines starting with '#' skipped.
Config load_config_file(const std::string& path);

// Defaults, overlaid with the file named by WEARAUTH_CONFIG when set.
Config load_config_from_env();

}  // namespace wearauth
