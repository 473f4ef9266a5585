#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emonet/conceptnet.hpp"
#include "emonet/matcher.hpp"
#include "emonet/windows.hpp"

namespace emonet {

// Environment variable naming the default output root when a config has no
// "output" entry.
inline constexpr const char* kOutputRootEnv = "EMONET_OUTPUT_ROOT";

struct DatasetConfig {
  std::string name;
  std::filesystem::path input;
  WindowSpec windows = WindowSpec::daily({Timestamp{}, Timestamp{} + std::chrono::days{1}});
  std::vector<std::string> include;
  std::vector<std::string> exclude;
};

struct RunConfig {
  std::filesystem::path lexicon;
  MatchMode matcher = MatchMode::kSubstring;
  SignificanceConfig significance;
  std::size_t replicates = 100;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool strict = false;
  std::filesystem::path output;
  std::vector<DatasetConfig> datasets;

  const DatasetConfig& dataset(std::string_view name) const;  // throws ConfigError
};

// Parses a JSON run configuration. Relative paths resolve against base_dir.
// Every validation failure is a ConfigError naming the offending field, e.g.
// "datasets[0].windows.split: ...".
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace emonet
