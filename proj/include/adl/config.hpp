#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adl/evaluation.hpp"

namespace adl {

struct DatasetSpec {
  enum class Kind { adl_log, power_trace };
  Kind kind = Kind::adl_log;
  std::filesystem::path path;
  std::string channel;  // power traces only
};

struct RunConfig {
  std::filesystem::path definitions;
  std::vector<DatasetSpec> datasets;
  std::map<std::string, std::string> channel_map;
  double on_watts = 10.0;
  std::size_t gap_tolerance = 2;
  double lambda = 0.5;
  std::size_t history_window = 5;
  double epsilon = 0.05;
  int bucket_width = 30;
  std::size_t k = 3;
  double alpha = 1.0;
  double train_fraction = 0.7;
  SplitKind split = SplitKind::chronological;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  std::optional<std::filesystem::path> ux_examples;
};

// Relative paths resolve against base_dir. An empty document yields defaults.
// Throws ParseError for malformed JSON and RangeError naming the offending key.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// Applies one scalar override (e.g. "on_watts", "25"). Throws RangeError.
void apply_override(RunConfig& config, std::string_view key, std::string_view value);

// Throws RangeError naming the first parameter outside its range.
void validate_config(const RunConfig& config);

// Scalar knobs accepted by apply_override.
const std::vector<std::string>& override_keys();

}  // namespace adl
