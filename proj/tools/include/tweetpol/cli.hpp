#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tweetpol/evaluation.hpp"

namespace tweetpol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitInvalid = 2;

/// Overrides the output directory of `run` (and the chart directory of `report`).
inline constexpr const char* kOutputDirEnv = "TWEETPOL_OUTPUT_DIR";

/// A run config that does not match the published schema. `where` is a JSON
/// pointer to the offending value.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& msg)
      : std::runtime_error(where + ": " + msg), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct RunConfig {
  std::filesystem::path corpus_path;
  std::optional<std::filesystem::path> lexicon_path;
  std::string strip_set;
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> output_dir;
  std::size_t parallelism = 0;  // 0 = hardware concurrency
  std::vector<PipelineConfig> experiments;
};

/// Structural check matching docs/run-config.schema.json. Throws ConfigError.
void check_run_config_schema(const nlohmann::json& doc);

/// Schema check, then conversion. Relative paths resolve against base_dir.
/// Experiments without a seed inherit the top-level one. Range problems
/// (such as ngram n = 7) are not errors here; they fail their own slot.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

struct NormalizeOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  std::string strip_set;
};
int cmd_normalize(const NormalizeOptions& opts, std::ostream& err);

struct RunOptions {
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> output_dir;  // highest precedence
  bool quiet = false;
};
/// Writes results.json, results.csv and timings.json.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct ReportOptions {
  std::filesystem::path results_path;
  std::string format = "markdown";
  bool chart = false;
  std::optional<std::filesystem::path> output;  // table file; stdout when absent
};
/// The chart goes to chart.svg next to the results file unless the output
/// directory is overridden through the environment.
int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err);

struct SynthOptions {
  std::filesystem::path output;
  std::size_t per_class = 500;
  double noise = 0.2;
  std::uint64_t seed = 7;
  bool shuffle_labels = false;
};
int cmd_synth(const SynthOptions& opts, std::ostream& err);

/// Full command-line entry point.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tweetpol::cli
