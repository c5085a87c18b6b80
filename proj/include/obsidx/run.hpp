#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace obsidx {

enum class Experiment { HeatGramian, WaveRatio, BurgersIndex };

const char* to_string(Experiment e) noexcept;
std::optional<Experiment> parse_experiment(const std::string& name);

/// Fully resolved run configuration: every key of the experiment has a value,
/// starting from defaults that reproduce the reference parameters. Rejected
/// assignments are kept in errors() so a run can still report them.
class RunConfig {
 public:
  explicit RunConfig(Experiment experiment);

  Experiment experiment() const noexcept { return experiment_; }

  /// Validates and stores one override. Returns false (and records the
  /// error) for unknown keys or malformed values.
  bool set(const std::string& key, const std::string& value);

  /// Flat `key = value` lines; blank lines and `#` comments ignored.
  bool load_file(const std::string& path);
  bool load_text(const std::string& text, const std::string& origin = "<text>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  Experiment experiment_;
  std::map<std::string, std::string> values_;
  std::vector<std::string> errors_;
};

/// Rebuilds a configuration from a run manifest's `experiment` and `config`.
RunConfig config_from_manifest(const std::string& manifest_json);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 1;
inline constexpr int kExitNumericalFailure = 2;

struct RunOutput {
  int exit_code = kExitOk;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string csv;
  std::string manifest;
  std::string summary;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// Runs the configured experiment. Never throws; failures land in exit_code,
/// errors, and the manifest.
RunOutput run(const RunConfig& config);

/// Writes csv and manifest to the configured out_csv / out_manifest (empty
/// path = skip). Returns false and appends to errors on I/O failure.
bool write_outputs(const RunConfig& config, RunOutput& output);

std::string format_number(double v);

const char* version() noexcept;

}  // namespace obsidx
