// Command-line front end for the obsidx shared library.
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "obsidx/obsidx.h"

namespace {

struct ConfigDeleter {
  void operator()(obsidx_config* c) const { obsidx_config_destroy(c); }
};
struct ResultDeleter {
  void operator()(obsidx_run_result* r) const { obsidx_result_destroy(r); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unobservability index experiments"};
  app.set_version_flag("--version", std::string(obsidx_version()));

  std::string experiment;
  std::string config_file;
  std::string manifest_file;
  std::vector<std::string> assignments;
  bool quiet = false;
  app.add_option("experiment", experiment, "heat-gramian | wave-ratio | burgers-index");
  app.add_option("--config", config_file, "key = value configuration file");
  app.add_option("--from-manifest", manifest_file, "rerun the configuration recorded in a manifest");
  app.add_option("--set", assignments, "override any key: --set key=value (repeatable)");
  app.add_flag("-q,--quiet", quiet, "suppress the summary");

  // Convenience flags mapped onto configuration keys.
  const std::vector<std::pair<std::string, std::string>> flag_keys = {
      {"--out-csv", "out_csv"},       {"--out-manifest", "out_manifest"},
      {"--seed", "seed"},             {"--threads", "threads"},
      {"--n-list,--n", "n_list"},         {"--n-max", "n_max"},
      {"--rho", "rho"},               {"--kf", "kf"},
      {"--kappa", "kappa"},           {"--sensor-x", "sensor_x"},
      {"--method", "method"},         {"--initial-mode", "initial_mode"},
      {"--horizon", "horizon"},       {"--length", "length"},
      {"--csv-timing", "csv_timing"},
  };
  std::map<std::string, std::string> flag_values;
  std::vector<std::pair<CLI::Option*, std::string>> flag_options;
  for (const auto& [flag, key] : flag_keys)
    flag_options.emplace_back(app.add_option(flag, flag_values[key], "sets " + key), key);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  obsidx_config* raw = nullptr;
  obsidx_status st = OBSIDX_OK;
  if (!manifest_file.empty()) {
    st = obsidx_config_from_manifest(manifest_file.c_str(), &raw);
  } else if (experiment.empty()) {
    std::fprintf(stderr, "error: an experiment or --from-manifest is required\n");
    return 1;
  } else {
    st = obsidx_config_create(experiment.c_str(), &raw);
  }
  if (st != OBSIDX_OK) {
    std::fprintf(stderr, "error: %s\n", obsidx_last_error());
    return 1;
  }
  std::unique_ptr<obsidx_config, ConfigDeleter> config(raw);

  if (!config_file.empty() && obsidx_config_load_file(config.get(), config_file.c_str()) != OBSIDX_OK) {
    std::fprintf(stderr, "error: %s\n", obsidx_last_error());
    return 1;
  }
  bool bad = false;
  auto apply = [&](const std::string& key, const std::string& value) {
    if (obsidx_config_set(config.get(), key.c_str(), value.c_str()) != OBSIDX_OK) {
      std::fprintf(stderr, "error: %s\n", obsidx_last_error());
      bad = true;
    }
  };
  for (const auto& [option, key] : flag_options)
    if (option->count() > 0) apply(key, flag_values[key]);
  for (const std::string& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", a.c_str());
      bad = true;
      continue;
    }
    apply(a.substr(0, eq), a.substr(eq + 1));
  }
  if (bad) return 1;

  obsidx_run_result* result_raw = nullptr;
  if (obsidx_run(config.get(), &result_raw) != OBSIDX_OK) {
    std::fprintf(stderr, "error: %s\n", obsidx_last_error());
    return 2;
  }
  std::unique_ptr<obsidx_run_result, ResultDeleter> result(result_raw);
  if (obsidx_result_write(config.get(), result.get()) != OBSIDX_OK)
    std::fprintf(stderr, "error: %s\n", obsidx_last_error());
  const int code = obsidx_result_exit_code(result.get());
  if (!quiet || code != 0) std::fputs(obsidx_result_summary(result.get()), code == 0 ? stdout : stderr);
  return code;
}
