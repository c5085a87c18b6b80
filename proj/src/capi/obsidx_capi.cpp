#include "obsidx/obsidx.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>

#include "obsidx/error.hpp"
#include "obsidx/observability.hpp"
#include "obsidx/run.hpp"

struct obsidx_config {
  obsidx::RunConfig config;
};

struct obsidx_run_result {
  obsidx::RunOutput output;
};

namespace {

thread_local std::string last_error;

obsidx_status fail(obsidx_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

obsidx_status status_of(obsidx::ErrorCode code) {
  using obsidx::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidInput: return OBSIDX_INVALID_INPUT;
    case ErrorCode::DegenerateMetric: return OBSIDX_DEGENERATE_METRIC;
    case ErrorCode::LinearDependence: return OBSIDX_LINEAR_DEPENDENCE;
    case ErrorCode::BlowUp: return OBSIDX_BLOW_UP;
    case ErrorCode::SearchFailure: return OBSIDX_SEARCH_FAILURE;
    case ErrorCode::SweepFailure: return OBSIDX_SWEEP_FAILURE;
    case ErrorCode::AssemblyError: return OBSIDX_ASSEMBLY_ERROR;
    case ErrorCode::Io: return OBSIDX_IO_ERROR;
  }
  return OBSIDX_INTERNAL_ERROR;
}

template <typename F>
obsidx_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const obsidx::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OBSIDX_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(OBSIDX_INTERNAL_ERROR, e.what());
  }
}

std::string joined_errors(const obsidx::RunConfig& c) {
  std::string out;
  for (const auto& e : c.errors()) out += (out.empty() ? "" : "; ") + e;
  return out;
}

}  // namespace

extern "C" {

const char* obsidx_version(void) { return obsidx::version(); }

const char* obsidx_last_error(void) { return last_error.c_str(); }

obsidx_status obsidx_config_create(const char* experiment, obsidx_config** out) {
  if (!experiment || !out) return fail(OBSIDX_INVALID_INPUT, "null argument");
  return guarded([&] {
    const auto exp = obsidx::parse_experiment(experiment);
    if (!exp) return fail(OBSIDX_INVALID_INPUT, std::string("unknown experiment '") + experiment + "'");
    *out = new obsidx_config{obsidx::RunConfig(*exp)};
    return OBSIDX_OK;
  });
}

void obsidx_config_destroy(obsidx_config* config) { delete config; }

obsidx_status obsidx_config_set(obsidx_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(OBSIDX_INVALID_INPUT, "null argument");
  return guarded([&] {
    if (!config->config.set(key, value)) return fail(OBSIDX_INVALID_INPUT, config->config.errors().back());
    return OBSIDX_OK;
  });
}

obsidx_status obsidx_config_load_file(obsidx_config* config, const char* path) {
  if (!config || !path) return fail(OBSIDX_INVALID_INPUT, "null argument");
  return guarded([&] {
    if (!config->config.load_file(path)) return fail(OBSIDX_INVALID_INPUT, joined_errors(config->config));
    return OBSIDX_OK;
  });
}

obsidx_status obsidx_config_from_manifest(const char* path, obsidx_config** out) {
  if (!path || !out) return fail(OBSIDX_INVALID_INPUT, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) return fail(OBSIDX_IO_ERROR, std::string("cannot read manifest '") + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    auto cfg = std::make_unique<obsidx_config>(obsidx_config{obsidx::config_from_manifest(buf.str())});
    if (!cfg->config.errors().empty()) return fail(OBSIDX_INVALID_INPUT, joined_errors(cfg->config));
    *out = cfg.release();
    return OBSIDX_OK;
  });
}

const char* obsidx_config_get(const obsidx_config* config, const char* key) {
  if (!config || !key || !config->config.has(key)) return nullptr;
  return config->config.get(key).c_str();
}

obsidx_status obsidx_run(const obsidx_config* config, obsidx_run_result** out) {
  if (!config || !out) return fail(OBSIDX_INVALID_INPUT, "null argument");
  return guarded([&] {
    *out = new obsidx_run_result{obsidx::run(config->config)};
    if (!(*out)->output.errors.empty()) last_error = (*out)->output.errors.front();
    return OBSIDX_OK;
  });
}

void obsidx_result_destroy(obsidx_run_result* result) { delete result; }

int obsidx_result_exit_code(const obsidx_run_result* result) {
  return result ? result->output.exit_code : obsidx::kExitInvalidConfig;
}

size_t obsidx_result_column_count(const obsidx_run_result* result) {
  return result ? result->output.columns.size() : 0;
}

const char* obsidx_result_column_name(const obsidx_run_result* result, size_t column) {
  if (!result || column >= result->output.columns.size()) return nullptr;
  return result->output.columns[column].c_str();
}

size_t obsidx_result_row_count(const obsidx_run_result* result) {
  return result ? result->output.rows.size() : 0;
}

double obsidx_result_value(const obsidx_run_result* result, size_t row, size_t column) {
  if (!result || row >= result->output.rows.size() || column >= result->output.rows[row].size())
    return std::numeric_limits<double>::quiet_NaN();
  return result->output.rows[row][column];
}

const char* obsidx_result_csv(const obsidx_run_result* result) {
  return result ? result->output.csv.c_str() : "";
}

const char* obsidx_result_manifest(const obsidx_run_result* result) {
  return result ? result->output.manifest.c_str() : "";
}

const char* obsidx_result_summary(const obsidx_run_result* result) {
  return result ? result->output.summary.c_str() : "";
}

obsidx_status obsidx_result_write(const obsidx_config* config, obsidx_run_result* result) {
  if (!config || !result) return fail(OBSIDX_INVALID_INPUT, "null argument");
  return guarded([&] {
    if (!obsidx::write_outputs(config->config, result->output))
      return fail(OBSIDX_IO_ERROR, result->output.errors.back());
    return OBSIDX_OK;
  });
}

obsidx_status obsidx_unobservability_index(const double* g, const double* s, size_t dim, double rho,
                                           double out[3]) {
  if (!g || !s || !out || dim == 0) return fail(OBSIDX_INVALID_INPUT, "null argument or zero dimension");
  return guarded([&] {
    obsidx::Matrix gm(dim, dim), sm(dim, dim);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) {
        gm(i, j) = g[i * dim + j];
        sm(i, j) = s[i * dim + j];
      }
    obsidx::GramianPair pair{obsidx::SymMatrix(gm), obsidx::SymMatrix(sm), rho, {}};
    const obsidx::IndexResult r = obsidx::unobservability_index(pair);
    out[0] = r.sigma_min;
    out[1] = r.epsilon;
    out[2] = r.index;
    return OBSIDX_OK;
  });
}

}  // extern "C"
