/* C interface to the obsidx observability-index library. */
#ifndef OBSIDX_OBSIDX_H
#define OBSIDX_OBSIDX_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(OBSIDX_BUILDING)
#define OBSIDX_API __declspec(dllexport)
#else
#define OBSIDX_API __declspec(dllimport)
#endif
#else
#define OBSIDX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum obsidx_status {
  OBSIDX_OK = 0,
  OBSIDX_INVALID_INPUT = 1,
  OBSIDX_DEGENERATE_METRIC = 2,
  OBSIDX_LINEAR_DEPENDENCE = 3,
  OBSIDX_BLOW_UP = 4,
  OBSIDX_SEARCH_FAILURE = 5,
  OBSIDX_SWEEP_FAILURE = 6,
  OBSIDX_ASSEMBLY_ERROR = 7,
  OBSIDX_IO_ERROR = 8,
  OBSIDX_INTERNAL_ERROR = 99
} obsidx_status;

typedef struct obsidx_config obsidx_config;
typedef struct obsidx_run_result obsidx_run_result;

OBSIDX_API const char* obsidx_version(void);

/* Message of the most recent failure on the calling thread ("" if none). */
OBSIDX_API const char* obsidx_last_error(void);

/* experiment: "heat-gramian", "wave-ratio" or "burgers-index". */
OBSIDX_API obsidx_status obsidx_config_create(const char* experiment, obsidx_config** out);
OBSIDX_API void obsidx_config_destroy(obsidx_config* config);
OBSIDX_API obsidx_status obsidx_config_set(obsidx_config* config, const char* key, const char* value);
OBSIDX_API obsidx_status obsidx_config_load_file(obsidx_config* config, const char* path);
/* Creates a config that reproduces the run described by a manifest file. */
OBSIDX_API obsidx_status obsidx_config_from_manifest(const char* path, obsidx_config** out);
/* Value stays valid until the key is set again or the config is destroyed. */
OBSIDX_API const char* obsidx_config_get(const obsidx_config* config, const char* key);

/* Always produces a result when config is valid; inspect its exit code. */
OBSIDX_API obsidx_status obsidx_run(const obsidx_config* config, obsidx_run_result** out);
OBSIDX_API void obsidx_result_destroy(obsidx_run_result* result);
OBSIDX_API int obsidx_result_exit_code(const obsidx_run_result* result);
OBSIDX_API size_t obsidx_result_column_count(const obsidx_run_result* result);
OBSIDX_API const char* obsidx_result_column_name(const obsidx_run_result* result, size_t column);
OBSIDX_API size_t obsidx_result_row_count(const obsidx_run_result* result);
/* NaN when out of range. */
OBSIDX_API double obsidx_result_value(const obsidx_run_result* result, size_t row, size_t column);
OBSIDX_API const char* obsidx_result_csv(const obsidx_run_result* result);
OBSIDX_API const char* obsidx_result_manifest(const obsidx_run_result* result);
OBSIDX_API const char* obsidx_result_summary(const obsidx_run_result* result);
/* Writes csv and manifest to the config's out_csv / out_manifest. */
OBSIDX_API obsidx_status obsidx_result_write(const obsidx_config* config, obsidx_run_result* result);

/*
 * Index from a precomputed gramian pair. g and s are dim x dim row-major.
 * out receives sigma_min, epsilon and index in that order.
 */
OBSIDX_API obsidx_status obsidx_unobservability_index(const double* g, const double* s, size_t dim,
                                                      double rho, double out[3]);

#ifdef __cplusplus
}
#endif

#endif
