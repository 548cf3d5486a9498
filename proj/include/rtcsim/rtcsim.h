/* C interface of the refresh-policy simulator. All functions return an
 * rtcsim_status; on failure rtcsim_last_error() describes the cause (the
 * message is thread-local and valid until the next call on that thread). */
#ifndef RTCSIM_RTCSIM_H
#define RTCSIM_RTCSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(RTCSIM_BUILDING)
#define RTCSIM_API __attribute__((visibility("default")))
#else
#define RTCSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rtcsim_status {
  RTCSIM_OK = 0,
  RTCSIM_E_ILLEGAL_COMMAND = 1,
  RTCSIM_E_OUT_OF_RANGE = 2,
  RTCSIM_E_AMBIGUOUS_CONFIG_REQUEST = 3,
  RTCSIM_E_ZERO_REFRESH_ROWS = 4,
  RTCSIM_E_POSITION_OUT_OF_PROGRAM = 5,
  RTCSIM_E_FOOTPRINT_EXCEEDS_CAPACITY = 6,
  RTCSIM_E_NOT_AFFINE_REPRESENTABLE = 7,
  RTCSIM_E_UNKNOWN_KIND = 8,
  RTCSIM_E_CONFIG_INVALID = 9,
  RTCSIM_E_WORKLOAD_INFEASIBLE = 10,
  RTCSIM_E_AXIS_MISMATCH = 11,
  RTCSIM_E_TRACE_MISMATCH = 12,
  RTCSIM_E_IO = 13,
  RTCSIM_E_INVALID_ARGUMENT = 50,
  RTCSIM_E_INTERNAL = 100
} rtcsim_status;

typedef struct rtcsim_experiment rtcsim_experiment;
typedef struct rtcsim_results rtcsim_results;

typedef struct rtcsim_point_summary {
  uint64_t id;
  char workload[64];
  char policy[32];
  char mode[32];
  double capacity_gib;
  double fps;
  double locality;
  /* RTCSIM_OK when the point ran. */
  int status;
  double total_pj;
  double refresh_pj;
  double access_pj;
  double background_pj;
  double counters_pj;
  uint64_t explicit_refresh_rows;
  uint64_t implicit_slots;
  uint64_t explicit_slots;
  uint64_t violations;
} rtcsim_point_summary;

typedef void (*rtcsim_progress_fn)(size_t done, size_t total, void* user);

RTCSIM_API const char* rtcsim_version(void);
RTCSIM_API const char* rtcsim_last_error(void);
RTCSIM_API const char* rtcsim_status_name(int status);

RTCSIM_API int rtcsim_experiment_load(const char* config_path, rtcsim_experiment** out);
RTCSIM_API void rtcsim_experiment_free(rtcsim_experiment* exp);
RTCSIM_API int rtcsim_experiment_set_seed(rtcsim_experiment* exp, uint64_t seed);
RTCSIM_API int rtcsim_experiment_set_output_dir(rtcsim_experiment* exp, const char* dir);
/* Checks that every sweep point can be built. */
RTCSIM_API int rtcsim_experiment_validate(const rtcsim_experiment* exp);
RTCSIM_API int rtcsim_experiment_point_count(const rtcsim_experiment* exp, size_t* out);
/* Writes the configured output directory (NUL-terminated, truncated). */
RTCSIM_API int rtcsim_experiment_output_dir(const rtcsim_experiment* exp, char* buf, size_t len);

/* jobs == 0 uses the configured job count, then the hardware concurrency. */
RTCSIM_API int rtcsim_experiment_run(const rtcsim_experiment* exp, unsigned jobs,
                                     rtcsim_progress_fn progress, void* user,
                                     rtcsim_results** out);
RTCSIM_API void rtcsim_results_free(rtcsim_results* res);
RTCSIM_API size_t rtcsim_results_count(const rtcsim_results* res);
RTCSIM_API uint64_t rtcsim_results_violations(const rtcsim_results* res);
RTCSIM_API size_t rtcsim_results_failed(const rtcsim_results* res);
RTCSIM_API int rtcsim_results_point(const rtcsim_results* res, size_t index,
                                    rtcsim_point_summary* out);
/* Writes report.csv, report.json and plot.csv into dir (created if needed). */
RTCSIM_API int rtcsim_results_write(const rtcsim_results* res, const char* dir);

/* Per-point savings 1 - a/b; metric is "total" or "refresh"; policy filters
 * may be NULL. The CSV table goes to out_path, or stdout when NULL/"-". */
RTCSIM_API int rtcsim_compare(const char* report_a, const char* report_b, const char* metric,
                              const char* policy_a, const char* policy_b,
                              const char* out_path);

/* Dumps the demand trace (or, with commands != 0, the simulated command
 * stream) of one sweep point. frames == 0 covers the simulated span. */
RTCSIM_API int rtcsim_trace_point(const rtcsim_experiment* exp, size_t point, uint32_t frames,
                                  int commands, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif
