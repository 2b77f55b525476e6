#ifndef PARETOTOPO_H
#define PARETOTOPO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PARETOTOPO_BUILDING)
#    define PARETOTOPO_API __declspec(dllexport)
#  else
#    define PARETOTOPO_API __declspec(dllimport)
#  endif
#else
#  define PARETOTOPO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pt_status {
  PT_OK = 0,
  PT_INVALID_ARGUMENT = 1,
  PT_IO = 2,
  PT_PARSE = 3,
  PT_ROW_MISMATCH = 4,
  PT_GUARD_EXCEEDED = 5,
  PT_NUMERICAL = 6,
  PT_INSUFFICIENT_SAMPLE = 7,
  PT_INTERNAL = 99
} pt_status;

typedef struct pt_cloud pt_cloud;
typedef struct pt_report pt_report;

/* Message of the last failing call on this thread; "" if none. */
PARETOTOPO_API const char* pt_last_error(void);
PARETOTOPO_API const char* pt_status_name(pt_status status);
PARETOTOPO_API const char* pt_version(void);

/* Point clouds. f_csv may be NULL (no objectives). */
PARETOTOPO_API pt_status pt_cloud_load(const char* x_csv, const char* f_csv, pt_cloud** out);
/* Pareto-set sample of a built-in problem (med, gapped-med, dtlz5, dtlz7).
 * oversample <= 0 keeps the default DTLZ7 over-sampling factor. */
PARETOTOPO_API pt_status pt_cloud_sample(const char* problem, size_t n, uint64_t seed, double oversample,
                                         pt_cloud** out);
/* Row-major copies; f may be NULL when m == 0. */
PARETOTOPO_API pt_status pt_cloud_from_arrays(const double* x, size_t n, size_t dim, const double* f, size_t m,
                                              pt_cloud** out);
/* Writes <prefix>_x.csv and, with objectives, <prefix>_f.csv. */
PARETOTOPO_API pt_status pt_cloud_save(const pt_cloud* cloud, const char* prefix);
PARETOTOPO_API size_t pt_cloud_size(const pt_cloud* cloud);
PARETOTOPO_API size_t pt_cloud_dim(const pt_cloud* cloud);
PARETOTOPO_API size_t pt_cloud_num_objectives(const pt_cloud* cloud);
PARETOTOPO_API void pt_cloud_free(pt_cloud* cloud);

/* Runs the simplicity analysis. config_json is a JSON object (NULL or "" for
 * defaults); see README for the keys. */
PARETOTOPO_API pt_status pt_analyze(const pt_cloud* cloud, const char* config_json, pt_report** out);
/* JSON report owned by the handle. */
PARETOTOPO_API const char* pt_report_json(const pt_report* report);
PARETOTOPO_API size_t pt_report_result_count(const pt_report* report);
/* Per objective subset, in report order. Skipped subsets give PT_INVALID_ARGUMENT. */
PARETOTOPO_API pt_status pt_report_write_svg(const pt_report* report, size_t index, const char* path);
PARETOTOPO_API pt_status pt_report_write_diagram_csv(const pt_report* report, size_t index, const char* path);
PARETOTOPO_API void pt_report_free(pt_report* report);

/* Repeated sample+analyze runs. Outputs are malloc'd; release with pt_string_free. */
PARETOTOPO_API pt_status pt_run_trials(const char* options_json, char** summary_csv, char** rows_csv);
/* Cost profile over a grid of sample sizes and maxdims. */
PARETOTOPO_API pt_status pt_run_bench(const char* options_json, char** csv);
PARETOTOPO_API void pt_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
