/* C interface to the mesofluct library. All handles are opaque and owned by
 * the caller once returned; release them with the matching *_destroy call.
 * Functions report failure through mf_status and leave a message that
 * mf_last_error() returns on the same thread. */
#ifndef MESOFLUCT_MESOFLUCT_H
#define MESOFLUCT_MESOFLUCT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MESOFLUCT_BUILDING)
#    define MF_API __declspec(dllexport)
#  else
#    define MF_API __declspec(dllimport)
#  endif
#else
#  define MF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mf_status {
  MF_OK = 0,
  MF_ERR_CONFIG = 1,       /* invalid parameter, range or bracket */
  MF_ERR_NUMERIC = 2,      /* numeric contract breach or pipeline defect */
  MF_ERR_IO = 3,
  MF_ERR_INVALID_ARG = 4,  /* null handle or index out of range */
  MF_ERR_INTERNAL = 5
} mf_status;

typedef enum mf_format { MF_FORMAT_CSV = 0, MF_FORMAT_JSON = 1 } mf_format;

typedef struct mf_config mf_config;
typedef struct mf_table mf_table;
typedef struct mf_report mf_report;

MF_API const char* mf_version(void);
MF_API const char* mf_last_error(void);

MF_API mf_status mf_config_create(mf_config** out);
MF_API void mf_config_destroy(mf_config* cfg);
/* key is a long option name without dashes, e.g. "gamma" or "temp-range" */
MF_API mf_status mf_config_set(mf_config* cfg, const char* key, const char* value);
MF_API mf_status mf_config_validate(const mf_config* cfg);
MF_API mf_format mf_config_format(const mf_config* cfg);

MF_API mf_status mf_evolve(const mf_config* cfg, mf_table** out);
/* critical may be NULL; when given it receives the T_C(r) table */
MF_API mf_status mf_sweep(const mf_config* cfg, mf_table** grid, mf_table** critical);

MF_API size_t mf_table_rows(const mf_table* t);
MF_API size_t mf_table_cols(const mf_table* t);
MF_API const char* mf_table_column(const mf_table* t, size_t col);
/* returns 1 and stores the value if the cell is present, 0 if it is empty */
MF_API int mf_table_get(const mf_table* t, size_t row, size_t col, double* value);
MF_API int mf_table_meta(const mf_table* t, const char* key, double* value);
/* path "-" writes to stdout */
MF_API mf_status mf_table_write(const mf_table* t, const char* path, mf_format format);
MF_API void mf_table_destroy(mf_table* t);

MF_API mf_status mf_verify(const mf_config* cfg, mf_report** out);
MF_API size_t mf_report_size(const mf_report* r);
MF_API const char* mf_report_name(const mf_report* r, size_t i);
MF_API int mf_report_passed(const mf_report* r, size_t i);
MF_API double mf_report_residual(const mf_report* r, size_t i);
MF_API const char* mf_report_detail(const mf_report* r, size_t i);
MF_API void mf_report_destroy(mf_report* r);

/* Model 1 closed-form separability indicator; one_mode selects r3 = 0. */
MF_API mf_status mf_closed_form_s(double epsilon, double delta, double gamma, double j0,
                                  double r, int one_mode, double t, double* out);

#ifdef __cplusplus
}
#endif

#endif /* MESOFLUCT_MESOFLUCT_H */
