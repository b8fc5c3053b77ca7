#ifndef CDL_CDL_H
#define CDL_CDL_H

/*
 * C interface to the cross-diffusion simulator and verification harness.
 *
 * Every fallible call returns a cdl_status; on failure a description of the
 * error is available from cdl_last_error() on the same thread. Strings
 * returned through char** out-parameters are heap allocated and must be
 * released with cdl_string_free(). Handles are released with their *_free
 * function; passing NULL to any *_free is a no-op.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(CDL_BUILDING_LIBRARY)
#define CDL_API __attribute__((visibility("default")))
#else
#define CDL_API
#endif

typedef enum cdl_status {
  CDL_OK = 0,
  CDL_ERR_CONFIG = 1,     /* invalid configuration or model parameters */
  CDL_ERR_INPUT = 2,      /* malformed input data (checkpoint, time series) */
  CDL_ERR_CORRUPTION = 3, /* NaN/Inf found in a field */
  CDL_ERR_NUMERICAL = 4,  /* an iterative method failed */
  CDL_ERR_IO = 5,         /* file system failure */
  CDL_ERR_ARGUMENT = 6,   /* NULL handle or out-of-range argument */
  CDL_ERR_INTERNAL = 7
} cdl_status;

typedef enum cdl_outcome {
  CDL_OUTCOME_COMPLETED = 0,
  CDL_OUTCOME_BLOWUP = 1,
  CDL_OUTCOME_SOLVER_FAILURE = 2
} cdl_outcome;

typedef struct cdl_config cdl_config;
typedef struct cdl_run cdl_run;
typedef struct cdl_field cdl_field;

CDL_API const char* cdl_last_error(void);
CDL_API void cdl_string_free(char* s);

/* Built-in experiment configs. */
CDL_API size_t cdl_preset_count(void);
/* Name of preset i, or NULL when out of range. The string is owned by the library. */
CDL_API const char* cdl_preset_name(size_t i);
CDL_API cdl_status cdl_preset_text(const char* name, char** out);

/* Configs. cdl_config_load accepts a file path or "preset:<name>". */
CDL_API cdl_status cdl_config_parse(const char* text, cdl_config** out);
CDL_API cdl_status cdl_config_load(const char* source, cdl_config** out);
CDL_API cdl_status cdl_config_echo(const cdl_config* cfg, char** out);
CDL_API cdl_status cdl_config_set_output_dir(cdl_config* cfg, const char* dir);
CDL_API void cdl_config_free(cdl_config* cfg);

/* Runs. With write_outputs != 0 the output directory receives
 * diagnostics.csv, final.cdl, resolved.cfg and summary.txt. A blow-up or a
 * solver failure is a successful call; inspect cdl_run_outcome(). */
CDL_API cdl_status cdl_run_execute(const cdl_config* cfg, int write_outputs, cdl_run** out);
CDL_API cdl_outcome cdl_run_outcome(const cdl_run* run);
CDL_API double cdl_run_t_final(const cdl_run* run);
CDL_API long cdl_run_steps(const cdl_run* run);
/* Returns 1 and stores the blow-up time when the run blew up, else 0. */
CDL_API int cdl_run_blowup_time(const cdl_run* run, double* out);
CDL_API size_t cdl_run_record_count(const cdl_run* run);
CDL_API cdl_status cdl_run_diagnostics_csv(const cdl_run* run, char** out);
CDL_API cdl_status cdl_run_summary(const cdl_run* run, char** out);
/* Copy of the final state; free with cdl_field_free. */
CDL_API cdl_status cdl_run_final_state(const cdl_run* run, cdl_field** out);
CDL_API void cdl_run_free(cdl_run* run);

/* Structure certification of the config's model. *violated receives the
 * number of violated conditions. */
CDL_API cdl_status cdl_check(const cdl_config* cfg, int write_outputs, char** csv, int* violated);

/* Manufactured-solution study at `levels` resolutions. ratios receives
 * levels - 1 error ratios when non-NULL. */
CDL_API cdl_status cdl_convergence(const cdl_config* cfg, int levels, char** report, double* ratios);

/* Fields: m components on an (nx+1) x (ny+1) node grid with spacing h. */
CDL_API cdl_status cdl_field_create(int nx, int ny, double h, int m, cdl_field** out);
CDL_API void cdl_field_free(cdl_field* f);
/* Mutable view of the values in storage order c*(nx+1)*(ny+1) + j*(nx+1) + i. */
CDL_API cdl_status cdl_field_data(cdl_field* f, double** data, size_t* count);
CDL_API cdl_status cdl_field_shape(const cdl_field* f, int* nx, int* ny, double* h, int* m);

CDL_API cdl_status cdl_checkpoint_write(const char* path, const cdl_field* f, double t);
CDL_API cdl_status cdl_checkpoint_read(const char* path, cdl_field** out, double* t);

/* Trapezoidal integral, Ladyzhenskaya and Poincare ratios of one component. */
CDL_API cdl_status cdl_integrate(const cdl_field* f, int component, double* out);
CDL_API cdl_status cdl_lady_ratio(const cdl_field* f, int component, double* out);
CDL_API cdl_status cdl_poincare_ratio(const cdl_field* f, int component, double* out);

#ifdef __cplusplus
}
#endif

#endif /* CDL_CDL_H */
