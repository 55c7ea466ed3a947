/* C interface to the cubepack engine.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a cp_status; on
 * failure cp_last_error() describes the problem for the calling thread.
 */
#ifndef CUBEPACK_CUBEPACK_H
#define CUBEPACK_CUBEPACK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CP_API __declspec(dllexport)
#else
#define CP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cp_status {
    CP_OK = 0,
    CP_ERR_INVALID_ARGUMENT = 1,
    CP_ERR_CONFIG = 2,         /* parameters violate an admissibility condition */
    CP_ERR_PACKING_STUCK = 3,  /* no free brick wide enough for the next batch */
    CP_ERR_IO = 4,
    CP_ERR_SCHEMA = 5,         /* malformed certificate or config text */
    CP_ERR_INTERNAL = 6
} cp_status;

typedef enum cp_mode { CP_MODE_CONTAINER_CUBE = 0, CP_MODE_GIVEN_BRICK = 1 } cp_mode;

typedef struct cp_config cp_config;
typedef struct cp_certificate cp_certificate;
typedef struct cp_report cp_report;

CP_API const char* cp_last_error(void);
CP_API const char* cp_status_name(cp_status status);

/* Defaults: d=2, t=3/5, delta=1/(d-1)-t, M=4, n0=1000, n_max=6000, p=64. */
CP_API cp_status cp_config_create(cp_config** out);
CP_API void cp_config_destroy(cp_config* config);
CP_API cp_status cp_config_set_dimension(cp_config* config, uint32_t d);
CP_API cp_status cp_config_set_exponent(cp_config* config, uint64_t num, uint64_t den);
/* Overrides the default delta; without it delta tracks 1/(d-1)-t. */
CP_API cp_status cp_config_set_delta(cp_config* config, double delta);
CP_API cp_status cp_config_set_scale(cp_config* config, uint64_t M);
CP_API cp_status cp_config_set_range(cp_config* config, uint64_t n0, uint64_t n_max);
CP_API cp_status cp_config_set_precision(cp_config* config, uint32_t bits);
/* 0 restores the default cap of 8 M. */
CP_API cp_status cp_config_set_batch_cap(cp_config* config, uint64_t cap);
CP_API cp_status cp_config_set_surf_ratio_limit(cp_config* config, double limit);
CP_API cp_status cp_config_set_mode(cp_config* config, cp_mode mode);
/* Container for CP_MODE_GIVEN_BRICK; coordinates are dyadic literals such as
 * "3/4", "5/2^10" or "0.375", `d` entries each. */
CP_API cp_status cp_config_set_container(cp_config* config, size_t d, const char* const* lo, const char* const* hi);
/* Reads a config JSON object (the certificate's "config" block). */
CP_API cp_status cp_config_load(const char* path, cp_config** out);
CP_API cp_status cp_config_validate(const cp_config* config);

CP_API cp_status cp_run(const cp_config* config, cp_certificate** out);

CP_API cp_status cp_certificate_load(const char* path, cp_certificate** out);
CP_API cp_status cp_certificate_save(const cp_certificate* cert, const char* path);
CP_API cp_status cp_certificate_write_stats(const cp_certificate* cert, const char* path);
CP_API void cp_certificate_destroy(cp_certificate* cert);
CP_API size_t cp_certificate_dimension(const cp_certificate* cert);
CP_API size_t cp_certificate_placement_count(const cp_certificate* cert);
CP_API size_t cp_certificate_free_count(const cp_certificate* cert);
CP_API size_t cp_certificate_step_count(const cp_certificate* cert);

CP_API cp_status cp_verify(const cp_certificate* cert, cp_report** out);
CP_API void cp_report_destroy(cp_report* report);
CP_API int cp_report_passed(const cp_report* report);
CP_API size_t cp_report_check_count(const cp_report* report);
/* Borrowed strings stay valid until the report is destroyed. */
CP_API cp_status cp_report_check(const cp_report* report, size_t index, const char** name, int* passed,
                                 int* mandatory, const char** detail);
CP_API const char* cp_report_text(const cp_report* report);
CP_API const char* cp_report_key_values(const cp_report* report);

/* format: "svg2d", "svg-slice" or "csv". slice_at is a dyadic literal and is
 * only read for svg-slice. */
CP_API cp_status cp_export(const cp_certificate* cert, const char* format, uint32_t slice_axis, const char* slice_at,
                           const char* path);

#ifdef __cplusplus
}
#endif

#endif /* CUBEPACK_CUBEPACK_H */
