#ifndef DRWLAB_DRWLAB_H
#define DRWLAB_DRWLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(DRWLAB_BUILDING)
#define DRWLAB_API __attribute__((visibility("default")))
#else
#define DRWLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drw_status {
    DRW_OK = 0,
    DRW_ERR_USAGE = 1,
    DRW_ERR_PARSE = 2,
    DRW_ERR_DEGREE = 3,
    DRW_ERR_WINDOW = 4,
    DRW_ERR_DOMAIN = 5,
    DRW_ERR_RESOURCE = 6,
    DRW_ERR_CONTEXT = 7,
    DRW_ERR_NULL = 8,
    DRW_ERR_INTERNAL = 9
} drw_status;

typedef struct drw_config drw_config;
typedef struct drw_form drw_form;
typedef struct drw_report drw_report;

typedef struct drw_pairing_info {
    int64_t left_length;
    int64_t right_length;
    int64_t rank_length;
    int well_defined;
    int perfect;
} drw_pairing_info;

/* Message of the last failing call on this thread; empty after a success. */
DRWLAB_API const char* drw_last_error(void);
DRWLAB_API const char* drw_status_name(drw_status s);
DRWLAB_API const char* drw_version(void);
DRWLAB_API void drw_string_free(char* s);

DRWLAB_API drw_status drw_config_new(int p, int n, drw_config** out);
DRWLAB_API void drw_config_free(drw_config* cfg);
DRWLAB_API drw_status drw_config_set_window(drw_config* cfg, int64_t lo, int64_t hi);
DRWLAB_API drw_status drw_config_set_r(drw_config* cfg, int64_t r);
DRWLAB_API drw_status drw_config_set_q(drw_config* cfg, int q);
DRWLAB_API drw_status drw_config_set_seed(drw_config* cfg, uint64_t seed);
DRWLAB_API drw_status drw_config_set_jobs(drw_config* cfg, int jobs);

/* Elements are parsed and evaluated at level n of the configuration. */
DRWLAB_API drw_status drw_form_parse(const drw_config* cfg, const char* src, drw_form** out);
DRWLAB_API void drw_form_free(drw_form* f);
DRWLAB_API drw_status drw_form_to_string(const drw_form* f, char** out);
DRWLAB_API drw_status drw_form_degree(const drw_form* f, int* out);
DRWLAB_API drw_status drw_form_conductor(const drw_form* f, int64_t* out);
DRWLAB_API drw_status drw_form_residue(const drw_form* f, int64_t* out);
DRWLAB_API drw_status drw_form_equal(const drw_form* a, const drw_form* b, int* out);
/* Canonical re-print of the parsed expression tree. */
DRWLAB_API drw_status drw_expr_normalize(const char* src, char** out);

DRWLAB_API size_t drw_suite_count(void);
DRWLAB_API const char* drw_suite_name(size_t i);
DRWLAB_API drw_status drw_run_suite(const drw_config* cfg, const char* suite, drw_report** out);

/* kind is one of log, logprime, fil, Fil, filp; the listing is text or JSON. */
DRWLAB_API drw_status drw_fil_basis(const drw_config* cfg, const char* kind, int json, char** out);

/* Local duality at the configured (p, n, r); q is the degree of the pole side. */
DRWLAB_API drw_status drw_duality(const drw_config* cfg, drw_pairing_info* info, drw_report** out);

DRWLAB_API void drw_report_free(drw_report* r);
DRWLAB_API drw_status drw_report_passed(const drw_report* r, int* out);
DRWLAB_API drw_status drw_report_check_count(const drw_report* r, size_t* total, size_t* passed);
DRWLAB_API drw_status drw_report_json(const drw_report* r, char** out);
DRWLAB_API drw_status drw_report_text(const drw_report* r, char** out);

#ifdef __cplusplus
}
#endif

#endif
