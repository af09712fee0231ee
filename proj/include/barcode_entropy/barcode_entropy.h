#ifndef BARCODE_ENTROPY_H
#define BARCODE_ENTROPY_H

/* C interface to the barcode entropy library.
 *
 * Every function returns a bce_status. On failure the message is available
 * from bce_last_error() on the calling thread until the next call. Objects
 * are opaque handles released with the matching *_free function; strings
 * returned through char** are released with bce_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BCE_API __declspec(dllexport)
#else
#define BCE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bce_status {
  BCE_OK = 0,
  BCE_E_INPUT = 1,
  BCE_E_PRECONDITION = 2,
  BCE_E_DOMAIN = 3,
  BCE_E_CAPABILITY = 4,
  BCE_E_PARSE = 5,
  BCE_E_IO = 6,
  BCE_E_CHECK_FAILED = 7,
  BCE_E_INTERNAL = 99
} bce_status;

typedef struct bce_barcode bce_barcode;
typedef struct bce_complex bce_complex;
typedef struct bce_spectrum bce_spectrum;
typedef struct bce_template bce_template;
typedef struct bce_profile bce_profile;
typedef struct bce_series bce_series;

BCE_API const char* bce_version(void);
BCE_API const char* bce_last_error(void);
BCE_API const char* bce_status_name(bce_status s);
BCE_API void bce_string_free(char* s);

BCE_API bce_status bce_set_tolerance(double tol);
BCE_API double bce_get_tolerance(void);

/* Barcodes. Infinite right endpoints are passed as INFINITY. */
BCE_API bce_status bce_barcode_new(bce_barcode** out);
BCE_API void bce_barcode_free(bce_barcode* b);
BCE_API bce_status bce_barcode_add(bce_barcode* b, double left, double right);
BCE_API bce_status bce_barcode_size(const bce_barcode* b, size_t* out);
BCE_API bce_status bce_barcode_get(const bce_barcode* b, size_t i, double* left, double* right, int* right_open);
BCE_API bce_status bce_barcode_parse(const char* text, const char* source, bce_barcode** out);
BCE_API bce_status bce_barcode_read(const char* path, bce_barcode** out);
/* comments may be NULL when n_comments is 0 */
BCE_API bce_status bce_barcode_to_text(const bce_barcode* b, const char* const* comments, size_t n_comments, char** out);
BCE_API bce_status bce_barcode_to_json(const bce_barcode* b, char** out);
BCE_API bce_status bce_barcode_truncate(const bce_barcode* b, double T, bce_barcode** out);
BCE_API bce_status bce_barcode_shift(const bce_barcode* b, double delta, bce_barcode** out);
BCE_API bce_status bce_barcode_n_eps(const bce_barcode* b, double eps, size_t* out);
BCE_API bce_status bce_bottleneck(const bce_barcode* a, const bce_barcode* b, double* out);

/* Filtered complexes ("# fcomplex v1"). rational != 0 parses actions exactly. */
BCE_API bce_status bce_complex_parse(const char* text, const char* source, int rational, bce_complex** out);
BCE_API bce_status bce_complex_read(const char* path, int rational, bce_complex** out);
BCE_API void bce_complex_free(bce_complex* c);
BCE_API bce_status bce_complex_dim(const bce_complex* c, size_t* out);
BCE_API bce_status bce_complex_barcode(const bce_complex* c, bce_barcode** out);

/* Reeb spectra. */
BCE_API bce_status bce_spectrum_hyperbolic(double rate, double t_max, uint64_t seed, bce_spectrum** out);
BCE_API bce_status bce_spectrum_quasiperiodic(const double* base, size_t n, double t_max, bce_spectrum** out);
BCE_API bce_status bce_spectrum_parse(const char* json, const char* source, bce_spectrum** out);
BCE_API bce_status bce_spectrum_read(const char* path, bce_spectrum** out);
BCE_API void bce_spectrum_free(bce_spectrum* s);
BCE_API bce_status bce_spectrum_to_json(const bce_spectrum* s, char** out);
BCE_API bce_status bce_spectrum_total(const bce_spectrum* s, size_t* out);
BCE_API bce_status bce_spectrum_count_below(const bce_spectrum* s, double T, size_t* out);
BCE_API bce_status bce_spectrum_contains(const bce_spectrum* s, double t, int* out);

/* Radial profiles: shape is "quadratic", "cosh" (param = gamma) or
 * "quartic" (param = beta). */
BCE_API bce_status bce_profile_new(const char* shape, double r0, double T, double param, bce_profile** out);
BCE_API void bce_profile_free(bce_profile* p);
BCE_API bce_status bce_profile_constants(const bce_profile* p, double* r0, double* T, double* C);
BCE_API bce_status bce_profile_s_h(const bce_profile* p, double t, double* out);
BCE_API bce_status bce_profile_describe(const bce_profile* p, char** out);

/* Barcode templates: policy is "nested", "random" or "short-bias". */
BCE_API bce_status bce_template_gen(const bce_spectrum* s, size_t betti, const char* policy, uint64_t seed, double fraction, double min_length,
                                    bce_template** out);
BCE_API void bce_template_free(bce_template* t);
BCE_API bce_status bce_template_validate(const bce_template* t, char** problems);
BCE_API bce_status bce_build_sh(const bce_template* t, bce_barcode** out);
/* B(H) of the template restricted below the profile slope. */
BCE_API bce_status bce_build_bh(const bce_template* t, const bce_profile* p, bce_barcode** out);
BCE_API bce_status bce_build_bh_delta(const bce_template* t, const bce_profile* p, double delta, size_t n_crit, bce_barcode** out);

/* Entropy. */
BCE_API bce_status bce_entropy_series(const bce_barcode* b, double eps, const double* T_grid, size_t n, bce_series** out);
BCE_API void bce_series_free(bce_series* s);
BCE_API bce_status bce_series_slope(const bce_series* s, double* slope, int* degenerate);
BCE_API bce_status bce_series_to_tsv(const bce_series* s, const char* const* comments, size_t n_comments, char** out);
BCE_API bce_status bce_series_summary_json(const bce_series* s, char** out);
/* eps_grid strictly decreasing; warnings (newline separated) may be NULL. */
BCE_API bce_status bce_entropy_estimate(const bce_barcode* b, const double* eps_grid, size_t n_eps, const double* T_grid, size_t n_T, double* estimate,
                                        char** warnings);
/* SH/SH⁺ sandwich report as JSON. */
BCE_API bce_status bce_entropy_sandwich(const bce_barcode* sh, size_t betti, double eps, const double* T_grid, size_t n_T, char** report);

/* Check suites. mode is "float" or "rational"; suite may be "all".
 * Returns BCE_E_CHECK_FAILED, with the report still set, when any fails. */
BCE_API bce_status bce_check_suites(char** names);
BCE_API bce_status bce_check_run(const char* suite, uint64_t seed, size_t count, size_t jobs, const char* mode, char** report);

#ifdef __cplusplus
}
#endif

#endif
