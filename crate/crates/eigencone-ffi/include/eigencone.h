/* C interface to eigencone: certified eigenvalue enclosures.
* Generated by cbindgen; do not edit by hand. */

#ifndef EIGENCONE_H
#define EIGENCONE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * ABI-level status. Command verdicts are not errors; they arrive in the
 * `exit_out` parameter of the `ec_run_*` calls.
 */
typedef enum EcStatus {
  EcOk = 0,
  EcNullArgument = 1,
  EcInvalidUtf8 = 2,
  EcParseError = 3,
  EcBadOptions = 4,
  EcPanicked = 5,
} EcStatus;

/**
 * Opaque parsed matrix handle.
 */
typedef struct EcMatrix EcMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, empty if none.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *ec_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *ec_version(void);

/**
 * Release a string returned by this library. Accepts null.
 */
void ec_string_free(char *s);

/**
 * Parse matrix-file JSON into a handle. `name` may be null; it labels the
 * input in reports when the JSON has no "name" field. Returns null on
 * failure; see [`ec_last_error`].
 */
struct EcMatrix *ec_matrix_parse(const char *json_text, const char *name);

/**
 * Release a matrix handle. Accepts null.
 */
void ec_matrix_free(struct EcMatrix *m);

/**
 * Dimension of the matrix behind the handle; 0 for null.
 */
uintptr_t ec_matrix_dim(const struct EcMatrix *m);

/**
 * Gerschgorin disk report. `options_json` (nullable) is an object with
 * optional fields `partition` (array of block sizes), `scale` (array of
 * exact scalar strings), `svg` (bool), `timing` (bool). `svg_out` may be
 * null; when given and `svg` was requested it receives the figure.
 */
enum EcStatus ec_run_disks(const struct EcMatrix *m,
                           const char *options_json,
                           char **report_out,
                           char **svg_out,
                           uint8_t *exit_out);

/**
 * Cone domination verdict. Options: `k` (split index), `r` (exact scalar
 * string), `exact` (bool), `timing` (bool).
 */
enum EcStatus ec_run_dominate(const struct EcMatrix *m,
                              const char *options_json,
                              char **report_out,
                              uint8_t *exit_out);

/**
 * Annulus localization. Options: `mode` ("single", "block", "gersch"),
 * `k`, `shift` ("re" or ["re","im"]), `optimize_r`, `svg`, `timing`.
 */
enum EcStatus ec_run_localize(const struct EcMatrix *m,
                              const char *options_json,
                              char **report_out,
                              char **svg_out,
                              uint8_t *exit_out);

/**
 * Product-chain localization over `count` factor handles. Options: `k`,
 * `r`, `timing`.
 */
enum EcStatus ec_run_chain(const struct EcMatrix *const *ms,
                           uintptr_t count,
                           const char *options_json,
                           char **report_out,
                           uint8_t *exit_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGENCONE_H */
