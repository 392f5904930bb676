#ifndef TESTSET_H
#define TESTSET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum TsStatus {
  TsOk = 0,
  TsInvalidArgument = 2,
  TsInfeasible = 3,
  TsTooLarge = 4,
  TsIo = 5,
} TsStatus;

typedef struct TsInstance TsInstance;

typedef struct TsSolveResult TsSolveResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last error on this thread; valid until the next call.
 */
const char *ts_last_error(void);

/**
 * Parses a JSON instance document into a handle. On success writes the
 * handle to `out`; the caller frees it with `ts_instance_free`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum TsStatus ts_instance_from_json(const char *json, struct TsInstance **out);

/**
 * # Safety
 * `instance` must come from `ts_instance_from_json` and not be freed twice.
 */
void ts_instance_free(struct TsInstance *instance);

/**
 * Number of items, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be a valid handle or null.
 */
uintptr_t ts_instance_items(const struct TsInstance *instance);

/**
 * Number of tests, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be a valid handle or null.
 */
uintptr_t ts_instance_tests(const struct TsInstance *instance);

/**
 * Runs a solver (`"sga"`, `"ich"`, or `"exact"`) with natural-order
 * tie-breaking. On success writes a result handle to `out`; the caller
 * frees it with `ts_result_free`.
 *
 * # Safety
 * All pointers must be valid; `algorithm` must be NUL-terminated.
 */
enum TsStatus ts_solve(const struct TsInstance *instance,
                       const char *algorithm,
                       struct TsSolveResult **out);

/**
 * # Safety
 * `result` must come from `ts_solve` and not be freed twice.
 */
void ts_result_free(struct TsSolveResult *result);

/**
 * Number of selected tests, or 0 for a null handle.
 *
 * # Safety
 * `result` must be a valid handle or null.
 */
uintptr_t ts_result_size(const struct TsSolveResult *result);

/**
 * The i-th selected test index, or -1 when out of range.
 *
 * # Safety
 * `result` must be a valid handle or null.
 */
long ts_result_test(const struct TsSolveResult *result, uintptr_t i);

/**
 * Full run record as a JSON string. Free with `ts_string_free`.
 *
 * # Safety
 * `result` must be a valid handle or null.
 */
char *ts_result_report_json(const struct TsSolveResult *result);

/**
 * # Safety
 * `s` must come from `ts_result_report_json` and not be freed twice.
 */
void ts_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TESTSET_H */
