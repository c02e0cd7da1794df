#ifndef TQSIM_H
#define TQSIM_H

/* Generated by cbindgen from tqsim-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum TqsimStatus {
  /**
   * The call succeeded.
   */
  TQSIM_STATUS_OK = 0,
  /**
   * The configuration was malformed (unknown experiment, key, or value).
   */
  TQSIM_STATUS_USAGE = 1,
  /**
   * A parameter was outside its physical domain.
   */
  TQSIM_STATUS_DOMAIN = 2,
  /**
   * An I/O problem occurred.
   */
  TQSIM_STATUS_IO = 3,
  /**
   * A required pointer argument was null.
   */
  TQSIM_STATUS_NULL_ARGUMENT = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  TQSIM_STATUS_INVALID_UTF8 = 5,
  /**
   * A row or column index was out of range.
   */
  TQSIM_STATUS_OUT_OF_RANGE = 6,
  /**
   * The addressed cell holds no number.
   */
  TQSIM_STATUS_NOT_NUMERIC = 7,
} TqsimStatus;

/**
 * Opaque result of one experiment run: column names plus typed rows.
 */
typedef struct TqsimTable TqsimTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *tqsim_last_error_message(void);

/**
 * Runs the experiment described by a JSON configuration (the `--config`
 * schema: `experiment`, optional `parameters`, optional `seed`) and
 * stores a newly allocated table in `out_table`. Free the table with
 * [`tqsim_table_free`].
 *
 * # Safety
 * `config_json` must point to a NUL-terminated string and `out_table`
 * to writable storage for one pointer; both stay borrowed only for the
 * duration of the call.
 */
enum TqsimStatus tqsim_run_json(const char *config_json, struct TqsimTable **out_table);

/**
 * Number of data rows (the header is not a row).
 *
 * # Safety
 * `table` must be a live pointer from [`tqsim_run_json`] or null.
 */
size_t tqsim_table_rows(const struct TqsimTable *table);

/**
 * Number of columns.
 *
 * # Safety
 * `table` must be a live pointer from [`tqsim_run_json`] or null.
 */
size_t tqsim_table_cols(const struct TqsimTable *table);

/**
 * Borrowed column name, or null when the index is out of range. The
 * pointer stays valid for the lifetime of the table.
 *
 * # Safety
 * `table` must be a live pointer from [`tqsim_run_json`] or null.
 */
const char *tqsim_table_column_name(const struct TqsimTable *table, size_t col);

/**
 * Reads a numeric cell (integers convert to doubles) into `out_value`.
 *
 * # Safety
 * `table` must be a live pointer from [`tqsim_run_json`]; `out_value`
 * must point to writable storage for one double.
 */
enum TqsimStatus tqsim_table_value(const struct TqsimTable *table,
                                   size_t row,
                                   size_t col,
                                   double *out_value);

/**
 * Borrowed text of a label cell, or null when the cell is numeric,
 * empty, or out of range. Valid for the lifetime of the table.
 *
 * # Safety
 * `table` must be a live pointer from [`tqsim_run_json`] or null.
 */
const char *tqsim_table_text(const struct TqsimTable *table, size_t row, size_t col);

/**
 * Renders the table as CSV (identical bytes to the CLI). Free the
 * returned string with [`tqsim_string_free`].
 *
 * # Safety
 * `table` must be a live pointer from [`tqsim_run_json`] or null.
 */
char *tqsim_table_to_csv(const struct TqsimTable *table);

/**
 * Renders the table as the CLI's JSON document, including the resolved
 * configuration in the meta block. Free with [`tqsim_string_free`].
 *
 * # Safety
 * `table` must be a live pointer from [`tqsim_run_json`] or null.
 */
char *tqsim_table_to_json(const struct TqsimTable *table);

/**
 * Releases a table returned by [`tqsim_run_json`]. Null is a no-op.
 *
 * # Safety
 * `table` must be null or a pointer previously returned by
 * [`tqsim_run_json`] that has not been freed yet.
 */
void tqsim_table_free(struct TqsimTable *table);

/**
 * Releases a string returned by [`tqsim_table_to_csv`] or
 * [`tqsim_table_to_json`]. Null is a no-op.
 *
 * # Safety
 * `s` must be null or an unfreed pointer from one of the string-returning
 * functions in this library.
 */
void tqsim_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TQSIM_H */
