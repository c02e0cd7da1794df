//! C ABI over the tqsim experiment runner.
//!
//! A caller hands in the same JSON run configuration the CLI accepts via
//! `--config`, gets back an opaque result table, and reads it through
//! accessor functions or serialized CSV/JSON. All functions return
//! [`TqsimStatus`] codes mirroring the CLI exit statuses; the message for
//! the most recent failure on the current thread is available from
//! [`tqsim_last_error_message`].
//!
//! The companion header is generated into `include/tqsim.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use tqsim::cli::{self, Cell, CliError, RunConfig, Table};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TqsimStatus {
    /// The call succeeded.
    Ok = 0,
    /// The configuration was malformed (unknown experiment, key, or value).
    Usage = 1,
    /// A parameter was outside its physical domain.
    Domain = 2,
    /// An I/O problem occurred.
    Io = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// A row or column index was out of range.
    OutOfRange = 6,
    /// The addressed cell holds no number.
    NotNumeric = 7,
}

/// Opaque result of one experiment run: column names plus typed rows.
pub struct TqsimTable {
    config: RunConfig,
    table: Table,
    column_names: Vec<CString>,
    text_cells: Vec<Vec<Option<CString>>>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: TqsimStatus, message: &str) -> TqsimStatus {
    set_last_error(message);
    status
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tqsim_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Runs the experiment described by a JSON configuration (the `--config`
/// schema: `experiment`, optional `parameters`, optional `seed`) and
/// stores a newly allocated table in `out_table`. Free the table with
/// [`tqsim_table_free`].
///
/// # Safety
/// `config_json` must point to a NUL-terminated string and `out_table`
/// to writable storage for one pointer; both stay borrowed only for the
/// duration of the call.
#[no_mangle]
pub unsafe extern "C" fn tqsim_run_json(
    config_json: *const c_char,
    out_table: *mut *mut TqsimTable,
) -> TqsimStatus {
    if config_json.is_null() || out_table.is_null() {
        return fail(TqsimStatus::NullArgument, "null argument");
    }
    let text = match CStr::from_ptr(config_json).to_str() {
        Ok(text) => text,
        Err(_) => return fail(TqsimStatus::InvalidUtf8, "configuration is not valid UTF-8"),
    };
    let config = match cli::config_from_json_str(text) {
        Ok(config) => config,
        Err(CliError::Usage(msg)) => return fail(TqsimStatus::Usage, &msg),
        Err(CliError::Io(msg)) => return fail(TqsimStatus::Io, &msg),
    };
    let table = match cli::run(&config) {
        Ok(table) => table,
        Err(e) => return fail(TqsimStatus::Domain, &e.to_string()),
    };

    let column_names = table
        .columns
        .iter()
        .map(|name| CString::new(*name).expect("column names contain no NUL"))
        .collect();
    let text_cells = table
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| match cell {
                    Cell::Text(s) => CString::new(s.as_str()).ok(),
                    _ => None,
                })
                .collect()
        })
        .collect();

    let boxed = Box::new(TqsimTable {
        config,
        table,
        column_names,
        text_cells,
    });
    *out_table = Box::into_raw(boxed);
    TqsimStatus::Ok
}

/// Number of data rows (the header is not a row).
///
/// # Safety
/// `table` must be a live pointer from [`tqsim_run_json`] or null.
#[no_mangle]
pub unsafe extern "C" fn tqsim_table_rows(table: *const TqsimTable) -> usize {
    table.as_ref().map_or(0, |t| t.table.rows.len())
}

/// Number of columns.
///
/// # Safety
/// `table` must be a live pointer from [`tqsim_run_json`] or null.
#[no_mangle]
pub unsafe extern "C" fn tqsim_table_cols(table: *const TqsimTable) -> usize {
    table.as_ref().map_or(0, |t| t.table.columns.len())
}

/// Borrowed column name, or null when the index is out of range. The
/// pointer stays valid for the lifetime of the table.
///
/// # Safety
/// `table` must be a live pointer from [`tqsim_run_json`] or null.
#[no_mangle]
pub unsafe extern "C" fn tqsim_table_column_name(
    table: *const TqsimTable,
    col: usize,
) -> *const c_char {
    match table.as_ref().and_then(|t| t.column_names.get(col)) {
        Some(name) => name.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Reads a numeric cell (integers convert to doubles) into `out_value`.
///
/// # Safety
/// `table` must be a live pointer from [`tqsim_run_json`]; `out_value`
/// must point to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn tqsim_table_value(
    table: *const TqsimTable,
    row: usize,
    col: usize,
    out_value: *mut f64,
) -> TqsimStatus {
    let Some(t) = table.as_ref() else {
        return fail(TqsimStatus::NullArgument, "null table");
    };
    if out_value.is_null() {
        return fail(TqsimStatus::NullArgument, "null output pointer");
    }
    let Some(cell) = t.table.rows.get(row).and_then(|r| r.get(col)) else {
        return fail(
            TqsimStatus::OutOfRange,
            &format!("cell ({row}, {col}) is out of range"),
        );
    };
    match cell {
        Cell::Num(x) => {
            *out_value = *x;
            TqsimStatus::Ok
        }
        Cell::Int(n) => {
            *out_value = *n as f64;
            TqsimStatus::Ok
        }
        Cell::Text(_) | Cell::Empty => fail(
            TqsimStatus::NotNumeric,
            &format!("cell ({row}, {col}) holds no number"),
        ),
    }
}

/// Borrowed text of a label cell, or null when the cell is numeric,
/// empty, or out of range. Valid for the lifetime of the table.
///
/// # Safety
/// `table` must be a live pointer from [`tqsim_run_json`] or null.
#[no_mangle]
pub unsafe extern "C" fn tqsim_table_text(
    table: *const TqsimTable,
    row: usize,
    col: usize,
) -> *const c_char {
    match table
        .as_ref()
        .and_then(|t| t.text_cells.get(row))
        .and_then(|r| r.get(col))
        .and_then(Option::as_ref)
    {
        Some(text) => text.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Renders the table as CSV (identical bytes to the CLI). Free the
/// returned string with [`tqsim_string_free`].
///
/// # Safety
/// `table` must be a live pointer from [`tqsim_run_json`] or null.
#[no_mangle]
pub unsafe extern "C" fn tqsim_table_to_csv(table: *const TqsimTable) -> *mut c_char {
    match table.as_ref() {
        Some(t) => CString::new(cli::render_csv(&t.table))
            .map_or(std::ptr::null_mut(), CString::into_raw),
        None => std::ptr::null_mut(),
    }
}

/// Renders the table as the CLI's JSON document, including the resolved
/// configuration in the meta block. Free with [`tqsim_string_free`].
///
/// # Safety
/// `table` must be a live pointer from [`tqsim_run_json`] or null.
#[no_mangle]
pub unsafe extern "C" fn tqsim_table_to_json(table: *const TqsimTable) -> *mut c_char {
    match table.as_ref() {
        Some(t) => CString::new(cli::render_json(&t.config, &t.table))
            .map_or(std::ptr::null_mut(), CString::into_raw),
        None => std::ptr::null_mut(),
    }
}

/// Releases a table returned by [`tqsim_run_json`]. Null is a no-op.
///
/// # Safety
/// `table` must be null or a pointer previously returned by
/// [`tqsim_run_json`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn tqsim_table_free(table: *mut TqsimTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Releases a string returned by [`tqsim_table_to_csv`] or
/// [`tqsim_table_to_json`]. Null is a no-op.
///
/// # Safety
/// `s` must be null or an unfreed pointer from one of the string-returning
/// functions in this library.
#[no_mangle]
pub unsafe extern "C" fn tqsim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
