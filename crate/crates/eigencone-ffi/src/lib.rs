//! C ABI for the certified eigenvalue toolbox.
//!
//! Matrices cross the boundary as the same JSON the CLI reads and live
//! behind opaque handles; every command returns its JSON report as a
//! heap string the caller releases with [`ec_string_free`]. ABI-level
//! failures (null pointers, bad UTF-8, malformed options) are reported
//! through the returned [`EcStatus`] plus [`ec_last_error`]; the
//! mathematical verdict travels in `exit_out` with the CLI's exit-code
//! convention: 0 certified positive, 1 certified negative, 2 input
//! error, 3 undecided.

use eigencone::driver::{
    self, ChainOptions, DisksOptions, DominateOptions, LocalizeCmdMode, LocalizeOptions,
    RunOutput,
};
use eigencone::exact::{parse_decimal, QIv, QRect, Rat};
use eigencone::mfile::{parse_matrix_file, MatrixInput};
use serde::Deserialize;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Opaque parsed matrix handle.
pub struct EcMatrix(MatrixInput);

/// ABI-level status. Command verdicts are not errors; they arrive in the
/// `exit_out` parameter of the `ec_run_*` calls.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcStatus {
    EcOk = 0,
    EcNullArgument = 1,
    EcInvalidUtf8 = 2,
    EcParseError = 3,
    EcBadOptions = 4,
    EcPanicked = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap_or_default());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::default());
}

/// Message for the most recent failure on this thread, empty if none.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ec_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ec_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. Accepts null.
#[no_mangle]
pub unsafe extern "C" fn ec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, EcStatus> {
    if p.is_null() {
        set_error(&format!("{what} is null"));
        return Err(EcStatus::EcNullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        EcStatus::EcInvalidUtf8
    })
}

/// Parse matrix-file JSON into a handle. `name` may be null; it labels the
/// input in reports when the JSON has no "name" field. Returns null on
/// failure; see [`ec_last_error`].
#[no_mangle]
pub unsafe extern "C" fn ec_matrix_parse(
    json_text: *const c_char,
    name: *const c_char,
) -> *mut EcMatrix {
    clear_error();
    let body = || -> Result<*mut EcMatrix, EcStatus> {
        let text = read_str(json_text, "json_text")?;
        let fallback = if name.is_null() { "matrix" } else { read_str(name, "name")? };
        match parse_matrix_file(text, fallback) {
            Ok(input) => Ok(Box::into_raw(Box::new(EcMatrix(input)))),
            Err(e) => {
                set_error(&e.to_string());
                Err(EcStatus::EcParseError)
            }
        }
    };
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(p)) => p,
        Ok(Err(_)) => ptr::null_mut(),
        Err(_) => {
            set_error("internal panic in ec_matrix_parse");
            ptr::null_mut()
        }
    }
}

/// Release a matrix handle. Accepts null.
#[no_mangle]
pub unsafe extern "C" fn ec_matrix_free(m: *mut EcMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the matrix behind the handle; 0 for null.
#[no_mangle]
pub unsafe extern "C" fn ec_matrix_dim(m: *const EcMatrix) -> usize {
    if m.is_null() {
        0
    } else {
        (*m).0.matrix.rows()
    }
}

fn to_c_string(s: &str) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn deliver(
    out: RunOutput,
    report_out: *mut *mut c_char,
    svg_out: *mut *mut c_char,
    exit_out: *mut u8,
) -> EcStatus {
    if !report_out.is_null() {
        *report_out = to_c_string(&out.json);
    }
    if !svg_out.is_null() {
        *svg_out = out.svg.as_deref().map_or(ptr::null_mut(), to_c_string);
    }
    if !exit_out.is_null() {
        *exit_out = out.exit_code;
    }
    EcStatus::EcOk
}

fn parse_options<T: Default + for<'de> Deserialize<'de>>(
    text: Option<&str>,
) -> Result<T, EcStatus> {
    match text {
        None => Ok(T::default()),
        Some(t) if t.trim().is_empty() => Ok(T::default()),
        Some(t) => serde_json::from_str(t).map_err(|e| {
            set_error(&format!("options: {e}"));
            EcStatus::EcBadOptions
        }),
    }
}

unsafe fn options_str<'a>(options_json: *const c_char) -> Result<Option<&'a str>, EcStatus> {
    if options_json.is_null() {
        Ok(None)
    } else {
        read_str(options_json, "options_json").map(Some)
    }
}

fn parse_rat_opt(s: &Option<String>, what: &str) -> Result<Option<Rat>, EcStatus> {
    match s {
        None => Ok(None),
        Some(t) => parse_decimal(t).map(Some).map_err(|e| {
            set_error(&format!("{what}: {e}"));
            EcStatus::EcBadOptions
        }),
    }
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct FfiDisksOptions {
    partition: Option<Vec<usize>>,
    scale: Option<Vec<String>>,
    svg: bool,
    timing: bool,
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct FfiDominateOptions {
    k: Option<usize>,
    r: Option<String>,
    exact: bool,
    timing: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ShiftSpec {
    Real(String),
    Complex([String; 2]),
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct FfiLocalizeOptions {
    mode: Option<String>,
    k: Option<usize>,
    shift: Option<ShiftSpec>,
    optimize_r: bool,
    svg: bool,
    timing: bool,
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct FfiChainOptions {
    k: Option<usize>,
    r: Option<String>,
    timing: bool,
}

unsafe fn guarded(
    name: &str,
    body: impl FnOnce() -> Result<EcStatus, EcStatus>,
) -> EcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(s)) => s,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error(&format!("internal panic in {name}"));
            EcStatus::EcPanicked
        }
    }
}

/// Gerschgorin disk report. `options_json` (nullable) is an object with
/// optional fields `partition` (array of block sizes), `scale` (array of
/// exact scalar strings), `svg` (bool), `timing` (bool). `svg_out` may be
/// null; when given and `svg` was requested it receives the figure.
#[no_mangle]
pub unsafe extern "C" fn ec_run_disks(
    m: *const EcMatrix,
    options_json: *const c_char,
    report_out: *mut *mut c_char,
    svg_out: *mut *mut c_char,
    exit_out: *mut u8,
) -> EcStatus {
    guarded("ec_run_disks", || {
        if m.is_null() {
            set_error("matrix handle is null");
            return Err(EcStatus::EcNullArgument);
        }
        let opts: FfiDisksOptions = parse_options(options_str(options_json)?)?;
        let mut scale = None;
        if let Some(xs) = &opts.scale {
            let mut parsed = Vec::with_capacity(xs.len());
            for x in xs {
                match parse_decimal(x) {
                    Ok(q) => parsed.push(q),
                    Err(e) => {
                        set_error(&format!("scale entry: {e}"));
                        return Err(EcStatus::EcBadOptions);
                    }
                }
            }
            scale = Some(parsed);
        }
        let out = driver::run_disks(
            &(*m).0,
            &DisksOptions {
                partition: opts.partition.clone(),
                scale,
                svg: opts.svg,
                timing: opts.timing,
            },
        );
        Ok(deliver(out, report_out, svg_out, exit_out))
    })
}

/// Cone domination verdict. Options: `k` (split index), `r` (exact scalar
/// string), `exact` (bool), `timing` (bool).
#[no_mangle]
pub unsafe extern "C" fn ec_run_dominate(
    m: *const EcMatrix,
    options_json: *const c_char,
    report_out: *mut *mut c_char,
    exit_out: *mut u8,
) -> EcStatus {
    guarded("ec_run_dominate", || {
        if m.is_null() {
            set_error("matrix handle is null");
            return Err(EcStatus::EcNullArgument);
        }
        let opts: FfiDominateOptions = parse_options(options_str(options_json)?)?;
        let r = parse_rat_opt(&opts.r, "r")?;
        let out = driver::run_dominate(
            &(*m).0,
            &DominateOptions { k: opts.k, r, exact: opts.exact, timing: opts.timing },
        );
        Ok(deliver(out, report_out, ptr::null_mut(), exit_out))
    })
}

/// Annulus localization. Options: `mode` ("single", "block", "gersch"),
/// `k`, `shift` ("re" or ["re","im"]), `optimize_r`, `svg`, `timing`.
#[no_mangle]
pub unsafe extern "C" fn ec_run_localize(
    m: *const EcMatrix,
    options_json: *const c_char,
    report_out: *mut *mut c_char,
    svg_out: *mut *mut c_char,
    exit_out: *mut u8,
) -> EcStatus {
    guarded("ec_run_localize", || {
        if m.is_null() {
            set_error("matrix handle is null");
            return Err(EcStatus::EcNullArgument);
        }
        let opts: FfiLocalizeOptions = parse_options(options_str(options_json)?)?;
        let mode = match opts.mode.as_deref() {
            None | Some("single") => LocalizeCmdMode::Single,
            Some("block") => LocalizeCmdMode::Block,
            Some("gersch") => LocalizeCmdMode::Gersch,
            Some(other) => {
                set_error(&format!("unknown mode {other:?}; use single, block, or gersch"));
                return Err(EcStatus::EcBadOptions);
            }
        };
        let shift = match &opts.shift {
            None => None,
            Some(ShiftSpec::Real(re)) => {
                Some(QRect::point_real(parse_decimal(re).map_err(|e| {
                    set_error(&format!("shift: {e}"));
                    EcStatus::EcBadOptions
                })?))
            }
            Some(ShiftSpec::Complex([re, im])) => {
                let parse = |s: &str, what: &str| {
                    parse_decimal(s).map_err(|e| {
                        set_error(&format!("{what}: {e}"));
                        EcStatus::EcBadOptions
                    })
                };
                Some(QRect::new(
                    QIv::point(parse(re, "shift (real part)")?),
                    QIv::point(parse(im, "shift (imaginary part)")?),
                ))
            }
        };
        let out = driver::run_localize(
            &(*m).0,
            &LocalizeOptions {
                mode,
                k: opts.k,
                shift,
                optimize_r: opts.optimize_r,
                svg: opts.svg,
                timing: opts.timing,
            },
        );
        Ok(deliver(out, report_out, svg_out, exit_out))
    })
}

/// Product-chain localization over `count` factor handles. Options: `k`,
/// `r`, `timing`.
#[no_mangle]
pub unsafe extern "C" fn ec_run_chain(
    ms: *const *const EcMatrix,
    count: usize,
    options_json: *const c_char,
    report_out: *mut *mut c_char,
    exit_out: *mut u8,
) -> EcStatus {
    guarded("ec_run_chain", || {
        if ms.is_null() && count > 0 {
            set_error("matrix handle array is null");
            return Err(EcStatus::EcNullArgument);
        }
        let mut inputs = Vec::with_capacity(count);
        for i in 0..count {
            let p = *ms.add(i);
            if p.is_null() {
                set_error(&format!("matrix handle {i} is null"));
                return Err(EcStatus::EcNullArgument);
            }
            inputs.push((*p).0.clone());
        }
        let opts: FfiChainOptions = parse_options(options_str(options_json)?)?;
        let r = parse_rat_opt(&opts.r, "r")?;
        let out = driver::run_chain(&inputs, &ChainOptions { k: opts.k, r, timing: opts.timing });
        Ok(deliver(out, report_out, ptr::null_mut(), exit_out))
    })
}
