//! C ABI over the core library. Every function takes NUL-terminated
//! UTF-8 strings, writes a heap-allocated result (or error message)
//! through `out`, and returns a status code aligned with the CLI exit
//! codes: 0 ok, 1 verification failure, 2 cap exceeded, 3 parse error,
//! 4 domain error; -1 flags an internal fault. Release every returned
//! string with `tm_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tamari_maps::cli::{cmd_count, cmd_map, family_members};
use tamari_maps::dot::render_auto;
use tamari_maps::error::parse_err;
use tamari_maps::series::{b_series, f_series, solve_rg};
use tamari_maps::verify::run_suite;
use tamari_maps::Result;

const INTERNAL: i32 = -1;

fn read_str(ptr: *const c_char, what: &str) -> Result<String> {
    if ptr.is_null() {
        return Err(parse_err(format!("{what} is null")));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map(|s| s.to_string())
        .map_err(|_| parse_err(format!("{what} is not UTF-8")))
}

fn deliver(out: *mut *mut c_char, text: String, code: i32) -> i32 {
    if !out.is_null() {
        let c = CString::new(text)
            .unwrap_or_else(|_| CString::new("interior NUL in output").unwrap());
        unsafe { *out = c.into_raw() };
    }
    code
}

fn guarded(out: *mut *mut c_char, f: impl FnOnce() -> Result<(String, i32)>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok((text, code))) => deliver(out, text, code),
        Ok(Err(e)) => deliver(out, e.to_string(), e.exit_code()),
        Err(_) => deliver(out, "internal panic".to_string(), INTERNAL),
    }
}

fn split_params(s: &str) -> Vec<String> {
    s.split_whitespace().map(|t| t.to_string()).collect()
}

fn opt_max(max: i64) -> Option<usize> {
    usize::try_from(max).ok()
}

/// Exact size of a family; `params` is space-separated, `max < 0` keeps
/// the family's default cap.
///
/// # Safety
/// `family` and `params` must be valid NUL-terminated strings; `out`, if
/// non-null, must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tm_count(
    family: *const c_char,
    params: *const c_char,
    max: i64,
    out: *mut *mut c_char,
) -> i32 {
    guarded(out, || {
        let family = read_str(family, "family")?;
        let params = split_params(&read_str(params, "params")?);
        Ok((cmd_count(&family, &params, opt_max(max))?, 0))
    })
}

/// All members of a family, blank-line separated, in canonical form.
///
/// # Safety
/// As for `tm_count`.
#[no_mangle]
pub unsafe extern "C" fn tm_enumerate(
    family: *const c_char,
    params: *const c_char,
    max: i64,
    out: *mut *mut c_char,
) -> i32 {
    guarded(out, || {
        let family = read_str(family, "family")?;
        let params = split_params(&read_str(params, "params")?);
        let blocks = family_members(&family, &params, opt_max(max))?;
        Ok((blocks.join("\n"), 0))
    })
}

/// Image of a serialized object under a transfer map.
///
/// # Safety
/// `bijection` and `input` must be valid NUL-terminated strings; `out` as
/// for `tm_count`.
#[no_mangle]
pub unsafe extern "C" fn tm_map(
    bijection: *const c_char,
    input: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guarded(out, || {
        let bijection = read_str(bijection, "bijection")?;
        let input = read_str(input, "input")?;
        Ok((cmd_map(&bijection, &input)?, 0))
    })
}

/// Runs a verification suite; `out` receives the report text. Returns 0
/// when the suite passes, 1 when it fails, 3 for an unknown suite name.
///
/// # Safety
/// `suite` must be a valid NUL-terminated string; `out` as for `tm_count`.
#[no_mangle]
pub unsafe extern "C" fn tm_verify(
    suite: *const c_char,
    max: i64,
    out: *mut *mut c_char,
) -> i32 {
    guarded(out, || {
        let suite = read_str(suite, "suite")?;
        let report = run_suite(&suite, opt_max(max))?;
        let code = if report.pass { 0 } else { 1 };
        Ok((report.to_string(), code))
    })
}

/// A power series (R, G, F, or B) truncated at total degree `degree`
/// (negative selects the default, 6), one monomial per line.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` as for `tm_count`.
#[no_mangle]
pub unsafe extern "C" fn tm_series(
    name: *const c_char,
    degree: i64,
    out: *mut *mut c_char,
) -> i32 {
    guarded(out, || {
        let name = read_str(name, "name")?;
        let d = opt_max(degree).unwrap_or(6) as u32;
        let s = match name.as_str() {
            "R" => solve_rg(d)?.0,
            "G" => solve_rg(d)?.1,
            "F" => f_series(d)?,
            "B" => b_series(d)?,
            other => return Err(parse_err(format!("unknown series {other:?}"))),
        };
        Ok((s.to_string(), 0))
    })
}

/// DOT text for a serialized object; the format is sniffed.
///
/// # Safety
/// `input` must be a valid NUL-terminated string; `out` as for `tm_count`.
#[no_mangle]
pub unsafe extern "C" fn tm_render(
    input: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guarded(out, || {
        let input = read_str(input, "input")?;
        Ok((render_auto(&input)?, 0))
    })
}

/// Releases a string previously returned through an `out` pointer.
///
/// # Safety
/// `ptr` must be null or a pointer obtained from this library and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(
        f: unsafe extern "C" fn(*const c_char, *const c_char, i64, *mut *mut c_char) -> i32,
        a: &str,
        b: &str,
        max: i64,
    ) -> (i32, String) {
        let a = CString::new(a).unwrap();
        let b = CString::new(b).unwrap();
        let mut out: *mut c_char = std::ptr::null_mut();
        let code = unsafe { f(a.as_ptr(), b.as_ptr(), max, &mut out) };
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { tm_free(out) };
        (code, text)
    }

    #[test]
    fn count_and_codes() {
        assert_eq!(call(tm_count, "G", "1 1", -1), (0, "4".to_string()));
        assert_eq!(call(tm_count, "formulaN", "3", -1), (0, "22".to_string()));
        let (code, msg) = call(tm_count, "nosuch", "", -1);
        assert_eq!(code, 3);
        assert!(msg.contains("unknown family"));
        let (code, _) = call(tm_count, "G", "4 4", -1);
        assert_eq!(code, 2);
        assert_eq!(call(tm_count, "I", "5", 5).0, 0);
    }

    #[test]
    fn map_and_null_handling() {
        let triple = CString::new("EN\nEN\nNE\n").unwrap();
        let name = CString::new("sigma").unwrap();
        let mut out: *mut c_char = std::ptr::null_mut();
        let code = unsafe { tm_map(name.as_ptr(), triple.as_ptr(), &mut out) };
        assert_eq!(code, 0);
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap();
        assert_eq!(text, "1; SE (-0,0)\n");
        unsafe { tm_free(out) };

        let code = unsafe { tm_map(name.as_ptr(), std::ptr::null(), &mut out) };
        assert_eq!(code, 3);
        unsafe { tm_free(out) };
        // a null out pointer only drops the message
        let code = unsafe { tm_map(name.as_ptr(), triple.as_ptr(), std::ptr::null_mut()) };
        assert_eq!(code, 0);
    }

    #[test]
    fn verify_series_render() {
        let suite = CString::new("corollary1").unwrap();
        let mut out: *mut c_char = std::ptr::null_mut();
        let code = unsafe { tm_verify(suite.as_ptr(), 3, &mut out) };
        assert_eq!(code, 0);
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap();
        assert!(text.contains("PASS"));
        unsafe { tm_free(out) };

        let name = CString::new("F").unwrap();
        let code = unsafe { tm_series(name.as_ptr(), 3, &mut out) };
        assert_eq!(code, 0);
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap();
        assert!(text.starts_with("x^1 y^1 z^0: 1"));
        unsafe { tm_free(out) };

        let (code, text) = call(tm_enumerate, "G", "1 0", -1);
        assert_eq!(code, 0);
        assert_eq!(text.split("\n\n").count(), 1);

        let bad = CString::new("gibberish").unwrap();
        let code = unsafe { tm_render(bad.as_ptr(), &mut out) };
        assert_eq!(code, 3);
        unsafe { tm_free(out) };
    }
}
