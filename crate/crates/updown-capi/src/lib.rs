//! C ABI over the core crate: opaque algebra handles, JSON strings in
//! and out, and a status code per call. Every returned string is owned
//! by the caller and released with `ud_string_free`; failure details
//! are fetched with `ud_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use updown::axioms::{check_algebra, CheckMode};
use updown::homs::{canonical_representation, Decision};
use updown::{json, lab, Error, FiniteAlgebra, Limits};

/// Result of a C call. `UD_STATUS_FAIL` is a successful run with a
/// negative verdict (an axiom fails, a non-member); `UD_STATUS_ERROR`
/// means the call itself failed and `ud_last_error` explains why.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UdStatus {
    Ok = 0,
    Fail = 1,
    Error = 2,
}

/// An opaque finite algebra handle.
pub struct UdAlgebra {
    inner: FiniteAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember_error(message: &str) {
    let message = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error text").expect("no interior NUL"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

/// The error text of the most recent failing call on this thread. The
/// pointer stays valid until the next failing call on the same thread;
/// never free it.
#[no_mangle]
pub extern "C" fn ud_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn text_argument<'a>(text: *const c_char, what: &str) -> Result<&'a str, Error> {
    if text.is_null() {
        return Err(Error::Parse(format!("{what} is NULL")));
    }
    unsafe { CStr::from_ptr(text) }
        .to_str()
        .map_err(|_| Error::Parse(format!("{what} is not UTF-8")))
}

fn handle_argument<'a>(alg: *const UdAlgebra) -> Result<&'a FiniteAlgebra, Error> {
    if alg.is_null() {
        return Err(Error::Parse("algebra handle is NULL".into()));
    }
    Ok(unsafe { &(*alg).inner })
}

fn new_handle(build: impl FnOnce() -> Result<FiniteAlgebra, Error>) -> *mut UdAlgebra {
    let outcome = catch_unwind(AssertUnwindSafe(build));
    match outcome {
        Ok(Ok(inner)) => Box::into_raw(Box::new(UdAlgebra { inner })),
        Ok(Err(err)) => {
            remember_error(&err.to_string());
            ptr::null_mut()
        }
        Err(_) => {
            remember_error("internal panic");
            ptr::null_mut()
        }
    }
}

/// Parses an algebra document. Returns NULL on error.
#[no_mangle]
pub extern "C" fn ud_algebra_from_json(text: *const c_char) -> *mut UdAlgebra {
    new_handle(|| json::algebra_from_json(text_argument(text, "algebra JSON")?))
}

/// Looks up a built-in example by name. Returns NULL on error.
#[no_mangle]
pub extern "C" fn ud_algebra_fixture(name: *const c_char) -> *mut UdAlgebra {
    new_handle(|| Ok(lab::fixture(text_argument(name, "fixture name")?)?.0))
}

/// Releases an algebra handle; NULL is accepted and ignored.
#[no_mangle]
pub extern "C" fn ud_algebra_free(alg: *mut UdAlgebra) {
    if !alg.is_null() {
        drop(unsafe { Box::from_raw(alg) });
    }
}

/// Emits the algebra as its JSON document. Returns NULL on error.
#[no_mangle]
pub extern "C" fn ud_algebra_to_json(alg: *const UdAlgebra) -> *mut c_char {
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<CString, Error> {
        let text = json::algebra_to_json(handle_argument(alg)?);
        CString::new(text).map_err(|_| Error::Parse("document contains NUL".into()))
    }));
    match outcome {
        Ok(Ok(text)) => text.into_raw(),
        Ok(Err(err)) => {
            remember_error(&err.to_string());
            ptr::null_mut()
        }
        Err(_) => {
            remember_error("internal panic");
            ptr::null_mut()
        }
    }
}

fn report_call(
    alg: *const UdAlgebra,
    out: *mut *mut c_char,
    run: impl FnOnce(&FiniteAlgebra) -> Result<(String, bool), Error>,
) -> UdStatus {
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<(String, bool), Error> {
        if out.is_null() {
            return Err(Error::Parse("output pointer is NULL".into()));
        }
        run(handle_argument(alg)?)
    }));
    match outcome {
        Ok(Ok((text, pass))) => {
            let text = match CString::new(text) {
                Ok(text) => text,
                Err(_) => {
                    remember_error("document contains NUL");
                    return UdStatus::Error;
                }
            };
            unsafe { *out = text.into_raw() };
            if pass {
                UdStatus::Ok
            } else {
                UdStatus::Fail
            }
        }
        Ok(Err(err)) => {
            remember_error(&err.to_string());
            UdStatus::Error
        }
        Err(_) => {
            remember_error("internal panic");
            UdStatus::Error
        }
    }
}

/// Checks the standard axiom system and writes the report document to
/// `*out_report`. OK when every axiom passes, FAIL when one fails.
#[no_mangle]
pub extern "C" fn ud_check_json(alg: *const UdAlgebra, out_report: *mut *mut c_char) -> UdStatus {
    report_call(alg, out_report, |alg| {
        let report = check_algebra(alg, CheckMode::Standard, &Limits::default())?;
        Ok((json::report_to_json(&report), report.all_pass()))
    })
}

/// Decides membership and writes the decision document to
/// `*out_decision`. OK for a member, FAIL for a non-member.
#[no_mangle]
pub extern "C" fn ud_decide_json(
    alg: *const UdAlgebra,
    out_decision: *mut *mut c_char,
) -> UdStatus {
    report_call(alg, out_decision, |alg| {
        let decision = canonical_representation(alg, &Limits::default())?;
        let member = matches!(decision, Decision::Member(_));
        Ok((json::decision_to_json(&decision), member))
    })
}

/// Releases a string returned by this library; NULL is accepted and
/// ignored.
#[no_mangle]
pub extern "C" fn ud_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn own(text: *mut c_char) -> String {
        assert!(!text.is_null());
        let owned = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
        ud_string_free(text);
        owned
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(ud_last_error()) }.to_str().unwrap().to_string()
    }

    const MERGE_DOC: &str = "{\"kind\":\"action\",\"C\":[\"c\",\"d\",\"e\"],\"S\":[\"s\",\"t\"],\
         \"act\":{\"c\":{\"s\":\"c\",\"t\":\"d\"},\"d\":{\"s\":\"c\",\"t\":\"d\"},\
         \"e\":{\"s\":\"e\",\"t\":\"e\"}}}";

    #[test]
    fn parse_check_and_emit_round_trip() {
        let doc = CString::new(MERGE_DOC).unwrap();
        let alg = ud_algebra_from_json(doc.as_ptr());
        assert!(!alg.is_null());

        assert_eq!(own(ud_algebra_to_json(alg)), MERGE_DOC);

        let mut report: *mut c_char = ptr::null_mut();
        assert_eq!(ud_check_json(alg, &mut report), UdStatus::Fail);
        let report = own(report);
        assert!(report.contains("\"axiom\":\"SL\",\"verdict\":\"fail\""), "{report}");

        let mut decision: *mut c_char = ptr::null_mut();
        assert_eq!(ud_decide_json(alg, &mut decision), UdStatus::Fail);
        assert_eq!(own(decision), "{\"member\":false,\"unseparated\":[\"c\",\"d\"]}");

        ud_algebra_free(alg);
    }

    #[test]
    fn fixtures_resolve_by_name() {
        let name = CString::new("facts-updown").unwrap();
        let alg = ud_algebra_fixture(name.as_ptr());
        assert!(!alg.is_null());
        let mut decision: *mut c_char = ptr::null_mut();
        assert_eq!(ud_decide_json(alg, &mut decision), UdStatus::Ok);
        assert!(own(decision).starts_with("{\"member\":true"));
        ud_algebra_free(alg);

        let unknown = CString::new("no-such").unwrap();
        assert!(ud_algebra_fixture(unknown.as_ptr()).is_null());
        assert!(last_error().contains("unknown fixture"));
    }

    #[test]
    fn null_and_malformed_arguments_report_errors() {
        assert!(ud_algebra_from_json(ptr::null()).is_null());
        assert!(last_error().contains("NULL"));

        let garbage = CString::new("{\"kind\":\"action\"").unwrap();
        assert!(ud_algebra_from_json(garbage.as_ptr()).is_null());

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(ud_check_json(ptr::null(), &mut out), UdStatus::Error);
        assert!(out.is_null(), "no report on error");
        assert!(ud_algebra_to_json(ptr::null()).is_null());

        ud_algebra_free(ptr::null_mut());
        ud_string_free(ptr::null_mut());
    }

    #[test]
    fn generated_header_declares_the_surface() {
        let header =
            std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/updown.h"))
                .expect("the build script writes the header");
        for name in [
            "UdStatus",
            "UdAlgebra",
            "ud_algebra_from_json",
            "ud_algebra_fixture",
            "ud_algebra_free",
            "ud_algebra_to_json",
            "ud_check_json",
            "ud_decide_json",
            "ud_string_free",
            "ud_last_error",
        ] {
            assert!(header.contains(name), "missing {name}");
        }
    }
}
