//! C ABI over `trivalent`.
//!
//! Schemes are opaque handles created by `tvl_scheme_parse` or
//! `tvl_scheme_named` and released with `tvl_scheme_free`. Every fallible
//! call returns a [`TvlStatus`]; on failure `tvl_last_error_message` gives a
//! description valid until the next call on the same thread. Strings handed
//! out by the library are released with `tvl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trivalent::{census, classicality, schemes, semantics, syntax, NamedRelation, Scheme};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvlStatus {
    Ok = 0,
    NullPointer = 1,
    /// Scheme, sequent or text could not be parsed.
    ParseError = 2,
    InvalidArgument = 3,
    /// A panic was caught at the boundary.
    Internal = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvlRelation {
    Ss = 0,
    Tt = 1,
    St = 2,
    Ts = 3,
    SsTt = 4,
}

impl From<TvlRelation> for NamedRelation {
    fn from(r: TvlRelation) -> Self {
        match r {
            TvlRelation::Ss => NamedRelation::Ss,
            TvlRelation::Tt => NamedRelation::Tt,
            TvlRelation::St => NamedRelation::St,
            TvlRelation::Ts => NamedRelation::Ts,
            TvlRelation::SsTt => NamedRelation::SsTt,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TvlClassification {
    pub boolean_normal: bool,
    pub monotonic: bool,
    pub truth_collapsible: bool,
    pub falsity_collapsible: bool,
}

/// Opaque scheme handle.
pub struct TvlScheme {
    inner: Scheme,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

/// Clears the error, runs `f`, and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (TvlStatus, String)>) -> TvlStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TvlStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error");
            TvlStatus::Internal
        }
    }
}

fn null() -> (TvlStatus, String) {
    (TvlStatus::NullPointer, "null pointer argument".to_string())
}

/// # Safety
/// `p` is null or a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, (TvlStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| (TvlStatus::InvalidArgument, "string is not UTF-8".to_string()))
}

/// # Safety
/// `p` is null or a live handle from this library.
unsafe fn scheme<'a>(p: *const TvlScheme) -> Result<&'a Scheme, (TvlStatus, String)> {
    p.as_ref().map(|s| &s.inner).ok_or_else(null)
}

fn hand_out(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread; empty after success.
/// Owned by the library.
#[no_mangle]
pub extern "C" fn tvl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a scheme from a name, the text encoding or the JSON form.
///
/// # Safety
/// `text` is a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tvl_scheme_parse(text_ptr: *const c_char, out: *mut *mut TvlScheme) -> TvlStatus {
    guard(|| {
        let t = text(text_ptr)?;
        if out.is_null() {
            return Err(null());
        }
        let inner = schemes::resolve(t).map_err(|e| (TvlStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(TvlScheme { inner }));
        Ok(())
    })
}

/// Looks up `sk`, `wk`, `cantwell` or an alias.
///
/// # Safety
/// As [`tvl_scheme_parse`].
#[no_mangle]
pub unsafe extern "C" fn tvl_scheme_named(name: *const c_char, out: *mut *mut TvlScheme) -> TvlStatus {
    guard(|| {
        let t = text(name)?;
        if out.is_null() {
            return Err(null());
        }
        let inner = schemes::named(t).map_err(|e| (TvlStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(TvlScheme { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tvl_scheme_free(s: *mut TvlScheme) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tvl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the `NEG:..;AND:..;OR:..` encoding to `*out`.
///
/// # Safety
/// `s` is a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tvl_scheme_encode(s: *const TvlScheme, out: *mut *mut c_char) -> TvlStatus {
    guard(|| {
        let sc = scheme(s)?;
        if out.is_null() {
            return Err(null());
        }
        *out = hand_out(sc.encode());
        Ok(())
    })
}

/// # Safety
/// `s` is a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tvl_classify(s: *const TvlScheme, out: *mut TvlClassification) -> TvlStatus {
    guard(|| {
        let c = trivalent::classify(scheme(s)?);
        let out = out.as_mut().ok_or_else(null)?;
        *out = TvlClassification {
            boolean_normal: c.boolean_normal,
            monotonic: c.monotonic,
            truth_collapsible: c.truth_collapsible,
            falsity_collapsible: c.falsity_collapsible,
        };
        Ok(())
    })
}

/// Whether the scheme under `relation` is classical.
///
/// # Safety
/// `s` is a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tvl_decide(s: *const TvlScheme, relation: TvlRelation, out: *mut bool) -> TvlStatus {
    guard(|| {
        let sc = scheme(s)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = classicality::theorem_verdict(&trivalent::classify(sc), relation.into()).0;
        Ok(())
    })
}

/// The full verdict with witness as a JSON string, released with
/// `tvl_string_free`.
///
/// # Safety
/// `s` is a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tvl_decide_json(s: *const TvlScheme, relation: TvlRelation, out: *mut *mut c_char) -> TvlStatus {
    guard(|| {
        let sc = scheme(s)?;
        if out.is_null() {
            return Err(null());
        }
        let verdict = classicality::decide(sc, relation.into());
        let json = serde_json::to_string(&verdict).map_err(|e| (TvlStatus::Internal, e.to_string()))?;
        *out = hand_out(json);
        Ok(())
    })
}

/// Validity of a sequent such as `p, q |- p & q`.
///
/// # Safety
/// `s` is a live handle, `sequent` a NUL-terminated string and `out` a
/// writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tvl_sequent_valid(
    s: *const TvlScheme,
    relation: TvlRelation,
    sequent: *const c_char,
    out: *mut bool,
) -> TvlStatus {
    guard(|| {
        let sc = scheme(s)?;
        let sq = syntax::parse_sequent(text(sequent)?).map_err(|e| (TvlStatus::ParseError, e.to_string()))?;
        let out = out.as_mut().ok_or_else(null)?;
        let rel = NamedRelation::from(relation).relation();
        *out = semantics::sequent_valid(&sq, sc, &rel).map_err(|e| (TvlStatus::InvalidArgument, e.to_string()))?;
        Ok(())
    })
}

/// Number of schemes classical under `relation`.
///
/// # Safety
/// `out` is a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tvl_count_classical(relation: TvlRelation, out: *mut u64) -> TvlStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(null)?;
        *out = census::count_classical(relation.into());
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(tvl_last_error_message()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn round_trip_and_queries() {
        unsafe {
            let mut s: *mut TvlScheme = ptr::null_mut();
            assert_eq!(tvl_scheme_named(c"sk".as_ptr(), &mut s), TvlStatus::Ok);
            let mut enc: *mut c_char = ptr::null_mut();
            assert_eq!(tvl_scheme_encode(s, &mut enc), TvlStatus::Ok);
            assert_eq!(CStr::from_ptr(enc).to_str().unwrap(), "NEG:0n1;AND:1n0nn0000;OR:1111nn1n0");
            tvl_string_free(enc);

            let mut classical = false;
            assert_eq!(tvl_decide(s, TvlRelation::St, &mut classical), TvlStatus::Ok);
            assert!(classical);
            assert_eq!(tvl_decide(s, TvlRelation::Ss, &mut classical), TvlStatus::Ok);
            assert!(!classical);

            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(tvl_decide_json(s, TvlRelation::Ts, &mut json), TvlStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
            assert_eq!(v["witness"]["sequent"], "p |- p");
            tvl_string_free(json);

            let mut valid = true;
            assert_eq!(tvl_sequent_valid(s, TvlRelation::Ts, c"p |- p".as_ptr(), &mut valid), TvlStatus::Ok);
            assert!(!valid);

            let mut c = TvlClassification::default();
            assert_eq!(tvl_classify(s, &mut c), TvlStatus::Ok);
            assert!(c.boolean_normal && c.monotonic && !c.truth_collapsible);
            tvl_scheme_free(s);
        }
    }

    #[test]
    fn counts() {
        let mut n = 0u64;
        let want = [(TvlRelation::Ss, 8192), (TvlRelation::Tt, 8192), (TvlRelation::St, 528), (TvlRelation::Ts, 0), (TvlRelation::SsTt, 0)];
        for (r, expected) in want {
            assert_eq!(unsafe { tvl_count_classical(r, &mut n) }, TvlStatus::Ok);
            assert_eq!(n, expected);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut s: *mut TvlScheme = ptr::null_mut();
            assert_eq!(tvl_scheme_parse(c"NEG:0x1;AND:1n0nn0000;OR:1111nn1n0".as_ptr(), &mut s), TvlStatus::ParseError);
            assert!(s.is_null());
            assert!(last_error().contains('x'), "{}", last_error());
            assert_eq!(tvl_scheme_parse(ptr::null(), &mut s), TvlStatus::NullPointer);
            assert_eq!(tvl_scheme_parse(c"cantwell".as_ptr(), &mut s), TvlStatus::Ok);
            assert!(last_error().is_empty());
            let mut valid = false;
            assert_eq!(tvl_sequent_valid(s, TvlRelation::St, c"p |-- q".as_ptr(), &mut valid), TvlStatus::ParseError);
            assert_eq!(tvl_decide(ptr::null(), TvlRelation::St, &mut valid), TvlStatus::NullPointer);
            tvl_scheme_free(s);
            tvl_scheme_free(ptr::null_mut());
        }
    }
}
