//! C ABI over the hypermono library.
//!
//! Every fallible function returns an [`HmStatus`]; on failure a message is available from
//! [`hm_last_error`] on the same thread. Strings returned through out-parameters are owned
//! by the caller and must be released with [`hm_string_free`]; descriptor handles with
//! [`hm_descriptor_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypermono::chargeom::HypDescriptor;
use hypermono::constructions::{sawin, SawinSide};
use hypermono::splus::{splus_verdict, Primitivity};
use hypermono::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmStatus {
    Ok = 0,
    /// A required pointer argument was null.
    Null = 1,
    /// An input string was not valid UTF-8.
    Utf8 = 2,
    Parse = 3,
    /// The input parsed but violates a hypothesis (overlap, wild order, D <= m, ...).
    Validation = 4,
    /// An enumeration cap or a fixed-width output was exceeded.
    Cap = 5,
    /// The quantity is undefined for this input (p | W, Zsigmondy exception, excluded case).
    Inapplicable = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmPrimitivity {
    Unknown = 0,
    Yes = 1,
    No = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmSawinSide {
    /// Quotient at C = A + B, needs p | A + B.
    C = 0,
    /// Quotient at A, needs p | A.
    A = 1,
}

/// Opaque hypergeometric descriptor.
pub struct HmDescriptor(HypDescriptor);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(HmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let status = match e {
            Error::Parse(_) => HmStatus::Parse,
            Error::CapExceeded(_) => HmStatus::Cap,
            Error::Excluded(_) => HmStatus::Inapplicable,
            _ => HmStatus::Validation,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HmStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            HmStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(HmStatus::Null, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    non_null(p, what)?;
    CStr::from_ptr(p).to_str().map_err(|e| Fail(HmStatus::Utf8, format!("{what}: {e}")))
}

unsafe fn descriptor<'a>(h: *const HmDescriptor) -> Result<&'a HypDescriptor, Fail> {
    non_null(h, "descriptor")?;
    Ok(&(*h).0)
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failed call on this thread, or the empty string. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a descriptor from JSON `{"p": .., "upstairs": [..], "downstairs": [..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_descriptor_from_json(json: *const c_char, out: *mut *mut HmDescriptor) -> HmStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let h = HypDescriptor::from_json_str(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(HmDescriptor(h)));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hm_descriptor_free(h: *mut HmDescriptor) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Writes D, m and W = D - m.
///
/// # Safety
/// `h` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_descriptor_type(h: *const HmDescriptor, d: *mut usize, m: *mut usize, w: *mut usize) -> HmStatus {
    guard(|| {
        let h = descriptor(h)?;
        non_null(d, "d")?;
        non_null(m, "m")?;
        non_null(w, "w")?;
        (*d, *m, *w) = (h.d(), h.m(), h.w());
        Ok(())
    })
}

/// Order p^k of the image of wild inertia, `Inapplicable` when p divides W.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_descriptor_wild_image_order(h: *const HmDescriptor, out: *mut u64) -> HmStatus {
    guard(|| {
        let h = descriptor(h)?;
        non_null(out, "out")?;
        let v = h
            .wild_image_order()
            .ok_or_else(|| Fail(HmStatus::Inapplicable, format!("p = {} divides W = {}", h.p(), h.w())))?;
        *out = v;
        Ok(())
    })
}

/// Least Kummer degree the sheaf is induced from, `Inapplicable` when there is none.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_descriptor_kummer_induced(h: *const HmDescriptor, out: *mut u64) -> HmStatus {
    guard(|| {
        let h = descriptor(h)?;
        non_null(out, "out")?;
        *out = h.kummer_induced().ok_or_else(|| Fail(HmStatus::Inapplicable, "not Kummer induced".into()))?;
        Ok(())
    })
}

/// Full analysis report as pretty-printed JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_descriptor_analyze(h: *const HmDescriptor, out: *mut *mut c_char) -> HmStatus {
    guard(|| {
        let h = descriptor(h)?;
        non_null(out, "out")?;
        *out = to_c_string(format!("{:#}", hypermono::cli::analyze(h)));
        Ok(())
    })
}

/// Whether the S+ theorems guarantee the monodromy, plus the verdict as JSON (`json` may be
/// null when only the flag is wanted).
///
/// # Safety
/// `h` must be a live handle; `guaranteed` must be writable; `json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn hm_splus_verdict(
    h: *const HmDescriptor,
    primitivity: HmPrimitivity,
    guaranteed: *mut bool,
    json: *mut *mut c_char,
) -> HmStatus {
    guard(|| {
        let h = descriptor(h)?;
        non_null(guaranteed, "guaranteed")?;
        let prim = match primitivity {
            HmPrimitivity::Unknown => Primitivity::Unknown,
            HmPrimitivity::Yes => Primitivity::Yes,
            HmPrimitivity::No => Primitivity::No,
        };
        let v = splus_verdict(h, prim);
        *guaranteed = v.is_guaranteed();
        if !json.is_null() {
            *json = to_c_string(format!("{:#}", hypermono::cli::to_value(&v)));
        }
        Ok(())
    })
}

/// Sawin's descriptor for x^A (1-x)^B in characteristic p.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_sawin(a: u64, b: u64, p: u64, side: HmSawinSide, out: *mut *mut HmDescriptor) -> HmStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let side = match side {
            HmSawinSide::C => SawinSide::QuotientAtC,
            HmSawinSide::A => SawinSide::QuotientAtA,
        };
        *out = Box::into_raw(Box::new(HmDescriptor(sawin(a, b, p, side)?)));
        Ok(())
    })
}

/// Least primitive prime divisor of p^k - 1; `Inapplicable` in the Zsigmondy exceptions.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_ppd(p: u64, k: u32, out: *mut u64) -> HmStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = hypermono::gates::ppd(p, k)?
            .ok_or_else(|| Fail(HmStatus::Inapplicable, format!("{p}^{k} - 1 has no primitive prime divisor")))?;
        Ok(())
    })
}

/// Landau's function g(n); `Cap` when the value does not fit in 64 bits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_landau(n: u32, out: *mut u64) -> HmStatus {
    guard(|| {
        non_null(out, "out")?;
        let v = hypermono::gates::landau(n)?;
        *out = u64::try_from(v).map_err(|_| Fail(HmStatus::Cap, format!("landau({n}) exceeds 64 bits")))?;
        Ok(())
    })
}

/// Runs a command-line invocation (`argv[0]` is the program name) and returns the JSON
/// report. When a check inside the command disagrees the report is still written and the
/// call returns `Validation`.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_command(argv: *const *const c_char, argc: usize, out: *mut *mut c_char) -> HmStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        non_null(argv, "argv")?;
        let args = (0..argc).map(|i| read_str(*argv.add(i), "argument")).collect::<Result<Vec<_>, _>>()?;
        let cli = hypermono::cli::parse_args(args)?;
        if cli.out.is_some() {
            return Err(Fail(HmStatus::Validation, "--out is not supported through the C interface".into()));
        }
        let o = hypermono::cli::execute(&cli)?;
        *out = to_c_string(format!("{:#}\n", o.body()));
        match o.failure {
            Some(e) => Err(Fail(HmStatus::Validation, e.to_string())),
            None => Ok(()),
        }
    })
}
