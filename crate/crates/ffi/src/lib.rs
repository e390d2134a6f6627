//! C interface to `finlat`.
//!
//! Posets and lattices are parsed from the library's text format into
//! opaque handles. Every function returns an [`FlStatus`]; results go
//! through out-pointers. After a failure, `fl_last_error` returns the message.
//! Strings handed to the caller must be released with `fl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use finlat::{Caps, Error, Lattice, Poset};

/// Result codes. The nonzero codes match the `finlat` command's exit codes
/// where one exists.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlStatus {
    Ok = 0,
    NotALattice = 1,
    InvalidInput = 2,
    PreconditionFailed = 3,
    CapExceeded = 4,
    Certificate = 5,
    NullPointer = 6,
    Panic = 7,
}

/// A validated finite poset.
pub struct FlPoset(Poset);

/// A validated finite lattice.
pub struct FlLattice(Lattice);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FlStatus {
    match e {
        Error::NotALattice { .. } | Error::EmptyPoset => FlStatus::NotALattice,
        Error::PreconditionFailed(_) => FlStatus::PreconditionFailed,
        Error::CapExceeded { .. } => FlStatus::CapExceeded,
        e if e.is_certificate() => FlStatus::Certificate,
        _ => FlStatus::InvalidInput,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FlStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            FlStatus::NullPointer
        }
        Err(_) => {
            set_error("internal panic".into());
            FlStatus::Panic
        }
    }
}

unsafe fn text_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure::Lib(Error::Parse {
            line: 0,
            message: format!("{what} is not valid UTF-8"),
        })
    })
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    out.write(value);
    Ok(())
}

/// Parses a poset from text. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_poset_parse(text: *const c_char, out: *mut *mut FlPoset) -> FlStatus {
    guard(|| {
        let p = finlat::text::parse_poset(text_arg(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(FlPoset(p))))
    })
}

/// # Safety
/// `p` must come from `fl_poset_parse` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fl_poset_free(p: *mut FlPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses a lattice from text. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_lattice_parse(text: *const c_char, out: *mut *mut FlLattice) -> FlStatus {
    guard(|| {
        let l = finlat::text::parse_lattice(text_arg(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(FlLattice(l))))
    })
}

/// # Safety
/// `l` must come from `fl_lattice_parse` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fl_lattice_free(l: *mut FlLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Number of elements.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fl_poset_len(p: *const FlPoset, out: *mut usize) -> FlStatus {
    guard(|| write_out(out, handle(p, "poset")?.0.len()))
}

/// Number of up-sets.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fl_poset_upset_count(p: *const FlPoset, out: *mut usize) -> FlStatus {
    guard(|| {
        let n = handle(p, "poset")?.0.count_upsets(&Caps::default())?;
        write_out(out, n)
    })
}

/// All up-sets, one `{a,b}` label per line, in enumeration order. Release
/// the string with `fl_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fl_poset_upsets(p: *const FlPoset, out: *mut *mut c_char) -> FlStatus {
    guard(|| {
        let x = &handle(p, "poset")?.0;
        let mut text = String::new();
        for u in x.all_upsets(&Caps::default())? {
            text.push_str(&u.label(x));
            text.push('\n');
        }
        write_out(out, CString::new(text).expect("labels have no nul").into_raw())
    })
}

/// Number of elements.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fl_lattice_len(l: *const FlLattice, out: *mut usize) -> FlStatus {
    guard(|| write_out(out, handle(l, "lattice")?.0.len()))
}

/// Whether the lattice is distributive.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fl_lattice_is_distributive(l: *const FlLattice, out: *mut bool) -> FlStatus {
    guard(|| write_out(out, handle(l, "lattice")?.0.is_distributive().holds()))
}

/// Whether the lattice is isomorphic to the up-sets of its meet-irreducibles.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fl_lattice_is_representable(l: *const FlLattice, out: *mut bool) -> FlStatus {
    guard(|| {
        let rep = finlat::represents(&handle(l, "lattice")?.0, &Caps::default())?;
        write_out(out, rep.is_representable())
    })
}

/// Whether `l0` embeds into `l` keeping meets, joins, bottom and top. Both
/// must be representable.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fl_decide_embedding(
    l0: *const FlLattice,
    l: *const FlLattice,
    out: *mut bool,
) -> FlStatus {
    guard(|| {
        let v = finlat::decide_embedding(&handle(l0, "l0")?.0, &handle(l, "l")?.0, &Caps::default())?;
        write_out(out, v.embeds())
    })
}

/// Number of monotonic-operator classes on the meet-irreducibles of a
/// distributive lattice.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fl_class_count(l: *const FlLattice, out: *mut usize) -> FlStatus {
    guard(|| {
        let h = finlat::class_lattice(&handle(l, "lattice")?.0, &Caps::default(), false)?;
        write_out(out, h.len())
    })
}

/// Message for the last failure on this thread, or null. Release with
/// `fl_string_free`.
#[no_mangle]
pub extern "C" fn fl_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_follow_exit_codes() {
        let cap = Error::CapExceeded {
            what: "poset size",
            limit: 1,
            actual: 2,
        };
        assert_eq!(status_of(&cap) as i32, 4);
        assert_eq!(status_of(&Error::EmptyPoset) as i32, 1);
        assert_eq!(status_of(&Error::PreconditionFailed(String::new())) as i32, 3);
        assert_eq!(status_of(&Error::InternalDisagreement(String::new())) as i32, 5);
        assert_eq!(status_of(&Error::CarrierMismatch) as i32, 2);
    }

    #[test]
    fn panics_become_a_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, FlStatus::Panic);
        let msg = fl_last_error();
        assert!(!msg.is_null());
        unsafe { fl_string_free(msg) };
    }
}
