//! C interface to the strandnet enumerator.
//!
//! A network is built from input text into an opaque `SnNetwork` handle,
//! queried or rendered, and released with `sn_network_free`. Functions
//! return an `SnStatus`; details of the most recent failure on the calling
//! thread are available from `sn_last_error`. Strings handed out by the
//! library must be released with `sn_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use strandnet::run::{self, Format, RunError};
use strandnet::{condense, enumerate, io, CondensedNetwork, EnumConfig, ReactionNetwork};

/// Result codes. The first four match the command-line exit status.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnStatus {
    Ok = 0,
    InputError = 1,
    /// The network was built but enumeration stopped at a limit.
    Truncated = 2,
    NumericalError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    InvalidArgument = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnFormat {
    Crn = 0,
    Json = 1,
    Dot = 2,
    Sbml = 3,
}

impl From<SnFormat> for Format {
    fn from(f: SnFormat) -> Format {
        match f {
            SnFormat::Crn => Format::Crn,
            SnFormat::Json => Format::Json,
            SnFormat::Dot => Format::Dot,
            SnFormat::Sbml => Format::Sbml,
        }
    }
}

/// Opaque network handle.
pub struct SnNetwork {
    network: ReactionNetwork,
    condensed: Option<CondensedNetwork>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> SnStatus) -> SnStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            SnStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SnStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(SnStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        SnStatus::InvalidUtf8
    })
}

fn status_of(e: &RunError) -> SnStatus {
    match e.exit_code() {
        3 => SnStatus::NumericalError,
        _ => SnStatus::InputError,
    }
}

fn build(input: &str, condense_it: bool) -> Result<SnNetwork, RunError> {
    let spec = io::parse_input(input).map_err(RunError::Input)?;
    let mut cfg = EnumConfig::default();
    spec.apply_settings(&mut cfg).map_err(RunError::Input)?;
    let network = enumerate::enumerate(&spec.complexes, &cfg).map_err(RunError::Enumerate)?;
    let condensed = if condense_it {
        Some(condense::condense(&network).map_err(RunError::Condense)?)
    } else {
        None
    };
    Ok(SnNetwork { network, condensed })
}

/// Parses `input`, enumerates its network and, if `condense` is true,
/// condenses it. On `SN_STATUS_OK` or `SN_STATUS_TRUNCATED` a new handle is
/// stored in `*out`; otherwise `*out` is set to null.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sn_network_build(
    input: *const c_char,
    condense: bool,
    out: *mut *mut SnNetwork,
) -> SnStatus {
    guard(|| {
        clear_error();
        if out.is_null() {
            set_error("null output pointer");
            return SnStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(input) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match build(text, condense) {
            Ok(handle) => {
                let truncated = handle.network.truncated;
                *out = Box::into_raw(Box::new(handle));
                if truncated {
                    set_error("enumeration stopped at a limit");
                    SnStatus::Truncated
                } else {
                    SnStatus::Ok
                }
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Renders the network (or its condensation, if it was built with one).
/// `rates` adds rate constants to CRN output. The string stored in `*out`
/// must be released with `sn_string_free`.
///
/// # Safety
/// `net` must come from `sn_network_build`; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sn_network_render(
    net: *const SnNetwork,
    format: SnFormat,
    rates: bool,
    out: *mut *mut c_char,
) -> SnStatus {
    guard(|| {
        clear_error();
        if net.is_null() || out.is_null() {
            set_error("null argument");
            return SnStatus::NullPointer;
        }
        let net = &*net;
        let text = run::render(&net.network, net.condensed.as_ref(), format.into(), rates);
        match CString::new(text) {
            Ok(c) => {
                *out = c.into_raw();
                SnStatus::Ok
            }
            Err(_) => {
                set_error("output contains a NUL byte");
                SnStatus::InvalidArgument
            }
        }
    })
}

/// Number of complexes in the detailed network; 0 for a null handle.
///
/// # Safety
/// `net` must be null or come from `sn_network_build`.
#[no_mangle]
pub unsafe extern "C" fn sn_network_complex_count(net: *const SnNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.network.complexes.len())
}

/// Number of detailed reactions; 0 for a null handle.
///
/// # Safety
/// `net` must be null or come from `sn_network_build`.
#[no_mangle]
pub unsafe extern "C" fn sn_network_reaction_count(net: *const SnNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.network.reactions.len())
}

/// Number of condensed reactions, or 0 if the network was not condensed.
///
/// # Safety
/// `net` must be null or come from `sn_network_build`.
#[no_mangle]
pub unsafe extern "C" fn sn_network_condensed_reaction_count(net: *const SnNetwork) -> usize {
    net.as_ref()
        .and_then(|n| n.condensed.as_ref())
        .map_or(0, |c| c.reactions.len())
}

/// Whether enumeration stopped at a limit.
///
/// # Safety
/// `net` must be null or come from `sn_network_build`.
#[no_mangle]
pub unsafe extern "C" fn sn_network_truncated(net: *const SnNetwork) -> bool {
    net.as_ref().is_some_and(|n| n.network.truncated)
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `net` must be null or come from `sn_network_build`, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sn_network_free(net: *mut SnNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
