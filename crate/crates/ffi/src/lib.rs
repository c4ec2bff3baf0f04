//! C ABI over `twistlab`.
//!
//! Every function returns a [`TwlStatus`]; on failure the message is kept
//! per thread and read back with [`twl_last_error_message`]. Objects cross
//! the boundary as opaque handles that the caller frees with the matching
//! `*_free` function. Strings returned through `char **` are owned by the
//! caller and released with [`twl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twistlab::cli::{self, Cli};
use twistlab::fintwist;
use twistlab::grouplab::FinGroup;
use twistlab::ncpoly::{normal_form, parse_expr, Presentation};
use twistlab::spectra::{self, Verdict};
use twistlab::{qgroup, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    UnknownGenerator = 4,
    InvalidArgument = 5,
    NotBicharacter = 6,
    Algebra = 7,
    Io = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwlPresentationKind {
    /// Generators `bs, b, a, as`.
    Qtriag = 0,
    /// Generators `Mb, Ma, Phb, Pha`.
    Polar = 1,
}

pub struct TwlPresentation {
    inner: Presentation,
}

pub struct TwlFinGroup {
    inner: FinGroup,
}

pub struct TwlReport {
    inner: cli::Report,
}

/// Named residuals of the finite twisting suite.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TwlFintwistResiduals {
    pub omega_unitarity: f64,
    pub cocycle: f64,
    pub coassoc: f64,
    pub haar_left: f64,
    pub haar_right: f64,
    pub pentagon: f64,
    pub pentagon_twisted: f64,
    pub corrupted_cocycle: f64,
    pub corrupted_pentagon: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TwlSpectrum {
    pub ratio: f64,
    pub ratio_residual: f64,
    pub min_eigenvalue: f64,
    pub strictly_decreasing: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> TwlStatus {
    match e {
        Error::Syntax { .. } => TwlStatus::Syntax,
        Error::UnknownGenerator(_) => TwlStatus::UnknownGenerator,
        Error::InvalidArgument(_) | Error::InvalidGroup(_) | Error::DomainMismatch(_) => {
            TwlStatus::InvalidArgument
        }
        Error::NotBicharacter(_) => TwlStatus::NotBicharacter,
        Error::Io(_) | Error::Json(_) => TwlStatus::Io,
        _ => TwlStatus::Algebra,
    }
}

/// Run `f`, translating errors and panics into a status and the
/// thread-local message.
fn guard(f: impl FnOnce() -> Result<(), (TwlStatus, String)>) -> TwlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TwlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TwlStatus::Panic
        }
    }
}

fn lib(e: Error) -> (TwlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TwlStatus, String) {
    (TwlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TwlStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TwlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (TwlStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn twl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Length in bytes of the last error message on this thread, without the
/// terminator; 0 when there is none.
#[no_mangle]
pub extern "C" fn twl_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |s| s.as_bytes().len()))
}

/// Copy the last error message into `buf` (capacity `len`, including the
/// terminator). Returns the number of bytes written without the terminator,
/// or -1 when `buf` is null or too small.
///
/// # Safety
/// `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn twl_last_error_message(buf: *mut c_char, len: usize) -> i64 {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let msg = e.as_ref().map_or(&b""[..], |s| s.as_bytes());
        if buf.is_null() || len < msg.len() + 1 {
            return -1;
        }
        ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), msg.len());
        *buf.add(msg.len()) = 0;
        msg.len() as i64
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn twl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn twl_presentation_new(
    kind: TwlPresentationKind,
    out: *mut *mut TwlPresentation,
) -> TwlStatus {
    guard(|| {
        let inner = match kind {
            TwlPresentationKind::Qtriag => qgroup::qtriag_presentation(),
            TwlPresentationKind::Polar => qgroup::polar_presentation(),
        };
        write_out(out, Box::into_raw(Box::new(TwlPresentation { inner })))
    })
}

/// # Safety
/// `p` must come from [`twl_presentation_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn twl_presentation_free(p: *mut TwlPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parse `expr` and write its normal form, printed in the same grammar.
///
/// # Safety
/// `p` must be a live handle, `expr` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn twl_normal_form(
    p: *const TwlPresentation,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> TwlStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("presentation"))?;
        let text = read_str(expr, "expression")?;
        let e = parse_expr(text, &p.inner).map_err(lib)?;
        let nf = normal_form(&e, &p.inner).map_err(lib)?;
        let printed = nf.display(&p.inner).to_string();
        write_out(out, to_c_string(printed))
    })
}

/// The q-commutation scalar derived from the polar relations, printed.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn twl_derive_q(out: *mut *mut c_char) -> TwlStatus {
    guard(|| {
        let q = qgroup::derive_q_from_polar().map_err(lib)?;
        write_out(out, to_c_string(q.to_string()))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn twl_fingroup_new(n: u64, out: *mut *mut TwlFinGroup) -> TwlStatus {
    guard(|| {
        let inner = FinGroup::new(n).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(TwlFinGroup { inner })))
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn twl_fingroup_order(g: *const TwlFinGroup, out: *mut usize) -> TwlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("group"))?;
        write_out(out, g.inner.order())
    })
}

/// # Safety
/// `g` must come from [`twl_fingroup_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn twl_fingroup_free(g: *mut TwlFinGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Run the finite twisting suite with a named bicharacter (`trivial`,
/// `i^{ab}` or `zeta^{ab}`).
///
/// # Safety
/// `g` must be a live handle, `bichar` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn twl_fintwist_run(
    g: *const TwlFinGroup,
    bichar: *const c_char,
    seed: u64,
    out: *mut TwlFintwistResiduals,
) -> TwlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("group"))?;
        let name = read_str(bichar, "bicharacter name")?;
        let psi = cli::parse_finite_bichar(name, &g.inner).map_err(lib)?;
        let r = fintwist::run_suite(&g.inner, &psi, seed).map_err(lib)?;
        write_out(
            out,
            TwlFintwistResiduals {
                omega_unitarity: r.omega_unitarity,
                cocycle: r.cocycle,
                coassoc: r.coassoc,
                haar_left: r.haar_left,
                haar_right: r.haar_right,
                pentagon: r.pentagon.frobenius,
                pentagon_twisted: r.pentagon_twisted.frobenius,
                corrupted_cocycle: r.corrupted_cocycle,
                corrupted_pentagon: r.corrupted_pentagon.frobenius,
            },
        )
    })
}

/// Spectrum summary of the truncated modular element at radius `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn twl_spectrum(x: f64, n: usize, out: *mut TwlSpectrum) -> TwlStatus {
    guard(|| {
        let m = spectra::build_modular(x, n).map_err(lib)?;
        let r = spectra::spectrum_report(&m).map_err(lib)?;
        write_out(
            out,
            TwlSpectrum {
                ratio: r.ratio,
                ratio_residual: r.ratio_residual,
                min_eigenvalue: r.spectrum.iter().copied().fold(f64::INFINITY, f64::min),
                strictly_decreasing: r.strictly_decreasing,
            },
        )
    })
}

/// Writes `true` when the point spectra for `x` and `y` differ.
///
/// # Safety
/// `out_distinct` must be writable.
#[no_mangle]
pub unsafe extern "C" fn twl_witness(x: f64, y: f64, out_distinct: *mut bool) -> TwlStatus {
    guard(|| {
        let w = spectra::nonisomorphism_witness(x, y).map_err(lib)?;
        write_out(out_distinct, w.verdict == Verdict::Distinct)
    })
}

/// Run a command-line invocation (without the program name), e.g.
/// `{"spectrum", "--x", "0.1"}`. A report is produced even when the checks
/// fail; only argument errors return a non-OK status.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn twl_run(
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut TwlReport,
) -> TwlStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let mut args = vec!["twistlab".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i), "argument")?.to_string());
        }
        let parsed = Cli::parse_args(&args).map_err(|e| (TwlStatus::InvalidArgument, e))?;
        let inner = cli::run(&parsed.command, parsed.seed);
        write_out(out, Box::into_raw(Box::new(TwlReport { inner })))
    })
}

/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn twl_report_pass(r: *const TwlReport, out: *mut bool) -> TwlStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        write_out(out, r.inner.pass)
    })
}

/// The report as JSON with sorted keys.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn twl_report_json(r: *const TwlReport, out: *mut *mut c_char) -> TwlStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        write_out(out, to_c_string(r.inner.to_json()))
    })
}

/// # Safety
/// `r` must come from [`twl_run`] or be null.
#[no_mangle]
pub unsafe extern "C" fn twl_report_free(r: *mut TwlReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
