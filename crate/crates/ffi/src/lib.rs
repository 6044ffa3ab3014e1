//! C interface to `pole_recovery`.
//!
//! Objects are opaque and owned by the caller once returned; release them
//! with the matching `pr_*_free`. Every fallible call returns a
//! [`PrStatus`]; on failure `pr_last_error()` describes what went wrong on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use pole_recovery::recovery::{recover, PoleEstimate, RecoveryConfig};
use pole_recovery::samples::{perturb, sample, NoiseSpec, Pole, SampleSet, TestFunction};
use pole_recovery::validation::{Interpolator, Reconstructor};
use pole_recovery::{Complex64, Error};

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrStatus {
    Ok = 0,
    /// No plateau was found; the input may be analytic.
    NoPole = 1,
    InvalidArgument = 2,
    NullPointer = 3,
    /// Domain, overflow, quadrature or node-on-pole failures.
    Numerical = 4,
    Io = 5,
    Parse = 6,
    Panic = 7,
}

/// Catalog test functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrFunction {
    /// Uses `param` as the exponent q.
    F1 = 1,
    F2 = 2,
    F3 = 3,
    /// Uses `param` as the pole strength eta.
    F4 = 4,
    F5 = 5,
}

/// Sample values at the nodes N = 0..=n0.
pub struct PrSamples(SampleSet);

/// A recovered pole with its residue.
pub struct PrEstimate(PoleEstimate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PrStatus {
    match e {
        Error::NoPoleDetected(_) => PrStatus::NoPole,
        Error::InvalidArgument(_) => PrStatus::InvalidArgument,
        Error::Io(_) => PrStatus::Io,
        Error::Parse(_) | Error::Csv(_) | Error::Json(_) => PrStatus::Parse,
        _ => PrStatus::Numerical,
    }
}

/// Runs `f`, turning errors and panics into a status.
fn guard<F>(f: F) -> PrStatus
where
    F: FnOnce() -> Result<(), (PrStatus, String)>,
{
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PrStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            PrStatus::Panic
        }
    }
}

fn lib<T>(r: pole_recovery::Result<T>) -> Result<T, (PrStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PrStatus, String) {
    (PrStatus::NullPointer, format!("{what} is null"))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PrStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), (PrStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn pr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds samples from `len` values `re[i] + i im[i]`, node i.
///
/// # Safety
/// `re` and `im` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pr_samples_new(
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut PrSamples,
) -> PrStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        let (re, im) = (
            std::slice::from_raw_parts(re, len),
            std::slice::from_raw_parts(im, len),
        );
        let v = re
            .iter()
            .zip(im)
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        let s = lib(SampleSet::from_values(v, 0.0, 0))?;
        put(out, boxed(PrSamples(s)), "out")
    })
}

/// Samples a catalog function at N = 0..=n0. `param` is q for F1 and eta
/// for F4 and is ignored otherwise.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pr_samples_catalog(
    function: PrFunction,
    param: f64,
    n0: usize,
    out: *mut *mut PrSamples,
) -> PrStatus {
    guard(|| {
        let f = match function {
            PrFunction::F1 => TestFunction::f1(param),
            PrFunction::F2 => TestFunction::f2(),
            PrFunction::F3 => TestFunction::f3(),
            PrFunction::F4 => TestFunction::f4(param),
            PrFunction::F5 => TestFunction::f5(),
        };
        let s = lib(sample(&f, n0))?;
        put(out, boxed(PrSamples(s)), "out")
    })
}

/// Reads a `.csv` (`N,re,im`) or `.json` sample file.
///
/// # Safety
/// `path` must be a NUL-terminated UTF-8 string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pr_samples_load(
    path: *const c_char,
    out: *mut *mut PrSamples,
) -> PrStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let p = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| (PrStatus::InvalidArgument, "path is not UTF-8".to_string()))?;
        let s = lib(SampleSet::load(Path::new(p)))?;
        put(out, boxed(PrSamples(s)), "out")
    })
}

/// Multiplies each sample by a seeded factor in [1 - epsilon, 1 + epsilon].
///
/// # Safety
/// `s` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pr_samples_perturb(
    s: *const PrSamples,
    epsilon: f64,
    seed: u64,
    out: *mut *mut PrSamples,
) -> PrStatus {
    guard(|| {
        let s = get(s, "samples")?;
        let p = lib(perturb(&s.0, NoiseSpec::new(epsilon, seed)))?;
        put(out, boxed(PrSamples(p)), "out")
    })
}

/// Number of nodes, n0 + 1. Zero for NULL.
///
/// # Safety
/// `s` must be NULL or come from this library.
#[no_mangle]
pub unsafe extern "C" fn pr_samples_len(s: *const PrSamples) -> usize {
    s.as_ref().map_or(0, |s| s.0.values().len())
}

/// # Safety
/// `s` must be NULL or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pr_samples_free(s: *mut PrSamples) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Recovers the pole. `w_p_percent <= 0` selects the default band for the
/// noise level `epsilon`. Returns `NoPole` when no plateau exists; `out` is
/// then set to NULL.
///
/// # Safety
/// `s` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pr_recover(
    s: *const PrSamples,
    epsilon: f64,
    w_p_percent: f64,
    out: *mut *mut PrEstimate,
) -> PrStatus {
    guard(|| {
        let s = get(s, "samples")?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let mut cfg = RecoveryConfig::for_noise(epsilon);
        if w_p_percent > 0.0 {
            cfg.w_p_percent = w_p_percent;
        }
        let e = lib(recover(&s.0, &cfg).and_then(|r| r.estimate()))?;
        out.write(boxed(PrEstimate(e)));
        Ok(())
    })
}

/// Pole position and residue.
///
/// # Safety
/// `e` must come from this library; the four outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn pr_estimate_get(
    e: *const PrEstimate,
    z_re: *mut f64,
    z_im: *mut f64,
    r_re: *mut f64,
    r_im: *mut f64,
) -> PrStatus {
    guard(|| {
        let e = &get(e, "estimate")?.0;
        put(z_re, e.z_p.re, "z_re")?;
        put(z_im, e.z_p.im, "z_im")?;
        put(r_re, e.r_p.re, "r_re")?;
        put(r_im, e.r_p.im, "r_im")
    })
}

/// Spread of the position and residue ranges, per component.
///
/// # Safety
/// `e` must come from this library; `out` must hold 4 doubles
/// (z re, z im, R re, R im).
#[no_mangle]
pub unsafe extern "C" fn pr_estimate_std(e: *const PrEstimate, out: *mut f64) -> PrStatus {
    guard(|| {
        let e = &get(e, "estimate")?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = [e.z_p_std.0, e.z_p_std.1, e.r_p_std.0, e.r_p_std.1];
        ptr::copy_nonoverlapping(v.as_ptr(), out, 4);
        Ok(())
    })
}

/// # Safety
/// `e` must be NULL or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pr_estimate_free(e: *mut PrEstimate) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

unsafe fn pole_of(e: *const PrEstimate) -> Option<Pole> {
    e.as_ref().map(|e| e.0.pole())
}

/// Reconstructs every sample from the others and reports the relative RMS
/// error at the truncation in `0..=m_max` minimizing it. `e` may be NULL
/// for the analytic form.
///
/// # Safety
/// `s` must come from this library, `e` NULL or from this library; the
/// outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn pr_reconstruction_delta(
    s: *const PrSamples,
    e: *const PrEstimate,
    m_max: usize,
    delta: *mut f64,
    m_t: *mut usize,
) -> PrStatus {
    guard(|| {
        let s = get(s, "samples")?;
        let r = lib(Reconstructor::new(&s.0, m_max).and_then(|r| r.report(pole_of(e), 0..=m_max)))?;
        put(delta, r.delta, "delta")?;
        put(m_t, r.truncation, "m_t")
    })
}

/// Value at real `x` (node N sits at x = N) from the expansion truncated
/// at `m`. `e` may be NULL.
///
/// # Safety
/// As for [`pr_reconstruction_delta`].
#[no_mangle]
pub unsafe extern "C" fn pr_interpolate(
    s: *const PrSamples,
    e: *const PrEstimate,
    m: usize,
    x: f64,
    re: *mut f64,
    im: *mut f64,
) -> PrStatus {
    guard(|| {
        let s = get(s, "samples")?;
        let v = lib(Interpolator::new(&s.0, pole_of(e), m).and_then(|it| it.at(x)))?;
        put(re, v.re, "re")?;
        put(im, v.im, "im")
    })
}
