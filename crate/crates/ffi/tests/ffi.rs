use std::ffi::{CStr, CString};
use std::fs;
use std::process::Command;
use std::ptr;

use pole_recovery_ffi::*;

fn last_error() -> String {
    let p = pr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn catalog(f: PrFunction, param: f64) -> *mut PrSamples {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { pr_samples_catalog(f, param, 60, &mut s) },
        PrStatus::Ok
    );
    s
}

#[test]
fn f2_round_trip() {
    unsafe {
        let s = catalog(PrFunction::F2, 0.0);
        assert_eq!(pr_samples_len(s), 61);
        let mut e = ptr::null_mut();
        assert_eq!(pr_recover(s, 0.0, 0.0, &mut e), PrStatus::Ok);
        let (mut zr, mut zi, mut rr, mut ri) = (0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            pr_estimate_get(e, &mut zr, &mut zi, &mut rr, &mut ri),
            PrStatus::Ok
        );
        assert!(
            (zr - 6.2).abs() <= 1e-3 && (zi - 0.15).abs() <= 1e-3,
            "{zr} {zi}"
        );
        assert!((rr - 7.110146).abs() <= 1e-2 * 7.11, "{rr}");
        let mut std = [f64::NAN; 4];
        assert_eq!(pr_estimate_std(e, std.as_mut_ptr()), PrStatus::Ok);
        assert!(std.iter().all(|v| v.is_finite() && *v >= 0.0));

        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(
            pr_interpolate(s, e, 80, 3.0, &mut re, &mut im),
            PrStatus::Ok
        );
        let mut v = ptr::null_mut();
        let (nodes_re, nodes_im) = ([0.0; 0], [0.0; 0]);
        assert_eq!(
            pr_samples_new(nodes_re.as_ptr(), nodes_im.as_ptr(), 0, &mut v),
            PrStatus::InvalidArgument
        );
        let (mut delta, mut m_t) = (0.0, 0);
        assert_eq!(
            pr_reconstruction_delta(s, ptr::null(), 100, &mut delta, &mut m_t),
            PrStatus::Ok
        );
        assert!(delta.is_finite() && m_t <= 100);

        pr_estimate_free(e);
        pr_samples_free(s);
    }
}

#[test]
fn arrays_reproduce_nodes() {
    let re: Vec<f64> = (0..=30).map(|n| 1.0 / (n as f64 + 2.0)).collect();
    let im: Vec<f64> = (0..=30).map(|n| -0.5 / (n as f64 + 3.0)).collect();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            pr_samples_new(re.as_ptr(), im.as_ptr(), re.len(), &mut s),
            PrStatus::Ok
        );
        for n in [0usize, 7, 30] {
            let (mut a, mut b) = (0.0, 0.0);
            assert_eq!(
                pr_interpolate(s, ptr::null(), 60, n as f64, &mut a, &mut b),
                PrStatus::Ok
            );
            assert!(
                (a - re[n]).abs() <= 1e-10 * re[n].abs()
                    && (b - im[n]).abs() <= 1e-10 * im[n].abs()
            );
        }
        pr_samples_free(s);
    }
}

#[test]
fn analytic_input_has_no_pole() {
    unsafe {
        let s = catalog(PrFunction::F1, 5.0);
        let mut e = 1 as *mut PrEstimate;
        assert_eq!(pr_recover(s, 0.0, 0.0, &mut e), PrStatus::NoPole);
        assert!(e.is_null());
        assert!(last_error().contains("analytic"));
        pr_samples_free(s);
    }
}

#[test]
fn noisy_samples_are_seeded() {
    unsafe {
        let s = catalog(PrFunction::F5, 0.0);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pr_samples_perturb(s, 1e-2, 0, &mut a), PrStatus::Ok);
        assert_eq!(pr_samples_perturb(s, 1e-2, 0, &mut b), PrStatus::Ok);
        let mut e = ptr::null_mut();
        assert_eq!(pr_recover(a, 1e-2, 0.0, &mut e), PrStatus::Ok);
        let (mut zr, mut zi, mut rr, mut ri) = (0.0, 0.0, 0.0, 0.0);
        pr_estimate_get(e, &mut zr, &mut zi, &mut rr, &mut ri);
        assert!((zr - 5.2).abs() <= 0.052, "{zr}");
        let (mut x, mut y) = ((0.0, 0.0), (0.0, 0.0));
        pr_interpolate(a, ptr::null(), 40, 2.0, &mut x.0, &mut x.1);
        pr_interpolate(b, ptr::null(), 40, 2.0, &mut y.0, &mut y.1);
        assert_eq!(x, y);
        for p in [s, a, b] {
            pr_samples_free(p);
        }
        pr_estimate_free(e);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            pr_samples_perturb(ptr::null(), 0.1, 0, &mut s),
            PrStatus::NullPointer
        );
        assert!(last_error().contains("samples"));
        assert_eq!(pr_samples_load(ptr::null(), &mut s), PrStatus::NullPointer);

        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.csv");
        fs::write(&bad, "N,re,im\n0,1,x\n").unwrap();
        let path = CString::new(bad.to_str().unwrap()).unwrap();
        assert_eq!(pr_samples_load(path.as_ptr(), &mut s), PrStatus::Parse);
        let missing = CString::new(dir.path().join("none.csv").to_str().unwrap()).unwrap();
        assert_eq!(pr_samples_load(missing.as_ptr(), &mut s), PrStatus::Io);

        // a successful call clears the message
        let good = catalog(PrFunction::F3, 0.0);
        assert!(pr_last_error().is_null());
        pr_samples_free(good);
        pr_samples_free(ptr::null_mut());
        pr_estimate_free(ptr::null_mut());
        assert_eq!(pr_samples_len(ptr::null()), 0);
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(pr_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/pole_recovery.h");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ PrSamples *s = 0; PrStatus st = pr_samples_catalog(PR_FUNCTION_F2, 0.0, 60, &s); pr_samples_free(s); return st == PR_STATUS_OK ? 0 : 1; }}\n"
        ),
    )
    .unwrap();
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(o) = Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&src)
            .output()
        else {
            eprintln!("{cc} not found; skipped");
            continue;
        };
        assert!(
            o.status.success(),
            "{cc}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}
