//! Complex log-Gamma on the principal branch.
//!
//! Lanczos approximation (g = 607/128, 15 terms) for `Re z >= 1/2`. For
//! `Re z < 1/2` the argument is shifted upward with
//! `lnΓ(z) = lnΓ(z + m) - Σ ln(z + j)`, which holds term by term on the
//! principal branch and so needs no branch correction.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::scaled::ScaledComplex;
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let mut a = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    HALF_LN_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

fn check_pole(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::GammaPole(z.re as i64));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite Gamma argument {z}")));
    }
    Ok(())
}

/// Principal branch of `ln Γ(z)`.
pub fn complex_log_gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    if z.re >= 0.5 {
        return Ok(lanczos_ln_gamma(z));
    }
    let shift = (0.5 - z.re).ceil() as usize;
    let mut correction = Complex64::new(0.0, 0.0);
    for j in 0..shift {
        correction += (z + j as f64).ln();
    }
    Ok(lanczos_ln_gamma(z + shift as f64) - correction)
}

pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    Ok(complex_log_gamma(z)?.exp())
}

/// `Γ(z)` in extended-exponent form.
pub fn gamma_scaled(z: Complex64) -> Result<ScaledComplex> {
    Ok(ScaledComplex::from_log(complex_log_gamma(z)?))
}

/// `ln cosh(x)` for real `x`, accurate for large `|x|`.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `Γ(1/2 + iy) / cosh(πy)`, the weight shared by `ψₙ` and `Qₙ`.
pub fn gamma_half_over_cosh(y: f64) -> Complex64 {
    let lg = lanczos_ln_gamma(Complex64::new(0.5, y));
    (lg - ln_cosh(PI * y)).exp()
}
