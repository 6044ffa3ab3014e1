//! Meixner–Pollaczek polynomials `Pₙ = Pₙ^(1/2)`, orthonormal on the real
//! line with weight `1 / cosh(πy)`.
//!
//! Three routes are provided:
//!
//! * the three-term recurrence `(n+1)Pₙ₊₁(w) = 2w Pₙ(w) - n Pₙ₋₁(w)`, used
//!   everywhere in the pipeline;
//! * the terminating hypergeometric sum `iⁿ ₂F₁(-n, 1/2 + iw; 1; 2)`,
//!   evaluated exactly in rational arithmetic (oracle only);
//! * the large-`n` form of `Pₙ(-iz)`, `Re z > 0`.
//!
//! At `w = -iz` with `Re z > 0` the wanted solution is the dominant one, so
//! forward recurrence is stable there.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gamma::complex_log_gamma;
use super::scaled::{frexp1, ScaledComplex};
use crate::error::Result;

const RESCALE_UP: f64 = 1e150;
const RESCALE_DOWN: f64 = 1e-150;

/// `P₀(w), …, P_{n_max}(w)` by forward recurrence in extended-exponent form.
pub fn pollaczek_sequence(n_max: usize, w: Complex64) -> Vec<ScaledComplex> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(ScaledComplex::ONE);
    if n_max == 0 {
        return out;
    }
    // (prev, cur) share the binary exponent `exp`
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    let mut exp: i64 = 0;
    let two_w = 2.0 * w;
    for n in 0..n_max {
        let nf = n as f64;
        let next = (two_w * cur - nf * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.re.abs().max(cur.im.abs());
        if mag > RESCALE_UP || (mag != 0.0 && mag < RESCALE_DOWN) {
            let (_, e) = frexp1(mag);
            let f = super::scaled::ldexp(1.0, -e);
            cur *= f;
            prev *= f;
            exp += e;
        }
        out.push(ScaledComplex::from_parts(cur, exp));
    }
    out
}

/// `Pₙ(w)` by forward recurrence.
pub fn pollaczek_p(n: usize, w: Complex64) -> ScaledComplex {
    pollaczek_sequence(n, w)[n]
}

/// `P₀(y), …, P_{n_max}(y)` for real `y` in plain `f64`.
///
/// Intended for the quadrature range `|y| ≲ 12 + n/4`, where the values stay
/// far from the overflow threshold.
pub fn pollaczek_real_sequence(n_max: usize, y: f64, out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    let mut prev = 0.0;
    let mut cur = 1.0;
    for n in 0..n_max {
        let nf = n as f64;
        let next = (2.0 * y * cur - nf * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
        out.push(cur);
    }
}

#[derive(Clone, Debug)]
struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    fn from_complex(z: Complex64) -> Self {
        GaussianRational {
            re: BigRational::from_float(z.re).expect("finite real part"),
            im: BigRational::from_float(z.im).expect("finite imaginary part"),
        }
    }

    fn mul(&self, other: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn scale(&self, r: &BigRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
}

/// Splits an exact rational into `(m, e)` with `r ≈ m * 2^e`, `m` carrying
/// ~64 significant bits before rounding to `f64`.
fn rational_to_parts(r: &BigRational) -> (f64, i64) {
    if r.is_zero() {
        return (0.0, 0);
    }
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().abs();
    let shift = 64 - (num.bits() as i64 - den.bits() as i64);
    let q: BigInt = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let mut m = q.to_f64().unwrap_or(f64::MAX);
    if negative {
        m = -m;
    }
    debug_assert!(q.sign() != Sign::Minus);
    (m, -shift)
}

fn gaussian_to_scaled(g: &GaussianRational) -> ScaledComplex {
    let (mr, er) = rational_to_parts(&g.re);
    let (mi, ei) = rational_to_parts(&g.im);
    let e = match (mr == 0.0, mi == 0.0) {
        (true, true) => return ScaledComplex::ZERO,
        (true, false) => ei,
        (false, true) => er,
        (false, false) => er.max(ei),
    };
    let re = super::scaled::ldexp(mr, er - e);
    let im = super::scaled::ldexp(mi, ei - e);
    ScaledComplex::from_parts(Complex64::new(re, im), e)
}

/// `Pₙ(w) = iⁿ ₂F₁(-n, 1/2 + iw; 1; 2)` from the terminating series.
///
/// The series cancels heavily for real `w`, so it is summed exactly over the
/// Gaussian rationals (the `f64` input is itself an exact dyadic rational)
/// and rounded once at the end. Meant as an independent check, `n ≤ 60`.
pub fn pollaczek_p_hypergeometric(n: usize, w: Complex64) -> ScaledComplex {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let wq = GaussianRational::from_complex(w);
    // a = 1/2 + i w
    let a = GaussianRational {
        re: half - &wq.im,
        im: wq.re.clone(),
    };
    let mut poch = GaussianRational {
        re: BigRational::one(),
        im: BigRational::zero(),
    };
    // coefficient (-n)_j 2^j / (j!)^2
    let mut coeff = BigRational::one();
    let mut sum = poch.clone();
    for j in 0..n {
        let jq = BigRational::from_integer(BigInt::from(j));
        let shifted = GaussianRational {
            re: &a.re + &jq,
            im: a.im.clone(),
        };
        poch = poch.mul(&shifted);
        let factor = BigRational::new(
            BigInt::from(-(n as i64) + j as i64) * 2,
            BigInt::from((j + 1) * (j + 1)),
        );
        coeff *= factor;
        let term = poch.scale(&coeff);
        sum.re += term.re;
        sum.im += term.im;
    }
    // multiply by i^n == (-i)^(3n)
    gaussian_to_scaled(&sum).rotate_minus_i_pow((3 * n) % 4)
}

/// Leading large-`n` form of `Pₙ(-iz)` for `Re z > 0`:
/// `(-i)ⁿ (2n)^(z - 1/2) / Γ(1/2 + z)`.
pub fn pollaczek_p_asymptotic(n: usize, z: Complex64) -> Result<ScaledComplex> {
    let log_mag = (z - 0.5) * ((2 * n) as f64).ln() - complex_log_gamma(z + 0.5)?;
    Ok(ScaledComplex::from_log(log_mag).rotate_minus_i_pow(n))
}
