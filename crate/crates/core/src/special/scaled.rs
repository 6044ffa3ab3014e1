//! Complex numbers with an explicit binary exponent.
//!
//! Pollaczek polynomials evaluated at `-i(N + 1/2)` grow like `(2n)^N / N!`;
//! products of such values with `1/N!` and the samples quickly leave the
//! `f64` range when `N0` is large. `ScaledComplex` keeps a mantissa of modulus
//! in `[1, 2)` together with an `i64` exponent so that every intermediate stays
//! representable, and only the final result is brought back to `Complex64`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `2^n` for any `n`, saturating to `0` / `inf` outside the f64 range.
pub(crate) fn ldexp(x: f64, n: i64) -> f64 {
    let mut x = x;
    let mut n = n;
    while n > 1000 {
        x *= 2f64.powi(1000);
        n -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while n < -1000 {
        x *= 2f64.powi(-1000);
        n += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(n as i32)
}

/// Splits a finite non-zero `x` into `(m, e)` with `|m|` in `[1, 2)` and
/// `x = m * 2^e`.
pub(crate) fn frexp1(x: f64) -> (f64, i64) {
    debug_assert!(x.is_finite() && x != 0.0);
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    if raw_exp == 0 {
        // subnormal: lift into the normal range first
        let (m, e) = frexp1(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let e = raw_exp - 1023;
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1023 << 52));
    (m, e)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledComplex {
    mantissa: Complex64,
    exponent: i64,
}

impl Default for ScaledComplex {
    fn default() -> Self {
        Self::ZERO
    }
}

impl ScaledComplex {
    pub const ZERO: ScaledComplex = ScaledComplex {
        mantissa: Complex64 { re: 0.0, im: 0.0 },
        exponent: 0,
    };

    pub const ONE: ScaledComplex = ScaledComplex {
        mantissa: Complex64 { re: 1.0, im: 0.0 },
        exponent: 0,
    };

    /// Normalizes `mantissa * 2^exponent`.
    ///
    /// Panics in debug builds when the mantissa is not finite.
    pub fn from_parts(mantissa: Complex64, exponent: i64) -> Self {
        debug_assert!(
            mantissa.re.is_finite() && mantissa.im.is_finite(),
            "non-finite mantissa {mantissa}"
        );
        if mantissa.re == 0.0 && mantissa.im == 0.0 {
            return Self::ZERO;
        }
        let big = mantissa.re.abs().max(mantissa.im.abs());
        let (_, e0) = frexp1(big);
        let mut m = Complex64::new(ldexp(mantissa.re, -e0), ldexp(mantissa.im, -e0));
        let mut e = exponent + e0;
        // |m| is now in [1, 2*sqrt(2)); bring the modulus into [1, 2).
        let modulus = m.norm();
        if modulus >= 2.0 {
            m = m * 0.5;
            e += 1;
        }
        ScaledComplex {
            mantissa: m,
            exponent: e,
        }
    }

    pub fn new(value: Complex64) -> Self {
        Self::from_parts(value, 0)
    }

    pub fn from_real(value: f64) -> Self {
        Self::new(Complex64::new(value, 0.0))
    }

    /// `exp(log_value)` without overflow of the intermediate.
    pub fn from_log(log_value: Complex64) -> Self {
        let ln2 = std::f64::consts::LN_2;
        let e = (log_value.re / ln2).floor();
        let r = log_value.re - e * ln2;
        let m = Complex64::from_polar(r.exp(), log_value.im);
        Self::from_parts(m, e as i64)
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    /// `log2 |value|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mantissa.norm().log2() + self.exponent as f64
    }

    /// Natural logarithm (principal branch of the argument).
    pub fn ln(&self) -> Complex64 {
        Complex64::new(
            self.mantissa.norm().ln() + self.exponent as f64 * std::f64::consts::LN_2,
            self.mantissa.arg(),
        )
    }

    /// Converts back to `Complex64`, failing when the value overflows.
    /// Values below the subnormal range flush to zero.
    pub fn to_complex(&self) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if self.exponent > 1023 {
            return Err(Error::Overflow(self.exponent));
        }
        Ok(self.to_complex_lossy())
    }

    /// Converts back to `Complex64`, saturating to infinities / zero.
    pub fn to_complex_lossy(&self) -> Complex64 {
        Complex64::new(
            ldexp(self.mantissa.re, self.exponent),
            ldexp(self.mantissa.im, self.exponent),
        )
    }

    pub fn norm_sqr_scaled(&self) -> (f64, i64) {
        (self.mantissa.norm_sqr(), 2 * self.exponent)
    }

    pub fn conj(&self) -> Self {
        ScaledComplex {
            mantissa: self.mantissa.conj(),
            exponent: self.exponent,
        }
    }

    /// Multiplication by `(-i)^n`, exact.
    pub fn rotate_minus_i_pow(&self, n: usize) -> Self {
        let m = self.mantissa;
        let mantissa = match n % 4 {
            0 => m,
            1 => Complex64::new(m.im, -m.re),
            2 => -m,
            _ => Complex64::new(-m.im, m.re),
        };
        ScaledComplex {
            mantissa,
            exponent: self.exponent,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_parts(self.mantissa * factor, self.exponent)
    }
}

impl Mul for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: ScaledComplex) -> ScaledComplex {
        ScaledComplex::from_parts(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Mul<Complex64> for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: Complex64) -> ScaledComplex {
        self.scale(rhs)
    }
}

impl Mul<f64> for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: f64) -> ScaledComplex {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Div for ScaledComplex {
    type Output = ScaledComplex;
    fn div(self, rhs: ScaledComplex) -> ScaledComplex {
        ScaledComplex::from_parts(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl Neg for ScaledComplex {
    type Output = ScaledComplex;
    fn neg(self) -> ScaledComplex {
        ScaledComplex {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Add for ScaledComplex {
    type Output = ScaledComplex;
    fn add(self, rhs: ScaledComplex) -> ScaledComplex {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let e = self.exponent.max(rhs.exponent);
        let a = self.mantissa * ldexp(1.0, self.exponent - e);
        let b = rhs.mantissa * ldexp(1.0, rhs.exponent - e);
        ScaledComplex::from_parts(a + b, e)
    }
}

impl Sub for ScaledComplex {
    type Output = ScaledComplex;
    fn sub(self, rhs: ScaledComplex) -> ScaledComplex {
        self + (-rhs)
    }
}

/// Neumaier-compensated sum of one real component.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of scaled terms.
///
/// Terms are collected and aligned to the largest exponent before a
/// Neumaier summation of each component, so terms spanning hundreds of
/// orders of magnitude are accumulated without overflow.
#[derive(Clone, Debug, Default)]
pub struct ScaledSum {
    terms: Vec<ScaledComplex>,
}

impl ScaledSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        ScaledSum {
            terms: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, term: ScaledComplex) {
        if !term.is_zero() {
            self.terms.push(term);
        }
    }

    pub fn clear(&mut self) {
        self.terms.clear();
    }

    /// Largest term exponent, useful for estimating cancellation.
    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.iter().map(|t| t.exponent).max()
    }

    pub fn total(&self) -> ScaledComplex {
        let Some(e_max) = self.max_exponent() else {
            return ScaledComplex::ZERO;
        };
        let mut re = NeumaierSum::default();
        let mut im = NeumaierSum::default();
        for t in &self.terms {
            let shift = t.exponent - e_max;
            if shift < -1100 {
                continue;
            }
            let f = ldexp(1.0, shift);
            re.add(t.mantissa.re * f);
            im.add(t.mantissa.im * f);
        }
        ScaledComplex::from_parts(Complex64::new(re.value(), im.value()), e_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_keeps_value() {
        for &v in &[1.0, 3.5, -7.25e200, 1e-300, 5e-320] {
            let s = ScaledComplex::from_real(v);
            let m = s.mantissa().norm();
            assert!((1.0..2.0).contains(&m), "mantissa {m} for {v}");
            assert_eq!(s.to_complex().unwrap().re, v);
        }
        let z = Complex64::new(-3.0, 4.0);
        let s = ScaledComplex::new(z);
        assert!((s.mantissa().norm() - 1.25).abs() < 1e-15);
        assert_eq!(s.exponent(), 2);
    }

    #[test]
    fn zero_is_canonical() {
        let z = ScaledComplex::from_parts(Complex64::new(0.0, 0.0), 55);
        assert_eq!(z, ScaledComplex::ZERO);
        assert_eq!(z.exponent(), 0);
    }

    #[test]
    fn product_beyond_f64_range() {
        let big = ScaledComplex::from_real(1e300);
        let p = big * big * big;
        assert!((p.log2_abs() - 900.0 * 10f64.log2()).abs() < 1e-9);
        assert!(matches!(p.to_complex(), Err(Error::Overflow(_))));
        let back = p / big / big;
        assert!((back.to_complex().unwrap().re / 1e300 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn from_log_matches_exp() {
        let l = Complex64::new(3.7, -1.2);
        let v = ScaledComplex::from_log(l).to_complex().unwrap();
        assert!((v - l.exp()).norm() / l.exp().norm() < 1e-15);
        let huge = ScaledComplex::from_log(Complex64::new(2000.0, 0.5));
        assert!((huge.ln() - Complex64::new(2000.0, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn rotation_by_minus_i() {
        let s = ScaledComplex::new(Complex64::new(1.0, 2.0));
        let r = s.rotate_minus_i_pow(1).to_complex().unwrap();
        assert_eq!(r, Complex64::new(1.0, 2.0) * Complex64::new(0.0, -1.0));
        let r3 = s.rotate_minus_i_pow(7).to_complex().unwrap();
        assert_eq!(r3, Complex64::new(1.0, 2.0) * Complex64::new(0.0, 1.0));
    }

    #[test]
    fn compensated_sum_recovers_small_residual() {
        let mut s = ScaledSum::new();
        s.push(ScaledComplex::from_real(1e20));
        s.push(ScaledComplex::from_real(3.0));
        s.push(ScaledComplex::from_real(-1e20));
        assert_eq!(s.total().to_complex().unwrap().re, 3.0);
    }

    #[test]
    fn sum_with_huge_spread() {
        let mut s = ScaledSum::new();
        let big = ScaledComplex::from_log(Complex64::new(1500.0, 0.0));
        s.push(big);
        s.push(big);
        let t = s.total();
        assert!((t.ln().re - (1500.0 + 2f64.ln())).abs() < 1e-12);
    }
}
