//! The interpolation formula
//!
//! ```text
//! f̂(x+1/2) = Σ_N f_N sinc(x-N) - R_p/cos(π z_p) · sin(πx)/(x+1/2-z_p)
//!            - sin(πx)/π · Σ_{n≤m_t} ĉₙ Qₙ[-i(x+1/2)]
//! ```
//!
//! with `ĉₙ = bₙ - τₙ`, the coefficient without the `(N - k)` factor. The
//! analytic form drops the pole term and uses `bₙ`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::{pole_constant, sign, sin_pi};
use crate::coefficients::Coefficients;
use crate::error::{Error, Result};
use crate::samples::{Pole, SampleSet};
use crate::special::{q_all, NeumaierSum};

/// Precomputed coefficients for evaluating the interpolant at many points.
#[derive(Clone, Debug)]
pub struct Interpolator {
    values: Vec<Complex64>,
    coefficients: Vec<Complex64>,
    /// `(z_p, R_p / cos(π z_p))`
    pole: Option<(Complex64, Complex64)>,
}

impl Interpolator {
    pub fn new(s: &SampleSet, pole: Option<Pole>, m_t: usize) -> Result<Self> {
        let c = Coefficients::new(s, m_t);
        let (coefficients, pole) = match pole {
            Some(p) => {
                let pt = c.pole_term(p)?;
                let coefs = (0..=m_t)
                    .map(|n| c.plain_hat(n, &pt))
                    .collect::<Result<Vec<_>>>()?;
                (coefs, Some((p.z_p, pole_constant(p)? / PI)))
            }
            None => (
                (0..=m_t)
                    .map(|n| c.plain(n).to_complex())
                    .collect::<Result<Vec<_>>>()?,
                None,
            ),
        };
        Ok(Interpolator {
            values: s.values().to_vec(),
            coefficients,
            pole,
        })
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `f̂(x + 1/2)` for `x > -1/2`.
    pub fn at(&self, x: f64) -> Result<Complex64> {
        if !(x > -0.5) || !x.is_finite() {
            return Err(Error::Domain(format!(
                "interpolation needs x > -1/2, got {x}"
            )));
        }
        let s = sin_pi(x);
        if s == 0.0 {
            // Integer x: every term but the node's own sinc vanishes.
            let k = x as usize;
            return Ok(self.values.get(k).copied().unwrap_or_default());
        }
        let (mut re, mut im) = (NeumaierSum::new(), NeumaierSum::new());
        for (n, f) in self.values.iter().enumerate() {
            let t = f * (sign(n) * s / (PI * (x - n as f64)));
            re.add(t.re);
            im.add(t.im);
        }
        let mut out = Complex64::new(re.value(), im.value());
        if let Some((z_p, c)) = self.pole {
            out -= c * s / (x + 0.5 - z_p);
        }
        let q = q_all(self.truncation(), x)?;
        let (mut re, mut im) = (NeumaierSum::new(), NeumaierSum::new());
        for (c, qn) in self.coefficients.iter().zip(&q) {
            let t = c * qn;
            re.add(t.re);
            im.add(t.im);
        }
        out -= Complex64::new(re.value(), im.value()) * (s / PI);
        Ok(out)
    }
}

/// `f̂(x + 1/2)` at a single point; `pole` selects the meromorphic form.
pub fn interpolate(s: &SampleSet, pole: Option<Pole>, m_t: usize, x: f64) -> Result<Complex64> {
    Interpolator::new(s, pole, m_t)?.at(x)
}

#[derive(Serialize)]
struct Row {
    x: f64,
    re: f64,
    im: f64,
}

/// CSV `x,re,im`.
pub fn write_interpolation_csv<W: Write>(w: W, xs: &[f64], values: &[Complex64]) -> Result<()> {
    if xs.len() != values.len() {
        return Err(Error::InvalidArgument(
            "grid and values differ in length".into(),
        ));
    }
    let mut wtr = csv::Writer::from_writer(w);
    for (&x, v) in xs.iter().zip(values) {
        wtr.serialize(Row {
            x,
            re: v.re,
            im: v.im,
        })?;
    }
    wtr.flush()?;
    Ok(())
}
