//! Data-driven expansion coefficients.
//!
//! For samples `f_N`, `N = 0..=N0`,
//!
//! ```text
//! 𝔠ₙ(k) = 2√π Σ_N (-1)^N / N! · (N - k) · f_N · Pₙ[-i(N+1/2)]
//! τₙ    = 2√π R_p Γ(1/2 - z_p) Pₙ(-i z_p)
//! ĉₙ,ₖ  = 𝔠ₙ(k) - (z_p - 1/2 - k) τₙ
//! ```
//!
//! `𝔠ₙ(k)` is affine in `k`: `𝔠ₙ(k) = aₙ - k bₙ` with
//! `aₙ = 2√π Σ (-1)^N/N! N f_N Pₙ` and `bₙ = 2√π Σ (-1)^N/N! f_N Pₙ`.
//! [`Coefficients`] keeps `aₙ` and `bₙ` in extended-exponent form; the terms
//! alternate in sign and span many orders of magnitude, so every sum over
//! `N` is aligned and compensated.

mod table;

pub use table::CoefficientTable;

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::samples::{Pole, SampleSet};
use crate::special::{gamma_scaled, pollaczek_sequence, ScaledComplex, ScaledSum};

fn two_sqrt_pi() -> f64 {
    2.0 * PI.sqrt()
}

/// `(-1)^N f_N / N!` for every node.
fn node_weights(s: &SampleSet) -> Vec<ScaledComplex> {
    let mut inv_fact = ScaledComplex::ONE;
    s.values()
        .iter()
        .enumerate()
        .map(|(n, &f)| {
            if n > 0 {
                inv_fact = inv_fact * (1.0 / n as f64);
            }
            let w = inv_fact * f;
            if n % 2 == 1 {
                -w
            } else {
                w
            }
        })
        .collect()
}

/// `Pₙ[-i(N+1/2)]`, indexed `[N][n]`.
fn node_polynomials(n0: usize, n_max: usize) -> Vec<Vec<ScaledComplex>> {
    (0..=n0)
        .into_par_iter()
        .map(|node| pollaczek_sequence(n_max, Complex64::new(0.0, -(node as f64 + 0.5))))
        .collect()
}

/// `𝔠ₙ(k)` by the direct sum over nodes.
pub fn frak_c(s: &SampleSet, n: usize, k: f64) -> Result<Complex64> {
    let weights = node_weights(s);
    let mut sum = ScaledSum::with_capacity(weights.len());
    for (node, w) in weights.iter().enumerate() {
        let p = pollaczek_sequence(n, Complex64::new(0.0, -(node as f64 + 0.5)))[n];
        sum.push(*w * p * (node as f64 - k));
    }
    (sum.total() * two_sqrt_pi()).to_complex()
}

fn check_pole_arg(z_p: Complex64) -> Result<()> {
    if !(z_p.re > 0.0) || !z_p.re.is_finite() || !z_p.im.is_finite() {
        return Err(Error::Domain(format!(
            "pole estimate {z_p} is not in Re z > 0"
        )));
    }
    Ok(())
}

/// `τ₀, …, τ_{n_max}` in extended-exponent form.
pub fn tau_sequence(n_max: usize, pole: Pole) -> Result<Vec<ScaledComplex>> {
    check_pole_arg(pole.z_p)?;
    if pole.r_p == Complex64::new(0.0, 0.0) {
        return Ok(vec![ScaledComplex::ZERO; n_max + 1]);
    }
    let g = gamma_scaled(0.5 - pole.z_p).map_err(|e| match e {
        Error::GammaPole(m) => {
            Error::Domain(format!("pole estimate {} sits on node {}", pole.z_p, -m))
        }
        other => other,
    })?;
    let pref = g * pole.r_p * two_sqrt_pi();
    Ok(pollaczek_sequence(n_max, -Complex64::i() * pole.z_p)
        .into_iter()
        .map(|p| pref * p)
        .collect())
}

/// `τₙ = 2√π R_p Γ(1/2 - z_p) Pₙ(-i z_p)`.
pub fn tau_n(n: usize, z_p: Complex64, r_p: Complex64) -> Result<Complex64> {
    tau_sequence(n, Pole { z_p, r_p })?[n].to_complex()
}

/// `ĉₙ,ₖ = 𝔠ₙ(k) - (z_p - 1/2 - k) τₙ`.
pub fn hat_c_pole(
    s: &SampleSet,
    n: usize,
    k: f64,
    z_p: Complex64,
    r_p: Complex64,
) -> Result<Complex64> {
    let c = Coefficients::new(s, n);
    c.hat(n, k, &c.pole_term(Pole { z_p, r_p })?)
}

/// `𝔐ₖ(m) = Σ_{n ≤ m} |𝔠ₙ(k)|²`.
pub fn sum_m_frak(s: &SampleSet, k: usize, m: usize) -> Result<f64> {
    Ok(Coefficients::new(s, m).frak_norms(k)?[m])
}

/// `M̂ₖ(m) = Σ_{n ≤ m} |ĉₙ,ₖ|²` with the given pole estimates.
pub fn sum_m_hat(s: &SampleSet, k: usize, m: usize, z_p: Complex64, r_p: Complex64) -> Result<f64> {
    Ok(Coefficients::new(s, m).hat_norms(k, Pole { z_p, r_p })?[m])
}

/// Prefix sums of squared moduli, with overflow reported.
fn cumulative_norms(values: impl Iterator<Item = ScaledComplex>) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut acc = 0.0f64;
    for v in values {
        let (m, e) = v.norm_sqr_scaled();
        let sq = crate::special::scaled::ldexp(m, e);
        acc += sq;
        if !acc.is_finite() {
            return Err(Error::Overflow(e));
        }
        out.push(acc);
    }
    Ok(out)
}

/// `log2` of the running sums of `|v|²`; never overflows.
fn cumulative_log2_norms(values: impl Iterator<Item = ScaledComplex>) -> Vec<f64> {
    let mut acc = f64::NEG_INFINITY;
    values
        .map(|v| {
            let t = 2.0 * v.log2_abs();
            let (hi, lo) = if t > acc { (t, acc) } else { (acc, t) };
            if lo > f64::NEG_INFINITY {
                acc = hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2;
            } else {
                acc = hi;
            }
            acc
        })
        .collect()
}

/// `τₙ` for one pole estimate, `n = 0..=n_max`.
#[derive(Clone, Debug)]
pub struct PoleTerm {
    pole: Pole,
    tau: Vec<ScaledComplex>,
}

impl PoleTerm {
    pub fn pole(&self) -> Pole {
        self.pole
    }

    /// `ζ_p = z_p - 1/2`.
    pub fn zeta(&self) -> Complex64 {
        self.pole.z_p - 0.5
    }

    pub fn tau(&self, n: usize) -> ScaledComplex {
        self.tau[n]
    }
}

/// `aₙ`, `bₙ` for `n = 0..=n_max` of one sample set, plus cached
/// cumulative norms.
#[derive(Debug)]
pub struct Coefficients {
    n0: usize,
    n_max: usize,
    a: Vec<ScaledComplex>,
    b: Vec<ScaledComplex>,
    frak_cache: Mutex<HashMap<usize, Arc<Vec<f64>>>>,
}

impl Coefficients {
    pub fn new(s: &SampleSet, n_max: usize) -> Self {
        let weights = node_weights(s);
        let p = node_polynomials(s.n0(), n_max);
        let scale = two_sqrt_pi();
        let (a, b): (Vec<_>, Vec<_>) = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                let mut sa = ScaledSum::with_capacity(weights.len());
                let mut sb = ScaledSum::with_capacity(weights.len());
                for (node, w) in weights.iter().enumerate() {
                    let t = *w * p[node][n];
                    sb.push(t);
                    sa.push(t * node as f64);
                }
                (sa.total() * scale, sb.total() * scale)
            })
            .unzip();
        Coefficients {
            n0: s.n0(),
            n_max,
            a,
            b,
            frak_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn frak_scaled(&self, n: usize, k: f64) -> ScaledComplex {
        self.a[n] - self.b[n] * k
    }

    /// `𝔠ₙ(k)`.
    pub fn frak(&self, n: usize, k: f64) -> Result<Complex64> {
        self.frak_scaled(n, k).to_complex()
    }

    /// `bₙ = 2√π Σ (-1)^N/N! f_N Pₙ[-i(N+1/2)]`, the coefficient without the
    /// `(N - k)` factor.
    pub fn plain(&self, n: usize) -> ScaledComplex {
        self.b[n]
    }

    /// `τₙ`, `n = 0..=n_max`, for a pole estimate.
    pub fn pole_term(&self, pole: Pole) -> Result<PoleTerm> {
        Ok(PoleTerm {
            pole,
            tau: tau_sequence(self.n_max, pole)?,
        })
    }

    fn hat_scaled(&self, n: usize, k: f64, pt: &PoleTerm) -> ScaledComplex {
        self.frak_scaled(n, k) - pt.tau[n] * (pt.zeta() - k)
    }

    /// `ĉₙ,ₖ = 𝔠ₙ(k) - (ζ_p - k) τₙ`.
    pub fn hat(&self, n: usize, k: f64, pt: &PoleTerm) -> Result<Complex64> {
        self.hat_scaled(n, k, pt).to_complex()
    }

    /// `bₙ - τₙ`, the pole-corrected coefficient without the `(N - k)`
    /// factor, used by the interpolation formula.
    pub fn plain_hat(&self, n: usize, pt: &PoleTerm) -> Result<Complex64> {
        (self.b[n] - pt.tau[n]).to_complex()
    }

    /// `𝔐ₖ(m)` for `m = 0..=n_max`.
    pub fn frak_norms(&self, k: usize) -> Result<Arc<Vec<f64>>> {
        if let Some(v) = self.frak_cache.lock().expect("cache lock").get(&k) {
            return Ok(v.clone());
        }
        let v = Arc::new(cumulative_norms(
            (0..=self.n_max).map(|n| self.frak_scaled(n, k as f64)),
        )?);
        self.frak_cache
            .lock()
            .expect("cache lock")
            .insert(k, v.clone());
        Ok(v)
    }

    /// `M̂ₖ(m)` for `m = 0..=n_max`.
    pub fn hat_norms(&self, k: usize, pole: Pole) -> Result<Vec<f64>> {
        let pt = self.pole_term(pole)?;
        cumulative_norms((0..=self.n_max).map(|n| self.hat_scaled(n, k as f64, &pt)))
    }

    /// `log2 𝔐ₖ(m)`, finite past the point where `𝔐ₖ` leaves f64 range.
    pub fn frak_log2_norms(&self, k: f64) -> Vec<f64> {
        cumulative_log2_norms((0..=self.n_max).map(|n| self.frak_scaled(n, k)))
    }

    /// `log2 M̂ₖ(m)`.
    pub fn hat_log2_norms(&self, k: f64, pole: Pole) -> Result<Vec<f64>> {
        let pt = self.pole_term(pole)?;
        Ok(cumulative_log2_norms(
            (0..=self.n_max).map(|n| self.hat_scaled(n, k, &pt)),
        ))
    }
}
