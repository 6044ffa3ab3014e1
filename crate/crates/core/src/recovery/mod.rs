//! Pole and residue recovery.
//!
//! 1. Fit `𝔠ₙ(k) ≈ mₙ k + qₙ` over a list of integer `k`.
//! 2. Pole trace `z_p(n) = -qₙ/mₙ + 1/2`.
//! 3. Residue trace `R_p(n) = -mₙ / [2√π Γ(1/2 - z_p) Pₙ(-i z_p)]` at the
//!    estimated `z_p`.
//! 4. On each real and imaginary component, the longest run of `n` inside a
//!    band of relative width `W_p`; the estimate is the mean over that run and
//!    its uncertainty the sample standard deviation.

mod range;
mod trace;

pub use range::{
    detect_range, detect_range_against, detect_range_near, mean_std, ConvergenceRange,
};
pub use trace::{Part, Trace, TraceKind};

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coefficients::{tau_sequence, CoefficientTable, Coefficients};
use crate::error::{Error, Result};
use crate::samples::{Pole, SampleSet};

/// Default band width, in percent, for noiseless data.
pub const W_P_NOISELESS: f64 = 1e-3;
/// Default band width, in percent, for noisy data.
pub const W_P_NOISY: f64 = 1e-2;
/// `|mₙ|` at or below this leaves the trace entry undefined.
pub const M_GUARD: f64 = 1e-250;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecoveryConfig {
    pub k_list: Vec<usize>,
    pub n_scan: usize,
    pub w_p_percent: f64,
    pub l_min: usize,
    pub m_guard: f64,
}

impl Default for RecoveryConfig {
    fn default() -> Self {
        RecoveryConfig {
            k_list: (0..=5).collect(),
            n_scan: 600,
            w_p_percent: W_P_NOISELESS,
            l_min: 10,
            m_guard: M_GUARD,
        }
    }
}

impl RecoveryConfig {
    /// Defaults, with `W_p` chosen by whether the data carry noise.
    pub fn for_noise(epsilon: f64) -> Self {
        RecoveryConfig {
            w_p_percent: if epsilon > 0.0 {
                W_P_NOISY
            } else {
                W_P_NOISELESS
            },
            ..Self::default()
        }
    }
}

/// `𝔠ₙ(k) ≈ m_n k + q_n`; `residual` is the RMS misfit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionLine {
    pub n: usize,
    pub m_n: Complex64,
    pub q_n: Complex64,
    pub residual: f64,
}

/// Least-squares line through `(k_j, c_j)` with real abscissae.
pub fn fit_line(ks: &[f64], cs: &[Complex64]) -> Result<(Complex64, Complex64, f64)> {
    if ks.len() != cs.len() {
        return Err(Error::InvalidArgument(
            "abscissae and values differ in length".into(),
        ));
    }
    let n = ks.len() as f64;
    let k_mean = ks.iter().sum::<f64>() / n;
    let skk: f64 = ks.iter().map(|k| (k - k_mean).powi(2)).sum();
    if ks.len() < 2 || !(skk > 0.0) {
        return Err(Error::InvalidArgument(
            "regression needs at least two distinct k values".into(),
        ));
    }
    let c_mean = cs.iter().sum::<Complex64>() / n;
    let skc: Complex64 = ks
        .iter()
        .zip(cs)
        .map(|(k, c)| (k - k_mean) * (c - c_mean))
        .sum();
    let m = skc / skk;
    let q = c_mean - m * k_mean;
    let ss: f64 = ks
        .iter()
        .zip(cs)
        .map(|(k, c)| (c - (m * k + q)).norm_sqr())
        .sum();
    Ok((m, q, (ss / n).sqrt()))
}

/// Regression line at row `n` of a coefficient table.
pub fn regress_mq(table: &CoefficientTable, n: usize) -> Result<RegressionLine> {
    let ks: Vec<f64> = table.k_list().iter().map(|&k| k as f64).collect();
    let (m_n, q_n, residual) = fit_line(&ks, table.row(n))?;
    Ok(RegressionLine {
        n,
        m_n,
        q_n,
        residual,
    })
}

/// Regression lines for `n = 0..=n_max` of `c`.
pub fn regression_lines(c: &Coefficients, k_list: &[usize]) -> Result<Vec<RegressionLine>> {
    let table = CoefficientTable::build(c, k_list)?;
    (0..=table.n_max())
        .into_par_iter()
        .map(|n| regress_mq(&table, n))
        .collect()
}

pub fn pole_trace_from_lines(lines: &[RegressionLine], m_guard: f64) -> Trace {
    Trace {
        kind: TraceKind::PolePosition,
        values: lines
            .iter()
            .map(|l| (l.m_n.norm() > m_guard).then(|| -l.q_n / l.m_n + 0.5))
            .collect(),
    }
}

/// Residue trace at a fixed pole estimate.
pub fn residue_trace_from_lines(
    lines: &[RegressionLine],
    z_p_est: Complex64,
    m_guard: f64,
) -> Result<Trace> {
    let n_max = lines.last().map_or(0, |l| l.n);
    // 2√π Γ(1/2 - z_p) Pₙ(-i z_p) is τₙ with unit residue
    let denom = tau_sequence(
        n_max,
        Pole {
            z_p: z_p_est,
            r_p: Complex64::new(1.0, 0.0),
        },
    )?;
    let values = lines
        .iter()
        .map(|l| {
            if l.m_n.norm() <= m_guard || denom[l.n].is_zero() {
                return None;
            }
            let r = (crate::special::ScaledComplex::new(-l.m_n) / denom[l.n])
                .to_complex()
                .ok()?;
            (r.re.is_finite() && r.im.is_finite()).then_some(r)
        })
        .collect();
    Ok(Trace {
        kind: TraceKind::Residue,
        values,
    })
}

pub fn pole_trace(s: &SampleSet, cfg: &RecoveryConfig) -> Result<Trace> {
    let c = Coefficients::new(s, cfg.n_scan);
    Ok(pole_trace_from_lines(
        &regression_lines(&c, &cfg.k_list)?,
        cfg.m_guard,
    ))
}

pub fn residue_trace(s: &SampleSet, z_p_est: Complex64, cfg: &RecoveryConfig) -> Result<Trace> {
    let c = Coefficients::new(s, cfg.n_scan);
    residue_trace_from_lines(&regression_lines(&c, &cfg.k_list)?, z_p_est, cfg.m_guard)
}

/// Mean, standard deviation and the range they were taken over.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentEstimate {
    pub mean: f64,
    pub std: f64,
    pub range: ConvergenceRange,
}

/// Estimates of the real and imaginary parts of a trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEstimate {
    pub re: ComponentEstimate,
    pub im: ComponentEstimate,
}

impl TraceEstimate {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.mean, self.im.mean)
    }

    pub fn std(&self) -> (f64, f64) {
        (self.re.std, self.im.std)
    }
}

/// Detects ranges on both components of a trace.
///
/// The real part is searched first. The imaginary part is then searched
/// among runs that meet the real part's range, so that a slowly drifting
/// divergent tail cannot be taken for its plateau. A component without a
/// range of its own, typically one converging to zero, is retried with the
/// band measured against the other component's center.
pub fn estimate_trace(trace: &Trace, w_p_percent: f64, l_min: usize) -> Result<TraceEstimate> {
    let re_vals = trace.component(Part::Re);
    let im_vals = trace.component(Part::Im);
    let all = (0, usize::MAX);
    let mut re = detect_range(&re_vals, w_p_percent, l_min);
    let im = match re {
        Some(r) => {
            let near = (r.n_min, r.n_max);
            detect_range_near(&im_vals, w_p_percent, l_min, None, near)
                .or_else(|| detect_range_near(&im_vals, w_p_percent, l_min, Some(r.center), near))
        }
        None => {
            let im = detect_range(&im_vals, w_p_percent, l_min);
            if let Some(i) = im {
                re = detect_range_near(&re_vals, w_p_percent, l_min, Some(i.center), all);
            }
            im
        }
    };
    let what = match trace.kind {
        TraceKind::PolePosition => "pole position",
        TraceKind::Residue => "residue",
    };
    let (Some(re), Some(im)) = (re, im) else {
        let missing = match (re.is_some(), im.is_some()) {
            (false, false) => "either component",
            (false, true) => "the real part",
            _ => "the imaginary part",
        };
        return Err(Error::NoPoleDetected(format!(
            "no {what} range of length >= {l_min} at W_p = {w_p_percent}% on {missing}; \
             the function may be analytic"
        )));
    };
    let component = |vals: &[Option<f64>], range: ConvergenceRange| {
        let (mean, std) = mean_std(vals, &range);
        ComponentEstimate { mean, std, range }
    };
    Ok(TraceEstimate {
        re: component(&re_vals, re),
        im: component(&im_vals, im),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateRanges {
    pub pole_re: ConvergenceRange,
    pub pole_im: ConvergenceRange,
    pub residue_re: ConvergenceRange,
    pub residue_im: ConvergenceRange,
}

/// Final estimate of pole position and residue.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleEstimate {
    pub z_p: Complex64,
    pub z_p_std: (f64, f64),
    pub r_p: Complex64,
    pub r_p_std: (f64, f64),
    pub ranges: EstimateRanges,
}

impl PoleEstimate {
    pub fn from_parts(position: &TraceEstimate, residue: &TraceEstimate) -> Self {
        PoleEstimate {
            z_p: position.value(),
            z_p_std: position.std(),
            r_p: residue.value(),
            r_p_std: residue.std(),
            ranges: EstimateRanges {
                pole_re: position.re.range,
                pole_im: position.im.range,
                residue_re: residue.re.range,
                residue_im: residue.im.range,
            },
        }
    }

    pub fn pole(&self) -> Pole {
        Pole {
            z_p: self.z_p,
            r_p: self.r_p,
        }
    }

    /// JSON `{z_p, z_p_std, r_p, r_p_std, ranges, config}`.
    pub fn write_json<W: Write, C: Serialize>(&self, w: W, config: &C) -> Result<()> {
        #[derive(Serialize)]
        struct Doc<'a, C> {
            #[serde(flatten)]
            estimate: &'a PoleEstimate,
            config: &'a C,
        }
        serde_json::to_writer_pretty(
            w,
            &Doc {
                estimate: self,
                config,
            },
        )?;
        Ok(())
    }
}

/// Position estimate from the pole trace.
pub fn estimate_pole(s: &SampleSet, cfg: &RecoveryConfig) -> Result<TraceEstimate> {
    estimate_trace(&pole_trace(s, cfg)?, cfg.w_p_percent, cfg.l_min)
}

/// Residue estimate from the residue trace at `z_p_est`.
pub fn estimate_residue(
    s: &SampleSet,
    z_p_est: Complex64,
    cfg: &RecoveryConfig,
) -> Result<TraceEstimate> {
    estimate_trace(&residue_trace(s, z_p_est, cfg)?, cfg.w_p_percent, cfg.l_min)
}

/// Everything one recovery pass produces.
#[derive(Clone, Debug)]
pub struct Recovery {
    pub lines: Vec<RegressionLine>,
    pub pole_trace: Trace,
    pub position: Option<TraceEstimate>,
    pub residue_trace: Option<Trace>,
    pub residue: Option<TraceEstimate>,
    /// Why no estimate was produced, when it was not.
    pub failure: Option<String>,
}

impl Recovery {
    pub fn estimate(&self) -> Result<PoleEstimate> {
        match (&self.position, &self.residue) {
            (Some(p), Some(r)) => Ok(PoleEstimate::from_parts(p, r)),
            _ => Err(Error::NoPoleDetected(
                self.failure.clone().unwrap_or_else(|| "no estimate".into()),
            )),
        }
    }
}

fn split(r: Result<TraceEstimate>) -> Result<(Option<TraceEstimate>, Option<String>)> {
    match r {
        Ok(e) => Ok((Some(e), None)),
        Err(Error::NoPoleDetected(msg)) => Ok((None, Some(msg))),
        Err(e) => Err(e),
    }
}

/// Runs the full pass on precomputed coefficients.
pub fn recover_from(c: &Coefficients, cfg: &RecoveryConfig) -> Result<Recovery> {
    let lines = regression_lines(c, &cfg.k_list)?;
    let pole_trace = pole_trace_from_lines(&lines, cfg.m_guard);
    let (position, mut failure) = split(estimate_trace(&pole_trace, cfg.w_p_percent, cfg.l_min))?;
    let (mut residue_trace, mut residue) = (None, None);
    if let Some(p) = &position {
        let t = residue_trace_from_lines(&lines, p.value(), cfg.m_guard)?;
        (residue, failure) = split(estimate_trace(&t, cfg.w_p_percent, cfg.l_min))?;
        residue_trace = Some(t);
    }
    Ok(Recovery {
        lines,
        pole_trace,
        position,
        residue_trace,
        residue,
        failure,
    })
}

pub fn recover(s: &SampleSet, cfg: &RecoveryConfig) -> Result<Recovery> {
    recover_from(&Coefficients::new(s, cfg.n_scan), cfg)
}
