//! Self-checks on the samples: the plateau test for analyticity, the
//! reconstruction of every sample from the others, the relative error `δ`,
//! the choice of truncation and the interpolation formula.
//!
//! Reconstruction of node `k` (meromorphic case; drop the pole term and use
//! `𝔠ₙ,ₖ` for the analytic one):
//!
//! ```text
//! f̂ₖ = (-1)^{k+1} { Σ_{N≠k} (-1)^N f_N - π R_p / cos(π z_p)
//!                   + Σ_{n≤m_t} ĉₙ,ₖ Qₙ[-i(k+1/2)] }
//! ```

mod interpolate;

pub use interpolate::{interpolate, write_interpolation_csv, Interpolator};

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coefficients::{Coefficients, PoleTerm};
use crate::error::{Error, Result};
use crate::recovery::{detect_range, ConvergenceRange, W_P_NOISELESS, W_P_NOISY};
use crate::samples::{Pole, SampleSet};
use crate::special::{NeumaierSum, QTable};

/// Default `k` values probed by [`analyticity_test`].
pub const K_PROBE: [usize; 4] = [5, 10, 15, 20];
/// Default upper end of the truncation scan.
pub const TRUNCATION_MAX: usize = 300;
/// Samples smaller than this in modulus are left out of `δ`.
pub const DELTA_FLOOR: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    pub k_probe: Vec<usize>,
    /// Plateau search for the analyticity test runs over `m = 0..=n_scan`.
    pub n_scan: usize,
    pub truncation_max: usize,
    pub w_p_percent: f64,
    pub l_min: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            k_probe: K_PROBE.to_vec(),
            n_scan: 600,
            truncation_max: TRUNCATION_MAX,
            w_p_percent: W_P_NOISELESS,
            l_min: 10,
        }
    }
}

impl ValidationConfig {
    pub fn for_noise(epsilon: f64) -> Self {
        ValidationConfig {
            w_p_percent: if epsilon > 0.0 {
                W_P_NOISY
            } else {
                W_P_NOISELESS
            },
            ..Self::default()
        }
    }

    /// `0..=min(truncation_max, n_scan)`.
    pub fn truncation_range(&self) -> RangeInclusive<usize> {
        0..=self.truncation_max.min(self.n_scan)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Analytic,
    Meromorphic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    LikelyAnalytic,
    LikelyNonAnalytic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticityVerdict {
    pub plateaus: BTreeMap<usize, Option<ConvergenceRange>>,
    pub verdict: Verdict,
    pub k_probed: Vec<usize>,
}

/// `𝔐ₖ(m)` for `m = 0..=n_max`; entries past an overflow are absent.
pub fn frak_norm_series(c: &Coefficients, k: usize) -> Vec<Option<f64>> {
    prefix_norms((0..=c.n_max()).map(|n| c.frak(n, k as f64)))
}

/// `M̂ₖ(m)` for `m = 0..=n_max` with the given pole estimate, or `𝔐ₖ(m)`
/// without one; entries past an overflow are absent.
pub fn hat_norm_series(c: &Coefficients, k: usize, pole: Option<Pole>) -> Result<Vec<Option<f64>>> {
    let Some(p) = pole else {
        return Ok(frak_norm_series(c, k));
    };
    let pt = c.pole_term(p)?;
    Ok(prefix_norms(
        (0..=c.n_max()).map(|n| c.hat(n, k as f64, &pt)),
    ))
}

fn prefix_norms(values: impl Iterator<Item = Result<Complex64>>) -> Vec<Option<f64>> {
    let mut acc = 0.0f64;
    values
        .map(|v| {
            acc += v.map_or(f64::INFINITY, |v| v.norm_sqr());
            acc.is_finite().then_some(acc)
        })
        .collect()
}

/// Plateau search on `m ↦ 𝔐ₖ(m)` for every probed `k`; a majority of
/// plateaus means the function is likely analytic.
pub fn analyticity_test_from(c: &Coefficients, cfg: &ValidationConfig) -> AnalyticityVerdict {
    let plateaus: BTreeMap<usize, Option<ConvergenceRange>> = cfg
        .k_probe
        .iter()
        .map(|&k| {
            let series = frak_norm_series(c, k);
            (k, detect_range(&series, cfg.w_p_percent, cfg.l_min))
        })
        .collect();
    let found = plateaus.values().filter(|p| p.is_some()).count();
    let verdict = if 2 * found > plateaus.len() {
        Verdict::LikelyAnalytic
    } else {
        Verdict::LikelyNonAnalytic
    };
    AnalyticityVerdict {
        k_probed: plateaus.keys().copied().collect(),
        plateaus,
        verdict,
    }
}

pub fn analyticity_test(s: &SampleSet, cfg: &ValidationConfig) -> AnalyticityVerdict {
    analyticity_test_from(&Coefficients::new(s, cfg.n_scan), cfg)
}

/// `sin(πx)`, exactly zero at integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    (PI * r).sin()
}

/// `cos(πx)`, exactly zero at half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// `π R_p / cos(π z_p)`.
pub(crate) fn pole_constant(pole: Pole) -> Result<Complex64> {
    let (a, b) = (pole.z_p.re, pole.z_p.im);
    let cos = Complex64::new(cos_pi(a) * (PI * b).cosh(), -sin_pi(a) * (PI * b).sinh());
    if cos == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!(
            "cos(π z_p) vanishes at the pole estimate {}",
            pole.z_p
        )));
    }
    Ok(PI * pole.r_p / cos)
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Σ_{N≠k} (-1)^N f_N` for every `k`, each summed without reading `f_k`.
fn alternating_sums(s: &SampleSet) -> Vec<Complex64> {
    let v = s.values();
    (0..v.len())
        .map(|k| {
            let (mut re, mut im) = (NeumaierSum::new(), NeumaierSum::new());
            for (n, f) in v.iter().enumerate() {
                if n != k {
                    re.add(sign(n) * f.re);
                    im.add(sign(n) * f.im);
                }
            }
            Complex64::new(re.value(), im.value())
        })
        .collect()
}

/// `δ` together with the number of samples left out for being below
/// [`DELTA_FLOOR`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaError {
    pub delta: f64,
    pub skipped: usize,
}

/// Relative RMS error `sqrt(mean |f_k - f̂_k|² / |f_k|²)`.
pub fn delta_error(original: &SampleSet, reconstructed: &[Complex64]) -> Result<DeltaError> {
    delta_of(original.values(), reconstructed)
}

fn delta_of(original: &[Complex64], reconstructed: &[Complex64]) -> Result<DeltaError> {
    if original.len() != reconstructed.len() {
        return Err(Error::InvalidArgument(format!(
            "{} samples but {} reconstructed values",
            original.len(),
            reconstructed.len()
        )));
    }
    let mut acc = NeumaierSum::new();
    let mut used = 0usize;
    for (f, g) in original.iter().zip(reconstructed) {
        let scale = f.norm();
        if !(scale >= DELTA_FLOOR) {
            continue;
        }
        acc.add(((f - g) / scale).norm_sqr());
        used += 1;
    }
    if used == 0 {
        return Err(Error::AllTermsSkipped);
    }
    Ok(DeltaError {
        delta: (acc.value() / used as f64).sqrt(),
        skipped: original.len() - used,
    })
}

/// Index of the smallest finite value, ties to the first; `None` if no
/// value is finite.
pub fn argmin_first(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_finite() && best.is_none_or(|(_, b)| v < b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

/// Coefficients and `Qₙ` at the nodes, shared by all reconstructions of one
/// sample set up to truncation `m_max`.
#[derive(Debug)]
pub struct Reconstructor {
    samples: SampleSet,
    coefficients: Coefficients,
    q: QTable,
    direct: Vec<Complex64>,
}

impl Reconstructor {
    pub fn new(s: &SampleSet, m_max: usize) -> Result<Self> {
        Ok(Reconstructor {
            samples: s.clone(),
            coefficients: Coefficients::new(s, m_max),
            q: QTable::new(m_max, s.n0())?,
            direct: alternating_sums(s),
        })
    }

    pub fn m_max(&self) -> usize {
        self.coefficients.n_max()
    }

    pub fn samples(&self) -> &SampleSet {
        &self.samples
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    fn pole_term(&self, pole: Option<Pole>) -> Result<Option<(PoleTerm, Complex64)>> {
        pole.map(|p| Ok((self.coefficients.pole_term(p)?, pole_constant(p)?)))
            .transpose()
    }

    /// `f̂ₖ(m)` for every truncation `m = 0..=m_max`, indexed `[k][m]`.
    /// Terms that overflow make the affected entries non-finite.
    fn all_truncations(&self, pole: Option<Pole>) -> Result<Vec<Vec<Complex64>>> {
        let pt = self.pole_term(pole)?;
        let c = &self.coefficients;
        Ok((0..=self.samples.n0())
            .into_par_iter()
            .map(|k| {
                let kf = k as f64;
                let mut base = self.direct[k];
                if let Some((_, pc)) = &pt {
                    base -= pc;
                }
                let q = self.q.row(k);
                let (mut re, mut im) = (NeumaierSum::new(), NeumaierSum::new());
                (0..=c.n_max())
                    .map(|n| {
                        let coef = match &pt {
                            Some((t, _)) => c.hat(n, kf, t),
                            None => c.frak(n, kf),
                        }
                        .unwrap_or(Complex64::new(f64::INFINITY, f64::INFINITY));
                        let term = coef * q[n];
                        re.add(term.re);
                        im.add(term.im);
                        -sign(k) * (base + Complex64::new(re.value(), im.value()))
                    })
                    .collect()
            })
            .collect())
    }

    /// `f̂ₖ`, `k = 0..=N0`, at truncation `m_t`; `pole` selects the
    /// meromorphic form.
    pub fn reconstruct(&self, pole: Option<Pole>, m_t: usize) -> Result<Vec<Complex64>> {
        if m_t > self.m_max() {
            return Err(Error::InvalidArgument(format!(
                "truncation {m_t} exceeds the prepared maximum {}",
                self.m_max()
            )));
        }
        let pt = self.pole_term(pole)?;
        let c = &self.coefficients;
        (0..=self.samples.n0())
            .map(|k| {
                let kf = k as f64;
                let q = self.q.row(k);
                let (mut re, mut im) = (NeumaierSum::new(), NeumaierSum::new());
                for (n, qn) in q.iter().enumerate().take(m_t + 1) {
                    let coef = match &pt {
                        Some((t, _)) => c.hat(n, kf, t)?,
                        None => c.frak(n, kf)?,
                    };
                    let term = coef * qn;
                    re.add(term.re);
                    im.add(term.im);
                }
                let mut base = self.direct[k];
                if let Some((_, pc)) = &pt {
                    base -= pc;
                }
                Ok(-sign(k) * (base + Complex64::new(re.value(), im.value())))
            })
            .collect()
    }

    /// `δ(m)` for `m = 0..=m_max`; `NaN` where the reconstruction is not
    /// finite.
    pub fn delta_curve(&self, pole: Option<Pole>) -> Result<Vec<f64>> {
        let rec = self.all_truncations(pole)?;
        let f = self.samples.values();
        (0..=self.m_max())
            .map(|m| {
                let col: Vec<Complex64> = rec.iter().map(|row| row[m]).collect();
                let d = delta_of(f, &col)?.delta;
                Ok(if d.is_finite() { d } else { f64::NAN })
            })
            .collect()
    }

    /// The truncation in `scan` with the smallest `δ`, ties to the smallest.
    pub fn choose_truncation(
        &self,
        pole: Option<Pole>,
        scan: RangeInclusive<usize>,
    ) -> Result<usize> {
        let (lo, hi) = (*scan.start(), *scan.end());
        if lo > hi || hi > self.m_max() {
            return Err(Error::InvalidArgument(format!(
                "truncation scan {lo}..={hi} is empty or exceeds {}",
                self.m_max()
            )));
        }
        let curve = self.delta_curve(pole)?;
        argmin_first(&curve[lo..=hi])
            .map(|i| lo + i)
            .ok_or_else(|| Error::Domain("no truncation gives a finite reconstruction".into()))
    }

    /// Reconstruction at the best truncation in `scan`.
    pub fn report(
        &self,
        pole: Option<Pole>,
        scan: RangeInclusive<usize>,
    ) -> Result<ReconstructionReport> {
        let m_t = self.choose_truncation(pole, scan)?;
        self.report_at(pole, m_t)
    }

    pub fn report_at(&self, pole: Option<Pole>, m_t: usize) -> Result<ReconstructionReport> {
        let reconstructed = self.reconstruct(pole, m_t)?;
        let d = delta_error(&self.samples, &reconstructed)?;
        Ok(ReconstructionReport {
            reconstructed,
            truncation: m_t,
            delta: d.delta,
            skipped: d.skipped,
            mode: if pole.is_some() {
                Mode::Meromorphic
            } else {
                Mode::Analytic
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub reconstructed: Vec<Complex64>,
    pub truncation: usize,
    pub delta: f64,
    pub skipped: usize,
    pub mode: Mode,
}

impl ReconstructionReport {
    /// JSON with the report fields and a `config` block.
    pub fn write_json<W: Write, C: Serialize>(&self, w: W, config: &C) -> Result<()> {
        #[derive(Serialize)]
        struct Doc<'a, C> {
            #[serde(flatten)]
            report: &'a ReconstructionReport,
            config: &'a C,
        }
        serde_json::to_writer_pretty(
            w,
            &Doc {
                report: self,
                config,
            },
        )?;
        Ok(())
    }
}

/// Meromorphic reconstruction of every sample at truncation `m_t`.
pub fn reconstruct_meromorphic(
    s: &SampleSet,
    z_p_est: Complex64,
    r_p_est: Complex64,
    m_t: usize,
) -> Result<Vec<Complex64>> {
    let pole = Pole {
        z_p: z_p_est,
        r_p: r_p_est,
    };
    pole_constant(pole)?;
    Reconstructor::new(s, m_t)?.reconstruct(Some(pole), m_t)
}

/// Analytic reconstruction of every sample at truncation `m_t`.
pub fn reconstruct_analytic(s: &SampleSet, m_t: usize) -> Result<Vec<Complex64>> {
    Reconstructor::new(s, m_t)?.reconstruct(None, m_t)
}

/// Truncation in `scan` minimizing `δ`; `pole` selects the meromorphic form.
pub fn choose_truncation(
    s: &SampleSet,
    pole: Option<Pole>,
    scan: RangeInclusive<usize>,
) -> Result<usize> {
    Reconstructor::new(s, *scan.end())?.choose_truncation(pole, scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{sample, TestFunction};

    #[test]
    fn exact_trig_at_special_points() {
        for k in -6i64..=6 {
            assert_eq!(sin_pi(k as f64), 0.0);
            assert_eq!(cos_pi(k as f64 + 0.5), 0.0);
            assert_eq!(sin_pi(k as f64 + 0.5), sign(k.rem_euclid(2) as usize));
        }
        for x in [0.1, 0.77, -3.3, 12.25] {
            assert!((sin_pi(x) - (PI * x).sin()).abs() < 1e-14);
            assert!((cos_pi(x) - (PI * x).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn half_integer_pole_is_rejected() {
        let p = Pole {
            z_p: Complex64::new(4.5, 0.0),
            r_p: Complex64::new(1.0, 0.0),
        };
        assert!(matches!(pole_constant(p), Err(Error::Domain(_))));
    }

    #[test]
    fn delta_trivial_cases() {
        let s = sample(&TestFunction::f2(), 10).unwrap();
        let same = s.values().to_vec();
        assert_eq!(delta_error(&s, &same).unwrap().delta, 0.0);
        let twice: Vec<_> = same.iter().map(|v| v * 2.0).collect();
        assert!((delta_error(&s, &twice).unwrap().delta - 1.0).abs() < 1e-15);
        assert!(delta_error(&s, &twice[1..]).is_err());
    }

    #[test]
    fn delta_skips_zero_samples() {
        let mut v = vec![Complex64::new(1.0, 0.0); 4];
        v[2] = Complex64::new(0.0, 0.0);
        let s = SampleSet::from_values(v.clone(), 0.0, 0).unwrap();
        let mut r = v.clone();
        r[2] = Complex64::new(5.0, 0.0);
        let d = delta_error(&s, &r).unwrap();
        assert_eq!((d.delta, d.skipped), (0.0, 1));
        let zeros = SampleSet::from_values(vec![Complex64::new(0.0, 0.0); 3], 0.0, 0).unwrap();
        assert!(matches!(
            delta_error(&zeros, &[Complex64::new(0.0, 0.0); 3]),
            Err(Error::AllTermsSkipped)
        ));
    }

    #[test]
    fn argmin_takes_the_first_minimum_and_ignores_nan() {
        assert_eq!(argmin_first(&[3.0, f64::NAN, 1.0, 1.0, 2.0]), Some(2));
        assert_eq!(argmin_first(&[f64::NAN, f64::INFINITY]), None);
    }

    #[test]
    fn zero_residue_matches_analytic_form() {
        let s = sample(&TestFunction::f1(5.0), 20).unwrap();
        let r = Reconstructor::new(&s, 30).unwrap();
        let pole = Pole {
            z_p: Complex64::new(6.2, 0.15),
            r_p: Complex64::new(0.0, 0.0),
        };
        let a = r.reconstruct(None, 30).unwrap();
        let m = r.reconstruct(Some(pole), 30).unwrap();
        for (x, y) in a.iter().zip(&m) {
            assert!((x - y).norm() <= 1e-15 * x.norm());
        }
    }

    #[test]
    fn truncation_table_matches_direct_reconstruction() {
        let s = sample(&TestFunction::f2(), 20).unwrap();
        let r = Reconstructor::new(&s, 40).unwrap();
        let pole = TestFunction::f2().pole();
        let all = r.all_truncations(pole).unwrap();
        for m in [0, 17, 40] {
            let direct = r.reconstruct(pole, m).unwrap();
            for (k, v) in direct.iter().enumerate() {
                assert_eq!(all[k][m], *v);
            }
        }
    }
}
