//! Basis functions `ψₙ` and the reconstruction kernel `Qₙ`.
//!
//! `Qₙ[-i(x+1/2)] = (i / 2√π) ∫ Pₙ(y) Γ(1/2+iy) / [(i(x+1/2) + y) cosh πy] dy`
//! over the real line, truncated to `|y| ≤ 12 + n/4`. The integrand decays
//! like `e^{-3π|y|/2}` times the growth of `Pₙ`, so the cut costs nothing at
//! the `1e-12` level.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::gamma::{complex_gamma, gamma_half_over_cosh};
use super::pollaczek::pollaczek_real_sequence;
use super::quadrature::{integrate_vec, DEFAULT_MAX_DEPTH};
use crate::error::{Error, Result};

/// Absolute accuracy requested from the `Qₙ` quadrature.
pub const Q_TOLERANCE: f64 = 1e-12;

const MAX_PANEL: f64 = 1.0;

/// Truncation half-width for degree `n`.
pub fn q_half_width(n: usize) -> f64 {
    12.0 + n as f64 / 4.0
}

/// `ψₙ(y) = π^{-1/2} Γ(1/2+iy) Pₙ(y)`.
pub fn psi_n(n: usize, y: f64) -> Complex64 {
    let mut p = Vec::with_capacity(n + 1);
    pollaczek_real_sequence(n, y, &mut p);
    let g = complex_gamma(Complex64::new(0.5, y)).expect("Γ(1/2+iy) has no poles");
    g * p[n] / PI.sqrt()
}

/// `Q₀[-i(x+1/2)], …, Q_{n_max}[-i(x+1/2)]` from one vector quadrature.
pub fn q_all(n_max: usize, x: f64) -> Result<Vec<Complex64>> {
    q_all_with(n_max, x, Q_TOLERANCE, MAX_PANEL)
}

pub(crate) fn q_all_with(n_max: usize, x: f64, tol: f64, max_panel: f64) -> Result<Vec<Complex64>> {
    if !(x > -0.5) {
        return Err(Error::Domain(format!("Q kernel needs x > -1/2, got {x}")));
    }
    let a = x + 0.5;
    let pref = Complex64::new(0.0, 0.5 / PI.sqrt());
    let y_max = q_half_width(n_max);
    let mut p = Vec::with_capacity(n_max + 1);
    integrate_vec(
        |y, out: &mut [Complex64]| {
            let c = pref * gamma_half_over_cosh(y) / Complex64::new(y, a);
            pollaczek_real_sequence(n_max, y, &mut p);
            for (o, pn) in out.iter_mut().zip(p.iter()) {
                *o = c * pn;
            }
        },
        n_max + 1,
        -y_max,
        y_max,
        tol,
        max_panel,
        DEFAULT_MAX_DEPTH,
    )
}

/// `Qₙ[-i(x+1/2)]` for a single degree.
pub fn q_n(n: usize, x: f64) -> Result<Complex64> {
    Ok(q_all(n, x)?[n])
}

/// `Qₙ[-i(k+1/2)]` for `k = 0..=n0`, `n = 0..=n_max`, shared read-only by
/// reconstructions.
#[derive(Clone, Debug)]
pub struct QTable {
    n_max: usize,
    rows: Vec<Vec<Complex64>>,
}

impl QTable {
    pub fn new(n_max: usize, n0: usize) -> Result<Self> {
        let rows = (0..=n0)
            .into_par_iter()
            .map(|k| q_all(n_max, k as f64))
            .collect::<Result<Vec<_>>>()?;
        Ok(QTable { n_max, rows })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn n0(&self) -> usize {
        self.rows.len() - 1
    }

    /// `Qₙ` values at node `k`, indexed by `n`.
    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.rows[k]
    }

    pub fn get(&self, n: usize, k: usize) -> Complex64 {
        self.rows[k][n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::quadrature::integrate;

    #[test]
    fn psi_at_origin() {
        assert!((psi_n(0, 0.0) - 1.0).norm() < 1e-14);
        assert!(psi_n(1, 0.0).norm() < 1e-15);
    }

    #[test]
    fn psi_zero_is_normalised() {
        let v = integrate(
            |y| Complex64::new(psi_n(0, y).norm_sqr(), 0.0),
            -12.0,
            12.0,
            1e-12,
            1.0,
        )
        .unwrap();
        assert!((v.re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn q0_matches_fine_reference() {
        let fast = q_n(0, 0.0).unwrap();
        let fine = q_all_with(0, 0.0, 1e-14, 0.125).unwrap()[0];
        assert!((fast - fine).norm() < 1e-10);
    }

    #[test]
    fn remark_one_single_term_identity() {
        // ½∫ψ₀(y)/[(x+½-iy) cosh πy] dy
        let x = 1.3;
        let lhs = integrate(
            |y| 0.5 * psi_n(0, y) / (Complex64::new(x + 0.5, -y) * (PI * y).cosh()),
            -40.0,
            40.0,
            1e-13,
            1.0,
        )
        .unwrap();
        let q = q_n(0, x).unwrap();
        assert!((lhs - q).norm() < 1e-9, "{lhs} vs {q}");
    }

    #[test]
    fn decays_with_distance() {
        assert!(q_n(3, 50.0).unwrap().norm() < q_n(3, 1.0).unwrap().norm());
    }

    #[test]
    fn table_matches_pointwise() {
        let t = QTable::new(8, 3).unwrap();
        assert_eq!(t.n0(), 3);
        assert!((t.get(5, 2) - q_n(5, 2.0).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn rejects_left_of_domain() {
        assert!(q_n(0, -0.5).is_err());
    }
}
