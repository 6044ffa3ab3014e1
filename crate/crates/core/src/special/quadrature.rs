//! Adaptive composite Gauss–Legendre quadrature with 16-point panels.
//!
//! Each panel is accepted when the 16-point rule on the whole panel and on
//! its two halves agree to the panel's share of the requested absolute
//! tolerance; otherwise it is bisected.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ORDER: usize = 16;

/// Default bisection depth limit below each initial panel.
pub const DEFAULT_MAX_DEPTH: u32 = 30;

struct Rule {
    nodes: [f64; ORDER],
    weights: [f64; ORDER],
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut nodes = [0.0; ORDER];
        let mut weights = [0.0; ORDER];
        let n = ORDER as f64;
        for i in 0..ORDER {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=ORDER {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Rule { nodes, weights }
    })
}

fn panel_vec<F>(f: &mut F, a: f64, b: f64, buf: &mut [Complex64], acc: &mut [Complex64])
where
    F: FnMut(f64, &mut [Complex64]),
{
    let r = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    acc.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
    for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
        f(mid + half * x, buf);
        let wh = w * half;
        for (a, v) in acc.iter_mut().zip(buf.iter()) {
            *a += wh * v;
        }
    }
}

/// Integrates a vector-valued function of length `dim` over `[a, b]`.
///
/// `f(y, out)` must fill `out[..dim]`. The interval is first cut into panels
/// no wider than `max_panel`; the tolerance is absolute and applies to every
/// component.
pub fn integrate_vec<F>(
    mut f: F,
    dim: usize,
    a: f64,
    b: f64,
    tol: f64,
    max_panel: f64,
    max_depth: u32,
) -> Result<Vec<Complex64>>
where
    F: FnMut(f64, &mut [Complex64]),
{
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::InvalidArgument(format!("bad interval [{a}, {b}]")));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut total = vec![zero; dim];
    let mut buf = vec![zero; dim];
    let mut whole = vec![zero; dim];
    let mut left = vec![zero; dim];
    let mut right = vec![zero; dim];
    let span = b - a;
    let pieces = (span / max_panel).ceil().max(1.0) as usize;
    let mut worst = 0.0f64;
    let mut failed = false;
    // (a, b, depth, whole-panel estimate)
    let mut stack: Vec<(f64, f64, u32, Vec<Complex64>)> = Vec::new();
    for p in (0..pieces).rev() {
        let lo = a + span * p as f64 / pieces as f64;
        let hi = if p + 1 == pieces {
            b
        } else {
            a + span * (p + 1) as f64 / pieces as f64
        };
        panel_vec(&mut f, lo, hi, &mut buf, &mut whole);
        stack.push((lo, hi, 0, whole.clone()));
    }
    while let Some((lo, hi, depth, est)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        panel_vec(&mut f, lo, mid, &mut buf, &mut left);
        panel_vec(&mut f, mid, hi, &mut buf, &mut right);
        let mut err = 0.0f64;
        for i in 0..dim {
            err = err.max((left[i] + right[i] - est[i]).norm());
        }
        let local_tol = tol * (hi - lo) / span;
        if err <= local_tol || depth >= max_depth {
            if err > local_tol {
                failed = true;
            }
            worst = worst.max(err * span / (hi - lo));
            for i in 0..dim {
                total[i] += left[i] + right[i];
            }
        } else {
            stack.push((mid, hi, depth + 1, right.clone()));
            stack.push((lo, mid, depth + 1, left.clone()));
        }
    }
    if failed {
        return Err(Error::Quadrature {
            achieved: worst,
            requested: tol,
        });
    }
    Ok(total)
}

/// Scalar form of [`integrate_vec`].
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64, max_panel: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let v = integrate_vec(
        |y, out: &mut [Complex64]| out[0] = f(y),
        1,
        a,
        b,
        tol,
        max_panel,
        DEFAULT_MAX_DEPTH,
    )?;
    Ok(v[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_weights_sum_to_two_and_nodes_are_symmetric() {
        let r = rule();
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let mut xs = r.nodes;
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for i in 0..ORDER {
            assert!((xs[i] + xs[ORDER - 1 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_for_degree_31() {
        let r = rule();
        let s: f64 = r
            .nodes
            .iter()
            .zip(r.weights.iter())
            .map(|(x, w)| w * x.powi(30))
            .sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn gaussian_integral() {
        let v = integrate(
            |y| Complex64::new((-y * y).exp(), 0.0),
            -10.0,
            10.0,
            1e-13,
            1.0,
        )
        .unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integral() {
        // ∫_0^{2π} cos(40y) e^{iy} dy = 0
        let v = integrate(
            |y| (40.0 * y).cos() * Complex64::new(0.0, y).exp(),
            0.0,
            2.0 * std::f64::consts::PI,
            1e-12,
            2.0,
        )
        .unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn depth_limit_reports_achieved_tolerance() {
        let r = integrate_vec(
            |y, out: &mut [Complex64]| out[0] = Complex64::new(y.abs().sqrt().recip(), 0.0),
            1,
            -1.0,
            1.0,
            1e-15,
            2.0,
            3,
        );
        match r {
            Err(Error::Quadrature {
                achieved,
                requested,
            }) => {
                assert!(achieved > requested);
            }
            other => panic!("expected quadrature error, got {other:?}"),
        }
    }
}
