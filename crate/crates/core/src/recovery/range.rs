//! Longest run of consecutive indices inside a band ("range of
//! convergence").

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

/// A run `n_min..=n_max` whose values fit in `center ± half_width`.
///
/// The band test is `max - min ≤ (w_p_percent / 100) · reference`, where
/// `reference = |center|` for ordinary detection and the magnitude of a
/// companion component when the run sits around zero (see
/// [`detect_range_against`]).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRange {
    pub n_min: usize,
    pub n_max: usize,
    pub center: f64,
    pub half_width: f64,
    pub w_p_percent: f64,
    pub reference: f64,
}

impl ConvergenceRange {
    /// Number of indices covered.
    pub fn len(&self) -> usize {
        self.n_max - self.n_min + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: usize) -> bool {
        (self.n_min..=self.n_max).contains(&n)
    }
}

/// Longest window on which `fits(max, min)` holds and that meets the index
/// interval `within`; `fits` must stay true on every sub-window of a window
/// where it holds. Absent and non-finite values break windows. Ties go to
/// the earliest window.
fn longest_window<F>(
    values: &[Option<f64>],
    fits: F,
    within: (usize, usize),
) -> Option<(usize, usize, f64, f64)>
where
    F: Fn(f64, f64) -> bool,
{
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best: Option<(usize, usize, f64, f64)> = None;
    let mut left = 0;
    let val = |i: usize| values[i].unwrap_or(f64::NAN);
    for right in 0..values.len() {
        let v = val(right);
        if !v.is_finite() {
            maxq.clear();
            minq.clear();
            left = right + 1;
            continue;
        }
        while maxq.back().is_some_and(|&i| val(i) <= v) {
            maxq.pop_back();
        }
        maxq.push_back(right);
        while minq.back().is_some_and(|&i| val(i) >= v) {
            minq.pop_back();
        }
        minq.push_back(right);
        loop {
            let hi = val(*maxq.front().expect("window is nonempty"));
            let lo = val(*minq.front().expect("window is nonempty"));
            if fits(hi, lo) {
                break;
            }
            left += 1;
            while maxq.front().is_some_and(|&i| i < left) {
                maxq.pop_front();
            }
            while minq.front().is_some_and(|&i| i < left) {
                minq.pop_front();
            }
        }
        let len = right + 1 - left;
        let meets = right >= within.0 && left <= within.1;
        if meets && best.is_none_or(|(l, r, _, _)| len > r + 1 - l) {
            let hi = val(*maxq.front().unwrap());
            let lo = val(*minq.front().unwrap());
            best = Some((left, right, hi, lo));
        }
    }
    best
}

/// Same as [`longest_window`] for predicates that are not closed under
/// sub-windows (relative bands of 200 % or more).
fn longest_window_exhaustive<F>(values: &[Option<f64>], fits: F) -> Option<(usize, usize, f64, f64)>
where
    F: Fn(f64, f64) -> bool,
{
    let mut best: Option<(usize, usize, f64, f64)> = None;
    for l in 0..values.len() {
        let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
        for r in l..values.len() {
            let v = values[r].unwrap_or(f64::NAN);
            if !v.is_finite() {
                break;
            }
            hi = hi.max(v);
            lo = lo.min(v);
            let len = r + 1 - l;
            if fits(hi, lo) && best.is_none_or(|(bl, br, _, _)| len > br + 1 - bl) {
                best = Some((l, r, hi, lo));
            }
        }
    }
    best
}

fn finish(
    found: Option<(usize, usize, f64, f64)>,
    w_p_percent: f64,
    l_min: usize,
    reference: Option<f64>,
) -> Option<ConvergenceRange> {
    let (l, r, hi, lo) = found?;
    if r + 1 - l < l_min.max(1) {
        return None;
    }
    let center = 0.5 * (hi + lo);
    Some(ConvergenceRange {
        n_min: l,
        n_max: r,
        center,
        half_width: 0.5 * (hi - lo),
        w_p_percent,
        reference: reference.unwrap_or(center.abs()),
    })
}

/// Longest run with `max - min ≤ (w_p/100)·|(max + min)/2|`, or `None` when
/// it is shorter than `l_min`.
pub fn detect_range(
    values: &[Option<f64>],
    w_p_percent: f64,
    l_min: usize,
) -> Option<ConvergenceRange> {
    let w = w_p_percent / 100.0;
    if !(w > 0.0) {
        return None;
    }
    let fits = |hi: f64, lo: f64| hi - lo <= w * (0.5 * (hi + lo)).abs();
    let found = if w < 2.0 {
        longest_window(values, fits, (0, usize::MAX))
    } else {
        longest_window_exhaustive(values, fits)
    };
    finish(found, w_p_percent, l_min, None)
}

/// Longest run with `max - min ≤ (w_p/100)·|reference|`.
///
/// Used for a component that converges to (nearly) zero, such as the
/// imaginary part of a real pole, where a band relative to the run's own
/// center collapses.
pub fn detect_range_against(
    values: &[Option<f64>],
    w_p_percent: f64,
    l_min: usize,
    reference: f64,
) -> Option<ConvergenceRange> {
    detect_range_near(values, w_p_percent, l_min, Some(reference), (0, usize::MAX))
}

/// Longest run meeting the index interval `within`, with the band relative
/// to the run's own center or, if given, to `reference`.
pub fn detect_range_near(
    values: &[Option<f64>],
    w_p_percent: f64,
    l_min: usize,
    reference: Option<f64>,
    within: (usize, usize),
) -> Option<ConvergenceRange> {
    let w = w_p_percent / 100.0;
    let found = match reference {
        Some(r) => {
            let width = w * r.abs();
            if !(width > 0.0) {
                return None;
            }
            longest_window(values, |hi, lo| hi - lo <= width, within)
        }
        None => {
            if !(w > 0.0 && w < 2.0) {
                return None;
            }
            longest_window(
                values,
                |hi, lo| hi - lo <= w * (0.5 * (hi + lo)).abs(),
                within,
            )
        }
    };
    finish(found, w_p_percent, l_min, reference.map(f64::abs))
}

/// Sample mean and standard deviation (`n - 1` denominator) over a range.
pub fn mean_std(values: &[Option<f64>], range: &ConvergenceRange) -> (f64, f64) {
    let xs: Vec<f64> = values[range.n_min..=range.n_max]
        .iter()
        .map(|v| v.expect("ranges cover defined entries only"))
        .collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn some(xs: &[f64]) -> Vec<Option<f64>> {
        xs.iter().copied().map(Some).collect()
    }

    #[test]
    fn constant_series_is_one_range() {
        let r = detect_range(&some(&[3.0; 200]), 1e-3, 10).unwrap();
        assert_eq!((r.n_min, r.n_max, r.len()), (0, 199, 200));
        assert_eq!(r.center, 3.0);
        assert_eq!(r.half_width, 0.0);
    }

    #[test]
    fn embedded_plateau_is_found_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xs: Vec<f64> = (0..=600)
            .map(|n| {
                if (50..150).contains(&n) {
                    10.0 + rng.gen_range(-1e-6..1e-6)
                } else {
                    rng.gen_range(-1.0..1.0)
                }
            })
            .collect();
        let r = detect_range(&some(&xs), 1e-3, 10).unwrap();
        assert_eq!((r.n_min, r.n_max), (50, 149));
    }

    #[test]
    fn ties_go_to_the_first_run_and_gaps_break_runs() {
        let mut xs = some(&[1.0; 30]);
        xs[10] = None;
        xs[20] = Some(f64::NAN);
        let r = detect_range(&xs, 1e-3, 5).unwrap();
        assert_eq!((r.n_min, r.n_max), (0, 9));
        assert!(detect_range(&xs, 1e-3, 11).is_none());
    }

    #[test]
    fn short_runs_are_rejected() {
        assert!(detect_range(&some(&[1.0; 9]), 1e-3, 10).is_none());
        assert!(detect_range(&some(&[1.0; 10]), 1e-3, 10).is_some());
        assert!(detect_range(&[], 1e-3, 10).is_none());
    }

    #[test]
    fn zero_centered_runs_need_a_reference() {
        let xs: Vec<f64> = (0..50).map(|n| 1e-9 * ((n % 3) as f64 - 1.0)).collect();
        assert!(detect_range(&some(&xs), 1e-2, 10).is_none());
        let r = detect_range_against(&some(&xs), 1e-2, 10, 5.0).unwrap();
        assert_eq!(r.len(), 50);
        assert_eq!(r.reference, 5.0);
    }

    #[test]
    fn runs_can_be_restricted_to_meet_an_interval() {
        let mut xs = vec![Some(1.0); 20];
        xs[20 - 1] = None;
        xs.extend(vec![Some(2.0); 40]);
        let r = detect_range(&xs, 1e-3, 5).unwrap();
        assert_eq!((r.n_min, r.n_max), (20, 59));
        let r = detect_range_near(&xs, 1e-3, 5, None, (3, 6)).unwrap();
        assert_eq!((r.n_min, r.n_max), (0, 18));
        assert!(detect_range_near(&xs, 1e-3, 5, None, (19, 19)).is_none());
    }

    #[test]
    fn wide_bands_use_exhaustive_search() {
        let xs = some(&[1.0, -1.0, 1.0, 5.0, 5.0]);
        let r = detect_range(&xs, 300.0, 2).unwrap();
        assert!(r.len() >= 2);
        let (hi, lo) = (r.center + r.half_width, r.center - r.half_width);
        assert!(hi - lo <= 3.0 * r.center.abs());
    }

    #[test]
    fn mean_and_std() {
        let xs = some(&[0.0, 1.0, 2.0, 3.0, 100.0]);
        let r = ConvergenceRange {
            n_min: 0,
            n_max: 3,
            center: 1.5,
            half_width: 1.5,
            w_p_percent: 1.0,
            reference: 1.5,
        };
        let (m, s) = mean_std(&xs, &r);
        assert_eq!(m, 1.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
