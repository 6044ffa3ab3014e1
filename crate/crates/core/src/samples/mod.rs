//! Sample sets on the half-integer grid `N + 1/2`, the multiplicative noise
//! model `f_N^(ε) = (1 + ν_N) f_N` with `ν_N` uniform on `[-ε, ε]`, and the
//! catalog of test functions.

mod catalog;
mod io;

pub use catalog::{
    f4_real_zero, Evaluator, FunctionId, Pole, TestFunction, F1_SCALE, F2_POLE, F2_SCALE, F3_POLE,
    F4_POLE, F5_POLE,
};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples `values[N] = f(N + 1/2)`, `N = 0..=n0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    values: Vec<Complex64>,
    noise_bound: f64,
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub epsilon: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(epsilon: f64, seed: u64) -> Self {
        NoiseSpec { epsilon, seed }
    }
}

impl SampleSet {
    pub fn from_values(values: Vec<Complex64>, noise_bound: f64, seed: u64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "a sample set needs at least one value".into(),
            ));
        }
        if !(noise_bound >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "negative noise bound {noise_bound}"
            )));
        }
        if let Some(n) = values
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::InvalidArgument(format!("sample {n} is not finite")));
        }
        Ok(SampleSet {
            values,
            noise_bound,
            seed,
        })
    }

    /// Largest node index `N0`.
    pub fn n0(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn noise_bound(&self) -> f64 {
        self.noise_bound
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Every value multiplied by `c`; noise metadata is kept.
    pub fn scaled(&self, c: Complex64) -> Self {
        SampleSet {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    /// The first `n0 + 1` samples.
    pub fn truncated(&self, n0: usize) -> Result<Self> {
        if n0 > self.n0() {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate {} samples to N0 = {n0}",
                self.values.len()
            )));
        }
        Ok(SampleSet {
            values: self.values[..=n0].to_vec(),
            ..self.clone()
        })
    }
}

/// Distance below which a node is treated as sitting on the pole.
const NODE_POLE_TOL: f64 = 1e-12;

/// Evaluates `f` at `N + 1/2`, `N = 0..=n0`.
pub fn sample(f: &TestFunction, n0: usize) -> Result<SampleSet> {
    let mut values = Vec::with_capacity(n0 + 1);
    for n in 0..=n0 {
        let z = Complex64::new(n as f64 + 0.5, 0.0);
        if let Some(p) = f.pole() {
            if (z - p.z_p).norm() < NODE_POLE_TOL {
                return Err(Error::NodeOnPole(n));
            }
        }
        let v = f.eval(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NodeOnPole(n));
        }
        values.push(v);
    }
    SampleSet::from_values(values, 0.0, 0)
}

/// Applies `(1 + ν_N)` with `ν_N` uniform on `[-ε, ε]`, drawn in order of
/// `N` from a ChaCha8 stream seeded with `spec.seed`.
pub fn perturb(s: &SampleSet, spec: NoiseSpec) -> Result<SampleSet> {
    if s.noise_bound != 0.0 {
        return Err(Error::InvalidArgument(
            "samples are already perturbed".into(),
        ));
    }
    if !(spec.epsilon >= 0.0 && spec.epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "bad noise bound {}",
            spec.epsilon
        )));
    }
    let values = if spec.epsilon == 0.0 {
        s.values.clone()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        s.values
            .iter()
            .map(|v| v * (1.0 + rng.gen_range(-spec.epsilon..=spec.epsilon)))
            .collect()
    };
    Ok(SampleSet {
        values,
        noise_bound: spec.epsilon,
        seed: spec.seed,
    })
}
