//! Test functions with known poles.
//!
//! | id      | f(z)                                          | pole `z_p`    | residue `R_p`     |
//! |---------|-----------------------------------------------|---------------|-------------------|
//! | `f1`    | `C / (z+5)^q`, `C = 1e3`                       | none          |                   |
//! | `f2`    | `C / ((z+5)³ (z - z_p))`, `C = 1e4`            | `6.2 + 0.15i` | `C / (z_p+5)³`    |
//! | `f3`    | `(cosh w - 1) / ((z+5)² (sinh w - w))`, `w = z - z_p` | `9.45 + 0.37i` | `3 / (z_p+5)²` |
//! | `f4`    | `(z+10)^-3 + η / (z - 5)`                      | `5`           | `η`               |
//! | `f5`    | `(z+5)^-5 / (z - z_p)`                         | `5.2 + 0.2i`  | `1 / (z_p+5)⁵`    |

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const F1_SCALE: f64 = 1e3;
pub const F2_SCALE: f64 = 1e4;
pub const F2_POLE: Complex64 = Complex64::new(6.2, 0.15);
pub const F3_POLE: Complex64 = Complex64::new(9.45, 0.37);
pub const F4_POLE: f64 = 5.0;
pub const F5_POLE: Complex64 = Complex64::new(5.2, 0.2);

/// Location and residue of a first-order pole.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    pub z_p: Complex64,
    pub r_p: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "lowercase")]
pub enum FunctionId {
    F1 { q: f64 },
    F2,
    F3,
    F4 { eta: f64 },
    F5,
    Custom { name: String },
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionId::F1 { q } => write!(f, "f1(q={q})"),
            FunctionId::F2 => write!(f, "f2"),
            FunctionId::F3 => write!(f, "f3"),
            FunctionId::F4 { eta } => write!(f, "f4(eta={eta:e})"),
            FunctionId::F5 => write!(f, "f5"),
            FunctionId::Custom { name } => write!(f, "{name}"),
        }
    }
}

pub type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A function on `Re z > 0` together with its pole, if it has one.
#[derive(Clone)]
pub struct TestFunction {
    id: FunctionId,
    evaluator: Evaluator,
    pole: Option<Pole>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("pole", &self.pole)
            .finish_non_exhaustive()
    }
}

fn f3_ratio(w: Complex64) -> Complex64 {
    // (cosh w - 1) / (sinh w - w) without cancellation near w = 0 or
    // overflow for large |Re w|
    if w.re.abs() > 20.0 {
        let s = w.re.signum();
        let e1 = (-s * w).exp();
        let e2 = e1 * e1;
        let num = 1.0 + e2 - 2.0 * e1;
        let den = s * (1.0 - e2) - 2.0 * w * e1;
        return num / den;
    }
    let half = (0.5 * w).sinh();
    let num = 2.0 * half * half;
    let den = if w.norm() < 1.0 {
        let w2 = w * w;
        let mut term = w * w2 / 6.0;
        let mut sum = term;
        let mut k = 3.0;
        while term.norm() > 1e-17 * sum.norm() {
            term *= w2 / ((k + 1.0) * (k + 2.0));
            sum += term;
            k += 2.0;
        }
        sum
    } else {
        w.sinh() - w
    };
    num / den
}

/// Largest real zero below the pole of `f4`, where `x - 5 = -η (x+10)³`.
pub fn f4_real_zero(eta: f64) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eta must be positive, got {eta}"
        )));
    }
    let mut x = F4_POLE;
    for _ in 0..100 {
        let g = x - F4_POLE + eta * (x + 10.0).powi(3);
        let dg = 1.0 + 3.0 * eta * (x + 10.0).powi(2);
        let dx = g / dg;
        x -= dx;
        if dx.abs() <= 1e-15 * x.abs() {
            return Ok(x);
        }
    }
    Err(Error::Domain(format!(
        "zero search for eta = {eta} did not converge"
    )))
}

impl TestFunction {
    pub fn f1(q: f64) -> Self {
        TestFunction {
            id: FunctionId::F1 { q },
            evaluator: Arc::new(move |z: Complex64| {
                let base = z + 5.0;
                let p = if q.fract() == 0.0 && q.abs() < 64.0 {
                    base.powi(q as i32)
                } else {
                    base.powf(q)
                };
                F1_SCALE / p
            }),
            pole: None,
        }
    }

    pub fn f2() -> Self {
        TestFunction {
            id: FunctionId::F2,
            evaluator: Arc::new(|z: Complex64| F2_SCALE / ((z + 5.0).powi(3) * (z - F2_POLE))),
            pole: Some(Pole {
                z_p: F2_POLE,
                r_p: F2_SCALE / (F2_POLE + 5.0).powi(3),
            }),
        }
    }

    pub fn f3() -> Self {
        TestFunction {
            id: FunctionId::F3,
            evaluator: Arc::new(|z: Complex64| f3_ratio(z - F3_POLE) / (z + 5.0).powi(2)),
            pole: Some(Pole {
                z_p: F3_POLE,
                r_p: 3.0 / (F3_POLE + 5.0).powi(2),
            }),
        }
    }

    pub fn f4(eta: f64) -> Self {
        TestFunction {
            id: FunctionId::F4 { eta },
            evaluator: Arc::new(move |z: Complex64| (z + 10.0).powi(-3) + eta / (z - F4_POLE)),
            pole: Some(Pole {
                z_p: Complex64::new(F4_POLE, 0.0),
                r_p: Complex64::new(eta, 0.0),
            }),
        }
    }

    pub fn f5() -> Self {
        TestFunction {
            id: FunctionId::F5,
            evaluator: Arc::new(|z: Complex64| (z + 5.0).powi(-5) / (z - F5_POLE)),
            pole: Some(Pole {
                z_p: F5_POLE,
                r_p: (F5_POLE + 5.0).powi(-5),
            }),
        }
    }

    pub fn custom<F>(name: impl Into<String>, f: F, pole: Option<Pole>) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        TestFunction {
            id: FunctionId::Custom { name: name.into() },
            evaluator: Arc::new(f),
            pole,
        }
    }

    /// Looks up a catalog entry by name (`f1` … `f5`). `q` is used by `f1`
    /// and `eta` by `f4`.
    pub fn catalog(name: &str, q: f64, eta: f64) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "f1" => Ok(Self::f1(q)),
            "f2" => Ok(Self::f2()),
            "f3" => Ok(Self::f3()),
            "f4" => {
                if !(eta > 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "f4 needs a positive eta, got {eta}"
                    )));
                }
                Ok(Self::f4(eta))
            }
            "f5" => Ok(Self::f5()),
            other => Err(Error::InvalidArgument(format!(
                "unknown function id `{other}`"
            ))),
        }
    }

    pub fn id(&self) -> &FunctionId {
        &self.id
    }

    pub fn pole(&self) -> Option<Pole> {
        self.pole
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.evaluator)(z)
    }
}
