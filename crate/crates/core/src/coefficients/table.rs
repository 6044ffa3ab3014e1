use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::Coefficients;
use crate::error::{Error, Result};

/// `𝔠ₙ(k)` on a grid of `n = 0..=n_max` and integer `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    n_max: usize,
    k_list: Vec<usize>,
    /// `entries[n][j] = 𝔠ₙ(k_list[j])`
    entries: Vec<Vec<Complex64>>,
}

#[derive(Serialize)]
struct Row {
    n: usize,
    k: usize,
    re: f64,
    im: f64,
}

impl CoefficientTable {
    pub fn build(c: &Coefficients, k_list: &[usize]) -> Result<Self> {
        if k_list.is_empty() {
            return Err(Error::InvalidArgument("empty k list".into()));
        }
        let entries = (0..=c.n_max())
            .map(|n| k_list.iter().map(|&k| c.frak(n, k as f64)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(CoefficientTable {
            n_max: c.n_max(),
            k_list: k_list.to_vec(),
            entries,
        })
    }

    /// A table from explicit values, `entries[n][j]` for `k_list[j]`.
    pub fn from_entries(k_list: Vec<usize>, entries: Vec<Vec<Complex64>>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|r| r.len() != k_list.len()) {
            return Err(Error::InvalidArgument(
                "table rows must match the k list".into(),
            ));
        }
        Ok(CoefficientTable {
            n_max: entries.len() - 1,
            k_list,
            entries,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn k_list(&self) -> &[usize] {
        &self.k_list
    }

    /// `𝔠ₙ(k)` for every `k` in the list.
    pub fn row(&self, n: usize) -> &[Complex64] {
        &self.entries[n]
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        for (n, row) in self.entries.iter().enumerate() {
            for (&k, v) in self.k_list.iter().zip(row) {
                wtr.serialize(Row {
                    n,
                    k,
                    re: v.re,
                    im: v.im,
                })?;
            }
        }
        wtr.flush()?;
        Ok(())
    }
}
