use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    PolePosition,
    Residue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

/// A per-`n` sequence of estimates; `None` where the estimate is undefined.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub kind: TraceKind,
    pub values: Vec<Option<Complex64>>,
}

#[derive(Serialize)]
struct Row {
    n: usize,
    re: Option<f64>,
    im: Option<f64>,
    defined: bool,
}

impl Trace {
    pub fn component(&self, part: Part) -> Vec<Option<f64>> {
        self.values
            .iter()
            .map(|v| {
                v.map(|z| match part {
                    Part::Re => z.re,
                    Part::Im => z.im,
                })
            })
            .collect()
    }

    pub fn defined_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// CSV `n,re,im,defined`; undefined entries leave `re` and `im` empty.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        for (n, v) in self.values.iter().enumerate() {
            wtr.serialize(Row {
                n,
                re: v.map(|z| z.re),
                im: v.map(|z| z.im),
                defined: v.is_some(),
            })?;
        }
        wtr.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_marks_undefined_rows() {
        let t = Trace {
            kind: TraceKind::Residue,
            values: vec![Some(Complex64::new(1.5, -2.0)), None],
        };
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,re,im,defined\n0,1.5,-2.0,true\n1,,,false\n"
        );
        assert_eq!(t.defined_count(), 1);
        assert_eq!(t.component(Part::Im), vec![Some(-2.0), None]);
    }
}
