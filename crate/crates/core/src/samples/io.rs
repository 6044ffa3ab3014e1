//! Sample set serialization.
//!
//! CSV: header `N,re,im`, one row per node. The format has no room for noise
//! metadata, so sets read from CSV carry `ε = 0`, `seed = 0`.
//!
//! JSON: `{"n0": …, "epsilon": …, "seed": …, "values": [[re, im], …]}`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SampleSet;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct CsvRow {
    #[serde(rename = "N")]
    n: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonSamples {
    n0: usize,
    epsilon: f64,
    seed: u64,
    values: Vec<[f64; 2]>,
}

impl SampleSet {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        for (n, v) in self.values().iter().enumerate() {
            wtr.serialize(CsvRow {
                n,
                re: v.re,
                im: v.im,
            })?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(r);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["N", "re", "im"] {
            return Err(Error::Parse(format!(
                "expected header `N,re,im`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut values = Vec::new();
        for (i, row) in rdr.deserialize::<CsvRow>().enumerate() {
            let row = row?;
            if row.n != i {
                return Err(Error::Parse(format!("row {i} has node index {}", row.n)));
            }
            values.push(Complex64::new(row.re, row.im));
        }
        SampleSet::from_values(values, 0.0, 0)
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        let doc = JsonSamples {
            n0: self.n0(),
            epsilon: self.noise_bound(),
            seed: self.seed(),
            values: self.values().iter().map(|v| [v.re, v.im]).collect(),
        };
        serde_json::to_writer_pretty(w, &doc)?;
        Ok(())
    }

    pub fn read_json<R: Read>(r: R) -> Result<Self> {
        let doc: JsonSamples = serde_json::from_reader(r)?;
        if doc.values.len() != doc.n0 + 1 {
            return Err(Error::Parse(format!(
                "n0 = {} but {} values",
                doc.n0,
                doc.values.len()
            )));
        }
        let values = doc
            .values
            .iter()
            .map(|v| Complex64::new(v[0], v[1]))
            .collect();
        SampleSet::from_values(values, doc.epsilon, doc.seed)
    }

    /// Reads CSV or JSON, chosen by file extension.
    pub fn load(path: &Path) -> Result<Self> {
        let r = BufReader::new(File::open(path)?);
        if is_json(path) {
            Self::read_json(r)
        } else {
            Self::read_csv(r)
        }
    }

    /// Writes CSV or JSON, chosen by file extension.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        if is_json(path) {
            self.write_json(&mut w)?;
        } else {
            self.write_csv(&mut w)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{perturb, sample, NoiseSpec, TestFunction};

    #[test]
    fn csv_round_trip_is_bit_identical() {
        let s = sample(&TestFunction::f3(), 60).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"N,re,im\n0,"));
        assert_eq!(SampleSet::read_csv(buf.as_slice()).unwrap(), s);
    }

    #[test]
    fn json_round_trip_keeps_noise_metadata() {
        let s = perturb(
            &sample(&TestFunction::f5(), 20).unwrap(),
            NoiseSpec::new(1e-3, 9),
        )
        .unwrap();
        let mut buf = Vec::new();
        s.write_json(&mut buf).unwrap();
        let back = SampleSet::read_json(buf.as_slice()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.seed(), 9);
    }

    #[test]
    fn malformed_inputs() {
        assert!(SampleSet::read_csv("N,x,y\n0,1,2\n".as_bytes()).is_err());
        assert!(SampleSet::read_csv("N,re,im\n1,1,2\n".as_bytes()).is_err());
        assert!(SampleSet::read_csv("N,re,im\n0,abc,2\n".as_bytes()).is_err());
        assert!(SampleSet::read_json(
            r#"{"n0":2,"epsilon":0,"seed":0,"values":[[1,0]]}"#.as_bytes()
        )
        .is_err());
    }
}
