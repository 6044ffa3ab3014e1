use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{create, write_json_with_config, RunConfig};
use crate::coefficients::Coefficients;
use crate::error::Result;
use crate::recovery::{recover_from, PoleEstimate, Trace, TraceKind};
use crate::samples::Pole;
use crate::validation::{
    analyticity_test_from, hat_norm_series, AnalyticityVerdict, Reconstructor, Verdict,
};

#[derive(Clone, Debug, PartialEq)]
pub enum AnalyzeOutcome {
    Pole(PoleEstimate),
    NoPole { message: String, verdict: Verdict },
}

impl AnalyzeOutcome {
    pub fn exit_code(&self) -> u8 {
        match self {
            AnalyzeOutcome::Pole(_) => 0,
            AnalyzeOutcome::NoPole { .. } => 2,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    NoPole,
}

#[derive(Serialize)]
struct EstimateDoc<'a> {
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<&'a str>,
    #[serde(flatten)]
    estimate: Option<&'a PoleEstimate>,
    analyticity: &'a AnalyticityVerdict,
}

#[derive(Serialize)]
struct SumRow {
    m: usize,
    k: usize,
    value: Option<f64>,
}

/// CSV `m,k,value` of `M̂ₖ(m)` (or `𝔐ₖ(m)` when `pole` is absent).
pub(crate) fn write_norm_sums<W: Write>(
    w: W,
    c: &Coefficients,
    ks: &[usize],
    pole: Option<Pole>,
) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for &k in ks {
        for (m, value) in hat_norm_series(c, k, pole)?.into_iter().enumerate() {
            wtr.serialize(SumRow { m, k, value })?;
        }
    }
    wtr.flush()?;
    Ok(())
}

fn write_trace(dir: &Path, name: &str, t: &Trace) -> Result<()> {
    let mut w = create(dir, name)?;
    t.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

/// Runs the whole pipeline and writes `estimate.json`, `pole_trace.csv`,
/// `residue_trace.csv`, `mhat_sums.csv` and `reconstruction.json` into
/// `cfg.output_dir`.
pub fn analyze(cfg: &RunConfig) -> Result<AnalyzeOutcome> {
    let s = cfg.load_samples()?;
    let dir = cfg.output_dir.as_path();
    fs::create_dir_all(dir)?;

    let c = Coefficients::new(&s, cfg.n_scan);
    let verdict = analyticity_test_from(&c, &cfg.validation());
    let rec = recover_from(&c, &cfg.recovery())?;
    let estimate = rec.estimate().ok();
    let pole = estimate.as_ref().map(PoleEstimate::pole);

    write_trace(dir, "pole_trace.csv", &rec.pole_trace)?;
    let empty = Trace {
        kind: TraceKind::Residue,
        values: Vec::new(),
    };
    write_trace(
        dir,
        "residue_trace.csv",
        rec.residue_trace.as_ref().unwrap_or(&empty),
    )?;
    {
        let mut w = create(dir, "mhat_sums.csv")?;
        write_norm_sums(&mut w, &c, &cfg.k_probe, pole)?;
        w.flush()?;
    }

    let doc = EstimateDoc {
        status: if estimate.is_some() {
            Status::Ok
        } else {
            Status::NoPole
        },
        message: rec.failure.as_deref(),
        estimate: estimate.as_ref(),
        analyticity: &verdict,
    };
    write_json_with_config(dir, "estimate.json", &doc, cfg)?;

    let scan = cfg.validation().truncation_range();
    let report = Reconstructor::new(&s, *scan.end())?.report(pole, scan)?;
    write_json_with_config(dir, "reconstruction.json", &report, cfg)?;

    Ok(match estimate {
        Some(e) => AnalyzeOutcome::Pole(e),
        None => AnalyzeOutcome::NoPole {
            message: rec.failure.unwrap_or_default(),
            verdict: verdict.verdict,
        },
    })
}
