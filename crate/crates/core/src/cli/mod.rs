//! Command-line driver.
//!
//! ```text
//! pole-recovery analyze   --function f2 --n0 60 --out out/
//! pole-recovery analyze   --input samples.csv --out out/
//! pole-recovery sample    --function f5 --epsilon 1e-2 --seed 0 --out out/
//! pole-recovery reproduce fig4 --out out/
//! ```
//!
//! `analyze` exits with 0 when a pole is found, 2 when none is (the data look
//! analytic or too noisy), and 1 on errors.

mod analyze;
mod reproduce;

pub use analyze::{analyze, AnalyzeOutcome};
pub use reproduce::{reproduce, Target};

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recovery::{RecoveryConfig, M_GUARD, W_P_NOISELESS, W_P_NOISY};
use crate::samples::{perturb, sample, FunctionId, NoiseSpec, SampleSet, TestFunction};
use crate::validation::{ValidationConfig, K_PROBE, TRUNCATION_MAX};

#[derive(Debug, Parser)]
#[command(
    name = "pole-recovery",
    version,
    about = "Pole and residue recovery from half-integer samples"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate pole and residue, validate, and write the artifacts.
    Analyze(RunArgs),
    /// Write the samples of a catalog function.
    Sample(RunArgs),
    /// Emit the data behind a figure or table of the reference study.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Catalog function: f1, f2, f3, f4, f5.
    #[arg(long, conflicts_with = "input")]
    pub function: Option<String>,
    /// Sample file (`.csv` with header `N,re,im`, or `.json`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Exponent of f1.
    #[arg(long, default_value_t = 5.0)]
    pub q: f64,
    /// Pole strength of f4.
    #[arg(long, default_value_t = 1e-5)]
    pub eta: f64,
    /// Largest node index N0.
    #[arg(long, default_value_t = 60)]
    pub n0: usize,
    /// Relative noise bound. Catalog samples are perturbed with it; for an
    /// input file it only selects the default band width.
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Regression uses k = 0..=k_max.
    #[arg(long, default_value_t = 5)]
    pub k_max: usize,
    /// Shifts probed by the analyticity test (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = K_PROBE.to_vec())]
    pub k_probe: Vec<usize>,
    #[arg(long, default_value_t = 600)]
    pub n_scan: usize,
    /// Band width W_p in percent; defaults to 1e-3 without noise, 1e-2 with.
    #[arg(long)]
    pub wp: Option<f64>,
    #[arg(long, default_value_t = 10)]
    pub lmin: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Format of sample files written by `sample`.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InputSpec {
    Catalog { function: FunctionId },
    File { path: PathBuf },
}

/// Everything a run depends on; echoed into every JSON artifact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: InputSpec,
    pub n0: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub k_list: Vec<usize>,
    pub k_probe: Vec<usize>,
    pub n_scan: usize,
    pub w_p_percent: f64,
    pub l_min: usize,
    pub truncation_max: usize,
    pub output_dir: PathBuf,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> Result<Self> {
        let input = match (&a.function, &a.input) {
            (Some(name), None) => InputSpec::Catalog {
                function: TestFunction::catalog(name, a.q, a.eta)?.id().clone(),
            },
            (None, Some(path)) => InputSpec::File { path: path.clone() },
            (None, None) => InputSpec::Catalog {
                function: FunctionId::F2,
            },
            (Some(_), Some(_)) => {
                return Err(Error::InvalidArgument(
                    "give either --function or --input".into(),
                ))
            }
        };
        Ok(RunConfig {
            input,
            n0: a.n0,
            epsilon: a.epsilon,
            seed: a.seed,
            k_list: (0..=a.k_max).collect(),
            k_probe: a.k_probe.clone(),
            n_scan: a.n_scan,
            w_p_percent: a.wp.unwrap_or(if a.epsilon > 0.0 {
                W_P_NOISY
            } else {
                W_P_NOISELESS
            }),
            l_min: a.lmin,
            truncation_max: TRUNCATION_MAX,
            output_dir: a.out.clone(),
            format: a.format,
        })
    }

    /// Defaults for a catalog function.
    pub fn for_function(f: &TestFunction, n0: usize, epsilon: f64, seed: u64) -> Self {
        RunConfig {
            input: InputSpec::Catalog {
                function: f.id().clone(),
            },
            n0,
            epsilon,
            seed,
            k_list: (0..=5).collect(),
            k_probe: K_PROBE.to_vec(),
            n_scan: 600,
            w_p_percent: if epsilon > 0.0 {
                W_P_NOISY
            } else {
                W_P_NOISELESS
            },
            l_min: 10,
            truncation_max: TRUNCATION_MAX,
            output_dir: PathBuf::from("out"),
            format: Format::Csv,
        }
    }

    pub fn recovery(&self) -> RecoveryConfig {
        RecoveryConfig {
            k_list: self.k_list.clone(),
            n_scan: self.n_scan,
            w_p_percent: self.w_p_percent,
            l_min: self.l_min,
            m_guard: M_GUARD,
        }
    }

    pub fn validation(&self) -> ValidationConfig {
        ValidationConfig {
            k_probe: self.k_probe.clone(),
            n_scan: self.n_scan,
            truncation_max: self.truncation_max,
            w_p_percent: self.w_p_percent,
            l_min: self.l_min,
        }
    }

    pub fn function(&self) -> Result<Option<TestFunction>> {
        match &self.input {
            InputSpec::Catalog { function } => Ok(Some(match function {
                FunctionId::F1 { q } => TestFunction::f1(*q),
                FunctionId::F2 => TestFunction::f2(),
                FunctionId::F3 => TestFunction::f3(),
                FunctionId::F4 { eta } => TestFunction::f4(*eta),
                FunctionId::F5 => TestFunction::f5(),
                FunctionId::Custom { name } => {
                    return Err(Error::InvalidArgument(format!(
                        "`{name}` is not a catalog function"
                    )))
                }
            })),
            InputSpec::File { .. } => Ok(None),
        }
    }

    /// Catalog samples (perturbed when `epsilon > 0`) or the input file.
    pub fn load_samples(&self) -> Result<SampleSet> {
        match &self.input {
            InputSpec::File { path } => SampleSet::load(path),
            InputSpec::Catalog { .. } => {
                let f = self.function()?.expect("catalog input");
                let s = sample(&f, self.n0)?;
                if self.epsilon > 0.0 {
                    perturb(&s, NoiseSpec::new(self.epsilon, self.seed))
                } else {
                    Ok(s)
                }
            }
        }
    }
}

pub(crate) fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

/// Pretty JSON `{…value, "config": …}`.
pub(crate) fn write_json_with_config<T: Serialize>(
    dir: &Path,
    name: &str,
    value: &T,
    config: &RunConfig,
) -> Result<()> {
    #[derive(Serialize)]
    struct Doc<'a, T> {
        #[serde(flatten)]
        value: &'a T,
        config: &'a RunConfig,
    }
    let mut w = create(dir, name)?;
    serde_json::to_writer_pretty(&mut w, &Doc { value, config })?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// Writes `samples.csv` or `samples.json`; returns the path.
pub fn cmd_sample(cfg: &RunConfig) -> Result<PathBuf> {
    if matches!(cfg.input, InputSpec::File { .. }) {
        return Err(Error::InvalidArgument(
            "`sample` needs a catalog --function".into(),
        ));
    }
    let s = cfg.load_samples()?;
    fs::create_dir_all(&cfg.output_dir)?;
    let path = cfg.output_dir.join(match cfg.format {
        Format::Csv => "samples.csv",
        Format::Json => "samples.json",
    });
    s.save(&path)?;
    Ok(path)
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn execute(cmd: &Command) -> Result<u8> {
    match cmd {
        Command::Analyze(a) => {
            let cfg = RunConfig::from_args(a)?;
            let outcome = analyze(&cfg)?;
            match &outcome {
                AnalyzeOutcome::Pole(e) => {
                    println!(
                        "z_p = {} ± ({:.1e}, {:.1e})\nR_p = {} ± ({:.1e}, {:.1e})",
                        e.z_p, e.z_p_std.0, e.z_p_std.1, e.r_p, e.r_p_std.0, e.r_p_std.1
                    );
                }
                AnalyzeOutcome::NoPole { message, verdict } => {
                    println!("no pole detected ({message}); analyticity test: {verdict:?}");
                }
            }
            Ok(outcome.exit_code())
        }
        Command::Sample(a) => {
            let path = cmd_sample(&RunConfig::from_args(a)?)?;
            println!("{}", path.display());
            Ok(0)
        }
        Command::Reproduce { target, run } => {
            let cfg = RunConfig::from_args(run)?;
            for p in reproduce(*target, &cfg)? {
                println!("{}", p.display());
            }
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> RunArgs {
        let mut v = vec!["pole-recovery", "analyze"];
        v.extend_from_slice(extra);
        match Cli::try_parse_from(v).unwrap().command {
            Command::Analyze(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn defaults_follow_the_noise_level() {
        let c = RunConfig::from_args(&args(&["--function", "f2"])).unwrap();
        assert_eq!(c.w_p_percent, W_P_NOISELESS);
        assert_eq!(c.k_list, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(c.k_probe, K_PROBE.to_vec());
        let c = RunConfig::from_args(&args(&["--function", "f5", "--epsilon", "1e-2"])).unwrap();
        assert_eq!(c.w_p_percent, W_P_NOISY);
        let c = RunConfig::from_args(&args(&["--function", "f5", "--wp", "0.5", "--k-max", "3"]))
            .unwrap();
        assert_eq!((c.w_p_percent, c.k_list.len()), (0.5, 4));
    }

    #[test]
    fn catalog_parameters_are_kept() {
        let c = RunConfig::from_args(&args(&["--function", "f1", "--q", "3"])).unwrap();
        assert_eq!(
            c.input,
            InputSpec::Catalog {
                function: FunctionId::F1 { q: 3.0 }
            }
        );
        assert!(RunConfig::from_args(&args(&["--function", "f9"])).is_err());
    }

    #[test]
    fn function_and_input_conflict() {
        assert!(Cli::try_parse_from([
            "pole-recovery",
            "analyze",
            "--function",
            "f2",
            "--input",
            "a.csv"
        ])
        .is_err());
    }
}
