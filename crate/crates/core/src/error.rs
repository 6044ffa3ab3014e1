use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function has a pole at {0}")]
    GammaPole(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole coincides with sampling node N = {0}")]
    NodeOnPole(usize),

    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("value does not fit in f64 (binary exponent {0})")]
    Overflow(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no pole detected ({0})")]
    NoPoleDetected(String),

    #[error("all samples are below the magnitude floor")]
    AllTermsSkipped,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
