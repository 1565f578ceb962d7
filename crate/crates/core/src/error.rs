use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("energy level index must be at least 1")]
    LevelIndex,

    /// The partition sum needed more than `cap` levels to meet the tolerance.
    #[error(
        "partition sum exceeded {cap} levels (width {width}, alpha {alpha}, mass {mass}, \
         temperature {temperature})"
    )]
    TruncationCap {
        cap: usize,
        width: f64,
        alpha: f64,
        mass: f64,
        temperature: f64,
    },

    #[error("degenerate cycle: hot-bath heat {q_h:e} vanishes while work {work:e} does not")]
    DegenerateCycle { q_h: f64, work: f64 },

    #[error("invalid sweep axis: {0}")]
    InvalidAxis(String),

    #[error("no sign change of Q_R on [{lo}, {hi}] (Q_R = {q_r_lo:e} and {q_r_hi:e})")]
    NoRoot {
        lo: f64,
        hi: f64,
        q_r_lo: f64,
        q_r_hi: f64,
    },

    #[error("non-finite Q_R at {parameter} = {value}")]
    NonFinite { parameter: &'static str, value: f64 },

    #[error("root solve stalled after {iterations} iterations on [{lo}, {hi}]")]
    NotConverged { iterations: usize, lo: f64, hi: f64 },
}
