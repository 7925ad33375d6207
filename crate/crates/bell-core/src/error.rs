use crate::scenario::OutcomeCoding;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BellError {
    #[error("{name} is not normalized: sums to {sum} (expected 1 within {tol})")]
    Normalization { name: String, sum: f64, tol: f64 },

    #[error("context ({i},{j}) has effective mass {z} (strict mode expects 1 within {tol})")]
    ContextNormalization { i: usize, j: usize, z: f64, tol: f64 },

    #[error("context ({i},{j}) is degenerate: zero effective mass")]
    DegenerateContext { i: usize, j: usize },

    #[error("{location}: probability {value} outside [0, 1]")]
    ProbabilityRange { location: String, value: f64 },

    #[error("{location}: weight {value} is negative")]
    NegativeWeight { location: String, value: f64 },

    #[error("{location}: outcome {value} is not valid under {coding} coding")]
    BadOutcome {
        location: String,
        value: f64,
        coding: OutcomeCoding,
    },

    #[error("statistic requires a 2x2-setting scenario, got {alice}x{bob}")]
    ScenarioShape { alice: usize, bob: usize },

    #[error("statistic requires {expected} coding, table uses {actual}")]
    CodingMismatch {
        expected: OutcomeCoding,
        actual: OutcomeCoding,
    },

    #[error("setting index {index} out of range for {party} ({count} settings)")]
    SettingIndex {
        party: &'static str,
        index: usize,
        count: usize,
    },

    #[error("{location}: expected {expected} entries, got {actual}")]
    ShapeMismatch {
        location: String,
        expected: usize,
        actual: usize,
    },

    #[error("behavior table: context ({i},{j}) sums to {sum} (expected 1 within {tol})")]
    BehaviorNormalization { i: usize, j: usize, sum: f64, tol: f64 },

    #[error("trials must be >= 1")]
    NoTrials,

    #[error("model file: {0}")]
    ModelFile(String),
}

pub type Result<T> = std::result::Result<T, BellError>;
