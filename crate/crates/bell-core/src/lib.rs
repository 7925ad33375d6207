//! Hidden-variable correlation models and Bell-test statistics.
//!
//! Two model classes are supported for a two-party, binary-outcome
//! experiment:
//!
//! * [`LocalModel`] — a source density `rho(lambda)` over hidden states with
//!   per-party response functions that depend only on the local setting and
//!   the hidden state. Every behavior this class produces satisfies
//!   `|CHSH| <= 2`.
//! * [`RetroModel`] — the source weight `w(lambda, a, b)` additionally
//!   depends on the pair of outcomes that will be registered. Under
//!   per-context normalization this class reaches `CHSH = 4`.
//!
//! Both classes evaluate to [`BehaviorTable`]s, the full conditional
//! distribution `p(a, b | i, j)`, on which the CHSH and CH statistics and the
//! no-signalling check operate. Monte Carlo estimation mirrors the analytic
//! evaluators with seeded, reproducible sampling.

pub mod behavior;
pub mod error;
pub mod io;
pub mod mc;
pub mod model;
pub mod scenario;

pub use behavior::{
    behavior, ch_statistic, check_no_signalling, chsh_statistic, BehaviorTable, MarginalDeviation,
    NoSignallingReport, Party,
};
pub use error::BellError;
pub use mc::mc_estimate;
pub use model::{
    expectation_contextual, expectation_local, expectation_retro, marginalize_context,
    ContextualDensity, LambdaSpace, LocalModel, Model, NormalizationMode, ResponseTable,
    RetroModel,
};
pub use scenario::{OutcomeCoding, Scenario};

/// Tolerance for density / context normalization checks.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Tolerance for algebraic identities between two evaluation routes.
pub const IDENTITY_TOL: f64 = 1e-12;
