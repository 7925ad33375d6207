//! Exact searches over correlation model classes.
//!
//! Two tools: exhaustive enumeration of the 16 deterministic strategies in
//! the 2x2 binary scenario, and linear programs over mixtures (local class)
//! or outcome-conditioned weights (conditioned class) on those strategies.
//! Every optimum and feasibility verdict ships with a certificate that is
//! re-verified through the bell-core evaluators.

pub mod chsh_lp;
pub mod simplex;
pub mod strategy;

pub use chsh_lp::{
    feasibility_retro, max_chsh_local_lp, max_chsh_retro_lp, FeasibilityVerdict, LocalLpResult,
    RetroLpResult, SearchError, FEASIBILITY_RESIDUAL_TOL, VERIFICATION_TOL,
};
pub use simplex::{
    lp_solve, verify_farkas, Constraint, FarkasCertificate, LinearProgram, LpError, LpOutcome,
    LpSolution, FEASIBILITY_TOL, MAX_ITERATIONS, PIVOT_TOL,
};
pub use strategy::{enumerate_deterministic_local, DeterministicStrategy, Enumeration};
