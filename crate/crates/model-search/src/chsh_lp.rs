//! CHSH optimization and behavior feasibility as linear programs.
//!
//! Hidden states are the 16 deterministic response tables. The local class
//! is a probability vector over them; the conditioned class carries one
//! nonnegative weight per (state, outcome pair) with a normalization row per
//! measurement context. Every optimum is re-verified through the bell-core
//! evaluators before it is reported.

use crate::simplex::{
    lp_solve, verify_farkas, Constraint, FarkasCertificate, LinearProgram, LpOutcome, LpSolution,
};
use crate::strategy::DeterministicStrategy;
use bell_core::{
    behavior, chsh_statistic, BehaviorTable, BellError, LambdaSpace, LocalModel, Model,
    NormalizationMode, OutcomeCoding, ResponseTable, RetroModel, Scenario,
};
use thiserror::Error;

/// Reported optima must match independent re-evaluation this tightly.
pub const VERIFICATION_TOL: f64 = 1e-8;

/// Feasibility witnesses must reproduce the target behavior this tightly.
pub const FEASIBILITY_RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Lp(#[from] crate::simplex::LpError),
    #[error(transparent)]
    Bell(#[from] BellError),
    #[error("optimization problem is unbounded; the model class constraints are missing")]
    Unbounded,
    #[error("optimization problem reported infeasible (violation {0}); the class is nonempty")]
    UnexpectedInfeasible(f64),
    #[error("certificate verification failed: solver reported {reported}, re-evaluation gives {verified}")]
    VerificationMismatch { reported: f64, verified: f64 },
    #[error("infeasibility certificate does not separate the target")]
    BadCertificate,
}

pub type Result<T> = std::result::Result<T, SearchError>;

fn two_by_two_scenario(coding: OutcomeCoding) -> Scenario {
    Scenario::new(vec![0.0, 1.0], vec![0.0, 1.0], coding)
}

/// CHSH context signs: S = E00 + E01 + E10 - E11.
const CONTEXT_SIGN: [[f64; 2]; 2] = [[1.0, 1.0], [1.0, -1.0]];

fn strategy_response_tables(
    strategies: &[DeterministicStrategy],
    coding: OutcomeCoding,
) -> (ResponseTable, ResponseTable) {
    let alice = strategies
        .iter()
        .map(|s| vec![s.alice_value(0, coding), s.alice_value(1, coding)])
        .collect();
    let bob = strategies
        .iter()
        .map(|s| vec![s.bob_value(0, coding), s.bob_value(1, coding)])
        .collect();
    (
        ResponseTable::Deterministic(alice),
        ResponseTable::Deterministic(bob),
    )
}

#[derive(Debug, Clone)]
pub struct LocalLpResult {
    pub optimum: f64,
    /// Probability per deterministic strategy.
    pub weights: Vec<f64>,
    /// Strategies carrying weight above 1e-9.
    pub support: Vec<usize>,
    pub witness: LocalModel,
    /// |optimum - CHSH of the witness re-evaluated through bell-core|.
    pub verification_residual: f64,
    pub iterations: usize,
}

/// Maximize CHSH over mixtures of the 16 deterministic strategies.
///
/// `no_signalling` adds the marginal equalities on the induced behavior;
/// mixtures satisfy them identically, so the optimum cannot change.
pub fn max_chsh_local_lp(no_signalling: bool) -> Result<LocalLpResult> {
    let strategies = DeterministicStrategy::all();
    let n = strategies.len();
    let objective: Vec<f64> = strategies.iter().map(|s| s.chsh()).collect();
    let mut eq = vec![Constraint::new(vec![1.0; n], 1.0)];
    if no_signalling {
        // p(a | i) = sum of strategy weights with a_i = a, independent of j:
        // both contexts produce the same coefficient row, so every
        // constraint is the zero row. Included for uniformity with the
        // conditioned-class LP.
        eq.extend(no_signalling_rows(n, |k, i, j, a, b| {
            let s = &strategies[k];
            (s.a[i] == a && s.b[j] == b).then_some(k)
        }));
    }
    let lp = LinearProgram {
        objective,
        eq,
        ub: vec![],
    };
    let solution = expect_optimal(&lp)?;

    let support: Vec<usize> = (0..n).filter(|&k| solution.x[k] > 1e-9).collect();
    let coding = OutcomeCoding::PlusMinusOne;
    let (alice, bob) = strategy_response_tables(&strategies, coding);
    let witness = LocalModel {
        scenario: two_by_two_scenario(coding),
        lambda: LambdaSpace::Finite { atoms: n },
        density: solution.x.clone(),
        alice,
        bob,
    };
    let table = behavior(&Model::Local(witness.clone()))?;
    let verified = chsh_statistic(&table)?;
    check_verification(solution.objective, verified)?;
    Ok(LocalLpResult {
        optimum: solution.objective,
        weights: solution.x,
        support,
        witness,
        verification_residual: (solution.objective - verified).abs(),
        iterations: solution.iterations,
    })
}

#[derive(Debug, Clone)]
pub struct RetroLpResult {
    pub optimum: f64,
    pub witness: RetroModel,
    /// |optimum - CHSH of the witness re-evaluated through bell-core|.
    pub verification_residual: f64,
    pub iterations: usize,
}

/// Variable layout of the conditioned-weight LP: w(k, a, b) at 4k + 2a + b.
fn var(k: usize, a: usize, b: usize) -> usize {
    4 * k + 2 * a + b
}

/// Per-context normalization rows: sum_k w(k, a_i(k), b_j(k)) = 1. One
/// variable can appear in several contexts whenever the realized outcome
/// pair coincides.
fn normalization_rows(strategies: &[DeterministicStrategy]) -> Vec<Constraint> {
    let n = 4 * strategies.len();
    let mut rows = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut coeffs = vec![0.0; n];
            for (k, s) in strategies.iter().enumerate() {
                coeffs[var(k, s.a[i], s.b[j])] += 1.0;
            }
            rows.push(Constraint::new(coeffs, 1.0));
        }
    }
    rows
}

/// Marginal equalities p(a|i, j=0) = p(a|i, j=1) and the Bob analogue, as
/// zero-rhs rows. `contributor(k, i, j, a, b)` names the LP variable (if
/// any) through which state `k` contributes to the induced p(a, b | i, j).
fn no_signalling_rows(
    n_vars: usize,
    contributor: impl Fn(usize, usize, usize, usize, usize) -> Option<usize>,
) -> Vec<Constraint> {
    let mut rows = Vec::new();
    // Alice: p(a | i, j=0) - p(a | i, j=1) = 0.
    for a in 0..2 {
        for i in 0..2 {
            let mut coeffs = vec![0.0; n_vars];
            for k in 0..16 {
                for b in 0..2 {
                    if let Some(v) = contributor(k, i, 0, a, b) {
                        coeffs[v] += 1.0;
                    }
                    if let Some(v) = contributor(k, i, 1, a, b) {
                        coeffs[v] -= 1.0;
                    }
                }
            }
            rows.push(Constraint::new(coeffs, 0.0));
        }
    }
    // Bob: p(b | j, i=0) - p(b | j, i=1) = 0.
    for b in 0..2 {
        for j in 0..2 {
            let mut coeffs = vec![0.0; n_vars];
            for k in 0..16 {
                for a in 0..2 {
                    if let Some(v) = contributor(k, 0, j, a, b) {
                        coeffs[v] += 1.0;
                    }
                    if let Some(v) = contributor(k, 1, j, a, b) {
                        coeffs[v] -= 1.0;
                    }
                }
            }
            rows.push(Constraint::new(coeffs, 0.0));
        }
    }
    rows
}

/// Maximize CHSH over the conditioned-weight class on the 16 response-table
/// states. Without extra constraints the optimum is 4; `no_signalling`
/// restricts the induced behavior's marginals.
pub fn max_chsh_retro_lp(no_signalling: bool) -> Result<RetroLpResult> {
    let strategies = DeterministicStrategy::all();
    let n = 4 * strategies.len();

    let mut objective = vec![0.0; n];
    for (k, s) in strategies.iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let (a, b) = (s.a[i], s.b[j]);
                let sign = CONTEXT_SIGN[i][j];
                let value = |slot: usize| if slot == 0 { 1.0 } else { -1.0 };
                objective[var(k, a, b)] += sign * value(a) * value(b);
            }
        }
    }

    let mut eq = normalization_rows(&strategies);
    if no_signalling {
        let strategies_ref = &strategies;
        eq.extend(no_signalling_rows(n, |k, i, j, a, b| {
            let s = &strategies_ref[k];
            (s.a[i] == a && s.b[j] == b).then(|| var(k, a, b))
        }));
    }

    let lp = LinearProgram {
        objective,
        eq,
        ub: vec![],
    };
    let solution = expect_optimal(&lp)?;
    let witness = retro_witness(&strategies, &solution.x, OutcomeCoding::PlusMinusOne);
    let table = behavior(&Model::Retro(witness.clone()))?;
    let verified = chsh_statistic(&table)?;
    check_verification(solution.objective, verified)?;
    Ok(RetroLpResult {
        optimum: solution.objective,
        witness,
        verification_residual: (solution.objective - verified).abs(),
        iterations: solution.iterations,
    })
}

fn retro_witness(
    strategies: &[DeterministicStrategy],
    x: &[f64],
    coding: OutcomeCoding,
) -> RetroModel {
    let (alice, bob) = strategy_response_tables(strategies, coding);
    let weight = (0..strategies.len())
        .map(|k| {
            [
                [x[var(k, 0, 0)].max(0.0), x[var(k, 0, 1)].max(0.0)],
                [x[var(k, 1, 0)].max(0.0), x[var(k, 1, 1)].max(0.0)],
            ]
        })
        .collect();
    RetroModel {
        scenario: two_by_two_scenario(coding),
        lambda: LambdaSpace::Finite {
            atoms: strategies.len(),
        },
        weight,
        alice,
        bob,
        mode: NormalizationMode::Strict,
    }
}

#[derive(Debug, Clone)]
pub enum FeasibilityVerdict {
    Feasible {
        witness: RetroModel,
        /// Max absolute entry difference between the witness behavior and
        /// the target.
        residual: f64,
    },
    Infeasible {
        certificate: FarkasCertificate,
    },
}

/// Decide whether `target` is realizable by conditioned weights on the 16
/// response-table states. The verdict carries a verified certificate either
/// way: a witness model re-evaluated through bell-core, or a separating
/// functional checked against the constraint system.
pub fn feasibility_retro(target: &BehaviorTable) -> Result<FeasibilityVerdict> {
    target.validate()?;
    if target.alice_settings() != 2 || target.bob_settings() != 2 {
        return Err(SearchError::Bell(BellError::ScenarioShape {
            alice: target.alice_settings(),
            bob: target.bob_settings(),
        }));
    }
    let strategies = DeterministicStrategy::all();
    let n = 4 * strategies.len();

    // Behavior equalities; per-context normalization follows because the
    // target's contexts each sum to 1.
    let mut eq = Vec::with_capacity(16);
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let mut coeffs = vec![0.0; n];
                    for (k, s) in strategies.iter().enumerate() {
                        if s.a[i] == a && s.b[j] == b {
                            coeffs[var(k, a, b)] += 1.0;
                        }
                    }
                    eq.push(Constraint::new(coeffs, target.p[i][j][a][b]));
                }
            }
        }
    }
    let lp = LinearProgram {
        objective: vec![0.0; n],
        eq,
        ub: vec![],
    };
    match lp_solve(&lp)? {
        LpOutcome::Optimal(solution) => {
            let witness = retro_witness(&strategies, &solution.x, target.outcome_coding);
            let table = behavior(&Model::Retro(witness.clone()))?;
            let mut residual: f64 = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    for a in 0..2 {
                        for b in 0..2 {
                            residual =
                                residual.max((table.p[i][j][a][b] - target.p[i][j][a][b]).abs());
                        }
                    }
                }
            }
            if residual > FEASIBILITY_RESIDUAL_TOL {
                return Err(SearchError::VerificationMismatch {
                    reported: 0.0,
                    verified: residual,
                });
            }
            Ok(FeasibilityVerdict::Feasible { witness, residual })
        }
        LpOutcome::Infeasible(certificate) => {
            if !verify_farkas(&lp, &certificate, VERIFICATION_TOL) {
                return Err(SearchError::BadCertificate);
            }
            Ok(FeasibilityVerdict::Infeasible { certificate })
        }
        LpOutcome::Unbounded => Err(SearchError::Unbounded),
    }
}

fn expect_optimal(lp: &LinearProgram) -> Result<LpSolution> {
    match lp_solve(lp)? {
        LpOutcome::Optimal(s) => Ok(s),
        LpOutcome::Infeasible(cert) => Err(SearchError::UnexpectedInfeasible(cert.infeasibility)),
        LpOutcome::Unbounded => Err(SearchError::Unbounded),
    }
}

fn check_verification(reported: f64, verified: f64) -> Result<()> {
    if (reported - verified).abs() > VERIFICATION_TOL {
        return Err(SearchError::VerificationMismatch { reported, verified });
    }
    Ok(())
}
