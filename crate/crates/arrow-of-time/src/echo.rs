//! Trajectory drivers: free relaxation, the time-reversal echo, and the
//! reversed-start run.

use crate::error::{ArrowError, Result};
use crate::gas::{coarse_entropy, gas_init, step_forward, time_reverse, GasConfig, MicroState};

/// One trajectory sample: step index, left-chamber count, coarse entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: usize,
    pub j: usize,
    pub entropy_over_kb: f64,
}

fn sample(t: usize, state: &MicroState) -> Result<TrajectoryPoint> {
    Ok(TrajectoryPoint {
        t,
        j: state.left_count(),
        entropy_over_kb: coarse_entropy(state)?,
    })
}

/// Evolve `config.steps` steps from the seeded start, sampling every step
/// (including t = 0).
pub fn run_free(config: &GasConfig) -> Result<(Vec<TrajectoryPoint>, MicroState)> {
    let mut state = gas_init(config)?;
    let mut trajectory = Vec::with_capacity(config.steps + 1);
    trajectory.push(sample(0, &state)?);
    for t in 1..=config.steps {
        state = step_forward(&state);
        trajectory.push(sample(t, &state)?);
    }
    Ok((trajectory, state))
}

/// Evolve the velocity-reversed initial state forward `config.steps` steps.
/// Its endpoint is the "S(-T)" reading: the entropy T steps into the past
/// continuation of the seeded start.
pub fn run_reversed(config: &GasConfig) -> Result<(Vec<TrajectoryPoint>, MicroState)> {
    let mut state = time_reverse(&gas_init(config)?);
    let mut trajectory = Vec::with_capacity(config.steps + 1);
    trajectory.push(sample(0, &state)?);
    for t in 1..=config.steps {
        state = step_forward(&state);
        trajectory.push(sample(t, &state)?);
    }
    Ok((trajectory, state))
}

#[derive(Debug, Clone)]
pub struct EchoResult {
    /// Samples at t = 0..=2T; the reversal happens after the sample at T.
    pub trajectory: Vec<TrajectoryPoint>,
    pub initial: MicroState,
    /// State after the final reversal; equals `initial` bit-exactly.
    pub final_state: MicroState,
    pub retraced: bool,
}

/// The echo protocol: evolve T steps, reverse, evolve T more, reverse
/// again. The conjugation identity M F M = F^-1 makes the second leg
/// retrace the first exactly, so the final state is the initial one.
///
/// The reversal operator does not move particles between chambers, so the
/// sampled (j, S) series is unaffected by where the reversals sit.
pub fn run_echo(config: &GasConfig) -> Result<EchoResult> {
    let reverse_at = config.reverse_at.ok_or(ArrowError::MissingReverseAt)?;
    let initial = gas_init(config)?;
    let mut state = initial.clone();
    let mut trajectory = Vec::with_capacity(2 * reverse_at + 1);
    trajectory.push(sample(0, &state)?);
    for t in 1..=reverse_at {
        state = step_forward(&state);
        trajectory.push(sample(t, &state)?);
    }
    state = time_reverse(&state);
    for t in reverse_at + 1..=2 * reverse_at {
        state = step_forward(&state);
        trajectory.push(sample(t, &state)?);
    }
    state = time_reverse(&state);
    let retraced = state == initial;
    Ok(EchoResult {
        trajectory,
        initial,
        final_state: state,
        retraced,
    })
}
