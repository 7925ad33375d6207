//! Entropy calculators and a bit-exact reversible two-chamber lattice gas.
//!
//! The gas demonstrates that microscopic reversibility and macroscopic
//! relaxation coexist: the echo protocol retraces a 10^4-step history to
//! the exact initial bits, while the coarse chamber entropy still climbs to
//! its equilibrium plateau on both sides of the reversal.

pub mod echo;
pub mod entropy;
pub mod error;
pub mod gas;

pub use echo::{run_echo, run_free, run_reversed, EchoResult, TrajectoryPoint};
pub use entropy::{box_entropy, clausius_delta_s, contact_delta_s, earth_entropy_rate, HeatStep};
pub use error::{ArrowError, Result};
pub use gas::{
    coarse_entropy, collide, gas_init, reverse_velocities, step_forward, stream, time_reverse,
    GasConfig, MicroState,
};
