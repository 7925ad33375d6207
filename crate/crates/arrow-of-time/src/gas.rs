//! HPP-style lattice gas in a two-chamber box.
//!
//! Each cell holds up to four particles, one per direction (E, W, N, S), as
//! a 4-bit occupancy. A vertical wall at `wall_col` separates the chambers,
//! open only along a centered hole. The step is F = stream after collide;
//! both are exactly invertible on integer state, which is what makes the
//! echo in `echo.rs` bit-exact.

use crate::entropy::box_entropy;
use crate::error::{ArrowError, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const E: u8 = 1;
pub const W: u8 = 2;
pub const N: u8 = 4;
pub const S: u8 = 8;
pub const FULL: u8 = E | W | N | S;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GasConfig {
    pub width: usize,
    pub height: usize,
    /// Column of the partition wall.
    pub wall_col: usize,
    /// Height of the centered hole, in cells.
    pub hole_rows: usize,
    pub particles: usize,
    pub seed: u64,
    pub steps: usize,
    pub reverse_at: Option<usize>,
}

impl GasConfig {
    /// Channel capacity of the left chamber (columns before the wall).
    pub fn left_capacity(&self) -> usize {
        self.wall_col * self.height * 4
    }

    pub fn hole_range(&self) -> std::ops::Range<usize> {
        let start = (self.height - self.hole_rows) / 2;
        start..start + self.hole_rows
    }

    pub fn validate(&self) -> Result<()> {
        if self.width < 3 || self.height < 1 {
            return Err(ArrowError::BadGeometry(format!(
                "grid {}x{} too small",
                self.width, self.height
            )));
        }
        if self.wall_col == 0 || self.wall_col >= self.width - 1 {
            return Err(ArrowError::BadGeometry(format!(
                "wall column {} must leave room on both sides of a {}-wide grid",
                self.wall_col, self.width
            )));
        }
        if self.hole_rows > self.height {
            return Err(ArrowError::BadGeometry(format!(
                "hole of {} rows exceeds height {}",
                self.hole_rows, self.height
            )));
        }
        if self.particles > self.left_capacity() {
            return Err(ArrowError::OverCapacity {
                particles: self.particles,
                capacity: self.left_capacity(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MicroState {
    pub width: usize,
    pub height: usize,
    pub wall_col: usize,
    /// 4-bit occupancy per cell, row-major.
    pub cells: Vec<u8>,
    /// Wall mask per cell; wall cells never hold particles.
    pub walls: Vec<bool>,
    pub particles: usize,
}

impl MicroState {
    fn idx(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    pub fn is_wall(&self, x: usize, y: usize) -> bool {
        self.walls[self.idx(x, y)]
    }

    pub fn count_particles(&self) -> usize {
        self.cells.iter().map(|c| c.count_ones() as usize).sum()
    }

    pub fn validate(&self) -> Result<()> {
        for y in 0..self.height {
            for x in 0..self.width {
                let i = self.idx(x, y);
                if self.walls[i] && self.cells[i] != 0 {
                    return Err(ArrowError::WallOccupied { x, y });
                }
            }
        }
        Ok(())
    }

    /// Particles in the left chamber, hole cells counting as left.
    pub fn left_count(&self) -> usize {
        let mut j = 0;
        for y in 0..self.height {
            for x in 0..=self.wall_col {
                let i = self.idx(x, y);
                if !self.walls[i] {
                    j += self.cells[i].count_ones() as usize;
                }
            }
        }
        j
    }
}

/// Seeded initial state: all particles in the left chamber.
///
/// Left-chamber cells are filled four channels at a time in a seeded
/// shuffled order (a remainder below 4 fills part of one more cell). Full
/// and empty cells are exactly the states fixed by velocity reversal and
/// collision, so whenever `particles` is a multiple of 4 the initial state
/// is invariant under `time_reverse` and the reversed-start run retraces
/// the forward run identically.
pub fn gas_init(config: &GasConfig) -> Result<MicroState> {
    config.validate()?;
    let mut walls = vec![false; config.width * config.height];
    let hole = config.hole_range();
    for y in 0..config.height {
        if !hole.contains(&y) {
            walls[y * config.width + config.wall_col] = true;
        }
    }
    let mut state = MicroState {
        width: config.width,
        height: config.height,
        wall_col: config.wall_col,
        cells: vec![0; config.width * config.height],
        walls,
        particles: config.particles,
    };

    let mut order: Vec<usize> = (0..config.height)
        .flat_map(|y| (0..config.wall_col).map(move |x| y * config.width + x))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    order.shuffle(&mut rng);

    let mut remaining = config.particles;
    for &cell in &order {
        if remaining == 0 {
            break;
        }
        if remaining >= 4 {
            state.cells[cell] = FULL;
            remaining -= 4;
        } else {
            // Partial cell: fill channels in fixed E, W, N, S order.
            for (count, dir) in [E, W, N, S].into_iter().enumerate() {
                if count < remaining {
                    state.cells[cell] |= dir;
                }
            }
            remaining = 0;
        }
    }
    debug_assert_eq!(state.count_particles(), config.particles);
    Ok(state)
}

/// Head-on collision rule: exactly {E, W} becomes {N, S} and vice versa.
/// An involution acting cell by cell.
pub fn collide(state: &MicroState) -> MicroState {
    let mut out = state.clone();
    for c in &mut out.cells {
        if *c == E | W {
            *c = N | S;
        } else if *c == N | S {
            *c = E | W;
        }
    }
    out
}

/// Velocity reversal: E <-> W and N <-> S in every cell.
pub fn reverse_velocities(state: &MicroState) -> MicroState {
    let mut out = state.clone();
    for c in &mut out.cells {
        let e = *c & E != 0;
        let w = *c & W != 0;
        let n = *c & N != 0;
        let s = *c & S != 0;
        *c = (w as u8 * E) | (e as u8 * W) | (s as u8 * N) | (n as u8 * S);
    }
    out
}

/// Advect each particle one cell along its direction; a particle whose
/// destination is a wall cell or the grid edge stays put with its direction
/// reversed (bounce-back).
pub fn stream(state: &MicroState) -> MicroState {
    let mut out = state.clone();
    out.cells.fill(0);
    let (w, h) = (state.width as isize, state.height as isize);
    for y in 0..state.height {
        for x in 0..state.width {
            let c = state.cells[state.idx(x, y)];
            if c == 0 {
                continue;
            }
            for (dir, back, dx, dy) in [(E, W, 1, 0), (W, E, -1, 0), (N, S, 0, -1), (S, N, 0, 1)] {
                if c & dir == 0 {
                    continue;
                }
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                let blocked = nx < 0
                    || nx >= w
                    || ny < 0
                    || ny >= h
                    || state.walls[state.idx(nx as usize, ny as usize)];
                let target = if blocked {
                    state.idx(x, y)
                } else {
                    state.idx(nx as usize, ny as usize)
                };
                out.cells[target] |= if blocked { back } else { dir };
            }
        }
    }
    out
}

/// One time step: F = stream after collide. Conserves the particle count.
pub fn step_forward(state: &MicroState) -> MicroState {
    let out = stream(&collide(state));
    debug_assert_eq!(out.count_particles(), state.particles);
    debug_assert!(out.validate().is_ok());
    out
}

/// Time reversal M = collide after velocity reversal.
///
/// Plain velocity reversal does not invert F because collide and stream do
/// not commute; the extra collide makes M F M = F^-1 hold exactly, so
/// evolving M(s) forward retraces the history of s. M is an involution and
/// never moves particles between cells.
pub fn time_reverse(state: &MicroState) -> MicroState {
    collide(&reverse_velocities(state))
}

/// Coarse entropy S/k_B = ln C(n, j), with j = `left_count`.
pub fn coarse_entropy(state: &MicroState) -> Result<f64> {
    box_entropy(state.particles as u64, state.left_count() as u64)
}
