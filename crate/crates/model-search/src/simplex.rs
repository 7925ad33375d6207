//! Dense two-phase simplex with Bland's rule.
//!
//! Sized for the problems in this crate: tens of variables, exact
//! certificates. Maximizes `c . x` subject to equality and `<=` rows with
//! `x >= 0`. Every answer carries a certificate: an optimal basis with dual
//! values, or a Farkas vector proving infeasibility.

use thiserror::Error;

/// Pivot tolerance: entries smaller than this are treated as zero.
pub const PIVOT_TOL: f64 = 1e-9;

/// Phase-1 objective above this value means infeasible.
pub const FEASIBILITY_TOL: f64 = 1e-7;

/// Default iteration limit across both phases.
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>, rhs: f64) -> Self {
        Constraint { coeffs, rhs }
    }
}

/// Maximize `objective . x` s.t. `eq` rows hold with equality, `ub` rows as
/// `<=`, and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub eq: Vec<Constraint>,
    pub ub: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    /// Optimum of the (maximization) objective.
    pub objective: f64,
    /// Primal point over the original variables.
    pub x: Vec<f64>,
    /// Optimal basis as variable indices (slacks included past `x.len()`).
    pub basis: Vec<usize>,
    /// Dual values, one per row, ordered eq rows then ub rows.
    pub dual: Vec<f64>,
    pub iterations: usize,
}

/// Proof of infeasibility: `y . A <= 0` componentwise (with `y_i <= 0` on
/// `<=` rows) while `y . b > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FarkasCertificate {
    pub y: Vec<f64>,
    /// Phase-1 optimum: total constraint violation that cannot be removed.
    pub infeasibility: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible(FarkasCertificate),
    Unbounded,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("iteration limit reached after {0} pivots")]
    IterationLimit(usize),
    #[error("inconsistent constraint shapes: row has {actual} coefficients, expected {expected}")]
    Shape { expected: usize, actual: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

struct Tableau {
    rows: Vec<Vec<f64>>, // m x (cols + 1), last entry is rhs
    basis: Vec<usize>,
    cols: usize,
    /// Original row index per tableau row (rows can be dropped as redundant).
    row_origin: Vec<usize>,
    /// Sign applied to each original row to make its rhs nonnegative.
    row_sign: Vec<f64>,
    iterations: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = 1.0 / self.rows[row][col];
        for v in &mut self.rows[row] {
            *v *= inv;
        }
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let factor = self.rows[r][col];
            if factor.abs() <= PIVOT_TOL * PIVOT_TOL {
                continue;
            }
            for c in 0..=self.cols {
                let delta = factor * self.rows[row][c];
                self.rows[r][c] -= delta;
            }
        }
        self.basis[row] = col;
        self.iterations += 1;
    }

    /// Reduced-cost row for minimization costs `c` given the current basis.
    fn reduced_costs(&self, costs: &[f64]) -> (Vec<f64>, f64) {
        let mut r = costs.to_vec();
        let mut value = 0.0;
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = costs[b];
            if cb == 0.0 {
                continue;
            }
            value += cb * self.rows[i][self.cols];
            for c in 0..self.cols {
                r[c] -= cb * self.rows[i][c];
            }
        }
        (r, value)
    }

    /// Bland's rule: lowest-index improving column, lowest-index blocking
    /// basic variable on ratio ties. Returns Ok(true) when optimal,
    /// Ok(false) when the problem is unbounded in the entering column.
    fn run(&mut self, costs: &[f64], allowed: &dyn Fn(usize) -> bool) -> Result<bool, LpError> {
        loop {
            if self.iterations > MAX_ITERATIONS {
                return Err(LpError::IterationLimit(self.iterations));
            }
            let (reduced, _) = self.reduced_costs(costs);
            let entering = (0..self.cols)
                .find(|&j| allowed(j) && !self.basis.contains(&j) && reduced[j] < -PIVOT_TOL);
            let entering = match entering {
                Some(j) => j,
                None => return Ok(true),
            };
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.rows.len() {
                let a = self.rows[i][entering];
                if a > PIVOT_TOL {
                    let ratio = self.rows[i][self.cols] / a;
                    let better = ratio < best_ratio - PIVOT_TOL
                        || ((ratio - best_ratio).abs() <= PIVOT_TOL
                            && leave.is_some_and(|l| self.basis[i] < self.basis[l]));
                    if leave.is_none() || better {
                        best_ratio = ratio.min(best_ratio);
                        leave = Some(i);
                    }
                }
            }
            match leave {
                Some(row) => self.pivot(row, entering),
                None => return Ok(false),
            }
        }
    }
}

/// Solve `lp` to optimality or produce a certificate of infeasibility or
/// unboundedness.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    let n = lp.objective.len();
    let n_ub = lp.ub.len();
    let m = lp.eq.len() + n_ub;
    for row in lp.eq.iter().chain(lp.ub.iter()) {
        if row.coeffs.len() != n {
            return Err(LpError::Shape {
                expected: n,
                actual: row.coeffs.len(),
            });
        }
    }

    let slack_start = n;
    let art_start = n + n_ub;
    let cols = n + n_ub + m;

    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        cols,
        row_origin: (0..m).collect(),
        row_sign: vec![1.0; m],
        iterations: 0,
    };
    for (i, row) in lp.eq.iter().chain(lp.ub.iter()).enumerate() {
        let mut r = vec![0.0; cols + 1];
        r[..n].copy_from_slice(&row.coeffs);
        if i >= lp.eq.len() {
            r[slack_start + (i - lp.eq.len())] = 1.0;
        }
        r[cols] = row.rhs;
        if row.rhs < 0.0 {
            for v in &mut r {
                *v = -*v;
            }
            t.row_sign[i] = -1.0;
        }
        r[art_start + i] = 1.0;
        t.rows.push(r);
        t.basis.push(art_start + i);
    }

    // Phase 1: drive the artificial variables to zero.
    let mut phase1 = vec![0.0; cols];
    for c in art_start..cols {
        phase1[c] = 1.0;
    }
    if !t.run(&phase1, &|_| true)? {
        return Err(LpError::Numerical(
            "phase 1 reported unbounded; artificial objective is bounded below by 0".into(),
        ));
    }
    let (reduced1, value1) = t.reduced_costs(&phase1);
    if value1 > FEASIBILITY_TOL {
        // Farkas vector from the phase-1 duals, restored to original row
        // order and orientation.
        let mut y = vec![0.0; m];
        for i in 0..t.rows.len() {
            let origin = t.row_origin[i];
            y[origin] = t.row_sign[origin] * (1.0 - reduced1[art_start + origin]);
        }
        return Ok(LpOutcome::Infeasible(FarkasCertificate {
            y,
            infeasibility: value1,
        }));
    }

    // Pivot leftover artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art_start {
            let pivot_col =
                (0..art_start).find(|&j| !t.basis.contains(&j) && t.rows[i][j].abs() > PIVOT_TOL);
            match pivot_col {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    t.row_origin.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2: minimize -objective over the real and slack columns.
    let mut phase2 = vec![0.0; cols];
    for c in 0..n {
        phase2[c] = -lp.objective[c];
    }
    if !t.run(&phase2, &|j| j < art_start)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x = vec![0.0; n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[i][t.cols];
        }
    }
    let objective: f64 = lp
        .objective
        .iter()
        .zip(&x)
        .map(|(c, v)| c * v)
        .sum();

    let (reduced2, value2) = t.reduced_costs(&phase2);
    if (objective + value2).abs() > 1e-8 * (1.0 + objective.abs()) {
        return Err(LpError::Numerical(format!(
            "objective mismatch: direct {objective}, tableau {}",
            -value2
        )));
    }
    verify_feasible(lp, &x)?;

    let mut dual = vec![0.0; m];
    for i in 0..t.rows.len() {
        let origin = t.row_origin[i];
        // Artificial columns have zero phase-2 cost, so their reduced cost
        // equals -y of the minimization, i.e. +y of the maximization.
        dual[origin] = t.row_sign[origin] * reduced2[art_start + origin];
    }

    Ok(LpOutcome::Optimal(LpSolution {
        objective,
        x,
        basis: t.basis.clone(),
        dual,
        iterations: t.iterations,
    }))
}

fn verify_feasible(lp: &LinearProgram, x: &[f64]) -> Result<(), LpError> {
    let dot = |row: &Constraint| -> f64 { row.coeffs.iter().zip(x).map(|(a, v)| a * v).sum() };
    for (i, row) in lp.eq.iter().enumerate() {
        let lhs = dot(row);
        if (lhs - row.rhs).abs() > 1e-8 * (1.0 + row.rhs.abs()) {
            return Err(LpError::Numerical(format!(
                "equality row {i} violated: {lhs} != {}",
                row.rhs
            )));
        }
    }
    for (i, row) in lp.ub.iter().enumerate() {
        let lhs = dot(row);
        if lhs > row.rhs + 1e-8 * (1.0 + row.rhs.abs()) {
            return Err(LpError::Numerical(format!(
                "inequality row {i} violated: {lhs} > {}",
                row.rhs
            )));
        }
    }
    for (i, &v) in x.iter().enumerate() {
        if v < -1e-8 {
            return Err(LpError::Numerical(format!("x[{i}] = {v} < 0")));
        }
    }
    Ok(())
}

/// Check a Farkas certificate against the program it claims infeasible:
/// `y . A <= tol` on every column (with `y <= tol` on slack columns) and
/// `y . b >= tol`.
pub fn verify_farkas(lp: &LinearProgram, cert: &FarkasCertificate, tol: f64) -> bool {
    let n = lp.objective.len();
    let m = lp.eq.len() + lp.ub.len();
    if cert.y.len() != m {
        return false;
    }
    let scale = cert
        .y
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    for c in 0..n {
        let mut dot = 0.0;
        for (i, row) in lp.eq.iter().chain(lp.ub.iter()).enumerate() {
            dot += cert.y[i] * row.coeffs[c];
        }
        if dot > tol * scale {
            return false;
        }
    }
    for i in lp.eq.len()..m {
        if cert.y[i] > tol * scale {
            return false;
        }
    }
    let yb: f64 = lp
        .eq
        .iter()
        .chain(lp.ub.iter())
        .enumerate()
        .map(|(i, row)| cert.y[i] * row.rhs)
        .sum();
    yb >= tol * scale
}
