//! Fixed-size complex matrices (2x2 observables, 4x4 two-qubit operators).
//!
//! The whole oracle runs at desk scale on 4x4 matrices, so everything is
//! implemented directly on arrays instead of pulling in a linear algebra
//! stack.

use num_complex::Complex64;

pub type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C; 2]; 2]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C; 4]; 4]);

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn re(x: f64) -> C {
    C::new(x, 0.0)
}

impl Mat2 {
    pub fn zero() -> Mat2 {
        Mat2([[C::default(); 2]; 2])
    }

    pub fn identity() -> Mat2 {
        let mut m = Mat2::zero();
        m.0[0][0] = re(1.0);
        m.0[1][1] = re(1.0);
        m
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + other.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let mut out = *self;
        for row in &mut out.0 {
            for v in row {
                *v *= s;
            }
        }
        out
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out.0[i][j] += self.0[i][k] * other.0[k][j];
                }
            }
        }
        out
    }

    /// Tensor product, row-major two-qubit ordering |00>, |01>, |10>, |11>.
    pub fn kron(&self, other: &Mat2) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.0[2 * i + k][2 * j + l] = self.0[i][j] * other.0[k][l];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }
}

impl Mat4 {
    pub fn zero() -> Mat4 {
        Mat4([[C::default(); 4]; 4])
    }

    pub fn mul(&self, other: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    out.0[i][j] += self.0[i][k] * other.0[k][j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Max |A_ij - conj(A_ji)|: zero for Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }
}

/// Lower bound check on the spectrum of a Hermitian 4x4 matrix via pivoted
/// elimination: succeeds iff the matrix is positive semidefinite with
/// diagonal pivots no smaller than `-tol`.
pub fn is_positive_semidefinite(m: &Mat4, tol: f64) -> bool {
    let mut a = m.0;
    let mut active = [true; 4];
    for _ in 0..4 {
        // Largest remaining diagonal entry as pivot.
        let mut pivot = None;
        let mut best = f64::NEG_INFINITY;
        for (k, &alive) in active.iter().enumerate() {
            if alive && a[k][k].re > best {
                best = a[k][k].re;
                pivot = Some(k);
            }
        }
        let k = match pivot {
            Some(k) => k,
            None => break,
        };
        let d = a[k][k].re;
        if d < -tol {
            return false;
        }
        if d <= tol {
            // All remaining diagonals are <= tol; a negative diagonal or any
            // significant off-diagonal mass left forces a negative eigenvalue.
            for (i, &ai) in active.iter().enumerate() {
                if !ai {
                    continue;
                }
                if a[i][i].re < -tol {
                    return false;
                }
                for (j, &aj) in active.iter().enumerate() {
                    if aj && i != j && a[i][j].norm() > tol.sqrt() {
                        return false;
                    }
                }
            }
            return true;
        }
        active[k] = false;
        for i in 0..4 {
            if !active[i] {
                continue;
            }
            for j in 0..4 {
                if !active[j] {
                    continue;
                }
                let update = a[i][k] * a[k][j] / d;
                a[i][j] -= update;
            }
        }
    }
    true
}
