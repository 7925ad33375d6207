//! Exact two-qubit quantum predictions.
//!
//! Serves as the independent target for model search and statistics: the
//! singlet state, measurement settings along an angle, the correlation
//! `E(theta_a, theta_b)`, and full behavior tables. Under the default spin
//! convention the singlet correlation has the closed form
//! `E = -cos(theta_a - theta_b)`.

pub mod matrix;

use bell_core::{BehaviorTable, OutcomeCoding};
use matrix::{re, Mat2, Mat4};
use thiserror::Error;

/// Validation tolerance for Hermiticity, trace, and projector algebra.
pub const MATRIX_TOL: f64 = 1e-12;

/// Allowed negative slack on the smallest eigenvalue.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("state is not Hermitian (defect {0})")]
    NotHermitian(f64),
    #[error("state trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("state is not positive semidefinite")]
    NotPositive,
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// A two-qubit state as a 4x4 density matrix in the |00>,|01>,|10>,|11>
/// product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(pub Mat4);

impl DensityMatrix {
    pub fn validate(&self) -> Result<()> {
        let defect = self.0.hermiticity_defect();
        if defect > MATRIX_TOL {
            return Err(OracleError::NotHermitian(defect));
        }
        let tr = self.0.trace();
        if (tr.re - 1.0).abs() > MATRIX_TOL || tr.im.abs() > MATRIX_TOL {
            return Err(OracleError::BadTrace(tr.re));
        }
        if !matrix::is_positive_semidefinite(&self.0, PSD_TOL) {
            return Err(OracleError::NotPositive);
        }
        Ok(())
    }

    /// `Tr(rho^2)`; 1 for pure states.
    pub fn purity(&self) -> f64 {
        self.0.mul(&self.0).trace().re
    }
}

/// The singlet state `(|01> - |10>)/sqrt(2)` as a density matrix.
pub fn singlet_state() -> DensityMatrix {
    // Amplitudes (0, 1, -1, 0)/sqrt(2); the projector is real.
    let amp = [0.0, 1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let mut rho = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            rho.0[i][j] = re(amp[i] * amp[j]);
        }
    }
    DensityMatrix(rho)
}

/// Angle convention for the measured observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Observable `cos(theta) Z + sin(theta) X`; singlet correlation
    /// `-cos(theta_a - theta_b)`.
    #[default]
    Spin,
    /// Photon-polarization style: angles are doubled, so the singlet
    /// correlation is `-cos(2 (theta_a - theta_b))`.
    Polarization,
}

impl Convention {
    fn effective_angle(self, theta: f64) -> f64 {
        match self {
            Convention::Spin => theta,
            Convention::Polarization => 2.0 * theta,
        }
    }
}

/// A binary measurement along `angle` under the given convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetting {
    pub angle: f64,
    pub convention: Convention,
}

impl MeasurementSetting {
    pub fn spin(angle: f64) -> Self {
        MeasurementSetting {
            angle,
            convention: Convention::Spin,
        }
    }

    /// The +-1-valued observable `cos(t) Z + sin(t) X`.
    pub fn observable(&self) -> Mat2 {
        let t = self.convention.effective_angle(self.angle);
        let (s, c) = t.sin_cos();
        let mut m = Mat2::zero();
        m.0[0][0] = re(c);
        m.0[0][1] = re(s);
        m.0[1][0] = re(s);
        m.0[1][1] = re(-c);
        m
    }

    /// Projectors onto the +1 and -1 eigenspaces; they sum to the identity.
    pub fn projectors(&self) -> [Mat2; 2] {
        let o = self.observable();
        let id = Mat2::identity();
        [
            id.add(&o).scale(0.5),
            id.add(&o.scale(-1.0)).scale(0.5),
        ]
    }
}

/// `<A B> = Tr[rho (O(theta_a) x O(theta_b))]`.
pub fn correlation(
    state: &DensityMatrix,
    alice: &MeasurementSetting,
    bob: &MeasurementSetting,
) -> Result<f64> {
    state.validate()?;
    let op = alice.observable().kron(&bob.observable());
    Ok(state.0.mul(&op).trace().re)
}

/// Joint outcome probability `p(a, b) = Tr[rho (Pi_a x Pi_b)]`.
pub fn outcome_probability(
    state: &DensityMatrix,
    alice: &MeasurementSetting,
    bob: &MeasurementSetting,
    a_slot: usize,
    b_slot: usize,
) -> Result<f64> {
    state.validate()?;
    let pa = alice.projectors()[a_slot];
    let pb = bob.projectors()[b_slot];
    Ok(state.0.mul(&pa.kron(&pb)).trace().re)
}

/// Full behavior table for per-party angle lists, in +-1 coding.
pub fn quantum_behavior(
    state: &DensityMatrix,
    alice_angles: &[f64],
    bob_angles: &[f64],
    convention: Convention,
) -> Result<BehaviorTable> {
    state.validate()?;
    let mut p = vec![vec![[[0.0; 2]; 2]; bob_angles.len()]; alice_angles.len()];
    for (i, &ta) in alice_angles.iter().enumerate() {
        let a = MeasurementSetting {
            angle: ta,
            convention,
        };
        let pa = a.projectors();
        for (j, &tb) in bob_angles.iter().enumerate() {
            let b = MeasurementSetting {
                angle: tb,
                convention,
            };
            let pb = b.projectors();
            for ai in 0..2 {
                for bi in 0..2 {
                    // Clamp tiny negative round-off so tables stay valid.
                    let prob = state.0.mul(&pa[ai].kron(&pb[bi])).trace().re;
                    p[i][j][ai][bi] = prob.max(0.0);
                }
            }
        }
    }
    Ok(BehaviorTable {
        outcome_coding: OutcomeCoding::PlusMinusOne,
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn singlet_is_a_valid_pure_state() {
        let rho = singlet_state();
        rho.validate().unwrap();
        assert!((rho.0.trace().re - 1.0).abs() <= MATRIX_TOL);
        assert!((rho.purity() - 1.0).abs() <= MATRIX_TOL);
    }

    #[test]
    fn singlet_marginals_are_maximally_mixed() {
        let rho = singlet_state();
        let id = Mat2::identity();
        for step in 0..16 {
            let theta = step as f64 * PI / 8.0;
            let setting = MeasurementSetting::spin(theta);
            for proj in setting.projectors() {
                let p_alice = rho.0.mul(&proj.kron(&id)).trace().re;
                let p_bob = rho.0.mul(&id.kron(&proj)).trace().re;
                assert!((p_alice - 0.5).abs() <= MATRIX_TOL);
                assert!((p_bob - 0.5).abs() <= MATRIX_TOL);
            }
        }
    }

    #[test]
    fn projectors_complete_and_idempotent() {
        for step in 0..9 {
            let setting = MeasurementSetting::spin(step as f64 * PI / 4.5);
            let [p0, p1] = setting.projectors();
            assert!(p0.add(&p1).max_abs_diff(&Mat2::identity()) <= MATRIX_TOL);
            assert!(p0.mul(&p0).max_abs_diff(&p0) <= MATRIX_TOL);
            assert!(p1.mul(&p1).max_abs_diff(&p1) <= MATRIX_TOL);
            assert!(p0.mul(&p1).max_abs_diff(&Mat2::zero()) <= MATRIX_TOL);
        }
    }

    #[test]
    fn equal_angles_perfectly_anticorrelated() {
        let rho = singlet_state();
        let e = correlation(&rho, &MeasurementSetting::spin(0.3), &MeasurementSetting::spin(0.3))
            .unwrap();
        assert!((e + 1.0).abs() <= MATRIX_TOL);
    }

    #[test]
    fn orthogonal_angles_uncorrelated() {
        let rho = singlet_state();
        let e = correlation(
            &rho,
            &MeasurementSetting::spin(FRAC_PI_2),
            &MeasurementSetting::spin(0.0),
        )
        .unwrap();
        assert!(e.abs() <= MATRIX_TOL);
    }

    #[test]
    fn correlation_matches_closed_form() {
        let rho = singlet_state();
        let e = correlation(
            &rho,
            &MeasurementSetting::spin(0.0),
            &MeasurementSetting::spin(FRAC_PI_4),
        )
        .unwrap();
        assert!((e + FRAC_PI_4.cos()).abs() <= MATRIX_TOL);
    }

    #[test]
    fn correlation_depends_only_on_angle_difference() {
        let rho = singlet_state();
        for i in 0..8 {
            for j in 0..8 {
                let ta = i as f64 * 0.77;
                let tb = j as f64 * 0.41;
                let e = correlation(
                    &rho,
                    &MeasurementSetting::spin(ta),
                    &MeasurementSetting::spin(tb),
                )
                .unwrap();
                assert!((e + (ta - tb).cos()).abs() <= MATRIX_TOL);
            }
        }
    }

    #[test]
    fn polarization_convention_doubles_angles() {
        let rho = singlet_state();
        let a = MeasurementSetting {
            angle: 0.0,
            convention: Convention::Polarization,
        };
        let b = MeasurementSetting {
            angle: FRAC_PI_4 / 2.0,
            convention: Convention::Polarization,
        };
        let e = correlation(&rho, &a, &b).unwrap();
        assert!((e + FRAC_PI_4.cos()).abs() <= MATRIX_TOL);
    }

    #[test]
    fn equal_angle_behavior_is_pure_anticorrelation() {
        let rho = singlet_state();
        let t = quantum_behavior(&rho, &[0.4], &[0.4], Convention::Spin).unwrap();
        assert!((t.p[0][0][0][1] - 0.5).abs() <= MATRIX_TOL);
        assert!((t.p[0][0][1][0] - 0.5).abs() <= MATRIX_TOL);
        assert!(t.p[0][0][0][0] <= MATRIX_TOL);
        assert!(t.p[0][0][1][1] <= MATRIX_TOL);
    }

    #[test]
    fn behavior_consistent_with_correlation() {
        let rho = singlet_state();
        let angles_a = [0.0, FRAC_PI_2];
        let angles_b = [FRAC_PI_4, -FRAC_PI_4];
        let t = quantum_behavior(&rho, &angles_a, &angles_b, Convention::Spin).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let direct = correlation(
                    &rho,
                    &MeasurementSetting::spin(angles_a[i]),
                    &MeasurementSetting::spin(angles_b[j]),
                )
                .unwrap();
                assert!((t.expectation(i, j) - direct).abs() <= MATRIX_TOL);
            }
        }
    }

    #[test]
    fn canonical_angles_reach_tsirelson() {
        let rho = singlet_state();
        let t = quantum_behavior(
            &rho,
            &[0.0, FRAC_PI_2],
            &[FRAC_PI_4, -FRAC_PI_4],
            Convention::Spin,
        )
        .unwrap();
        let s = bell_core::chsh_statistic(&t).unwrap();
        assert!((s.abs() - 2.0 * 2f64.sqrt()).abs() <= 1e-9, "|S| = {}", s.abs());
        let report = bell_core::check_no_signalling(&t, 1e-12).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn non_hermitian_state_rejected() {
        let mut bad = singlet_state();
        bad.0 .0[0][1] = matrix::c(0.1, 0.0);
        assert!(matches!(bad.validate(), Err(OracleError::NotHermitian(_))));
    }

    #[test]
    fn negative_state_rejected() {
        // Hermitian, trace 1, but with a -0.5 eigenvalue.
        let mut bad = Mat4::zero();
        bad.0[0][0] = re(1.5);
        bad.0[1][1] = re(-0.5);
        assert!(matches!(
            DensityMatrix(bad).validate(),
            Err(OracleError::NotPositive)
        ));
    }
}
