use crate::error::{BellError, Result};
use crate::model::{LocalModel, Model, NormalizationMode, RetroModel};
use crate::scenario::OutcomeCoding;
use crate::NORMALIZATION_TOL;
use serde::{Deserialize, Serialize};

/// Joint outcome probabilities `p[i][j][a][b]` for settings `(i, j)` and
/// outcome slots `(a, b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehaviorTable {
    pub outcome_coding: OutcomeCoding,
    pub p: Vec<Vec<[[f64; 2]; 2]>>,
}

impl BehaviorTable {
    pub fn alice_settings(&self) -> usize {
        self.p.len()
    }

    pub fn bob_settings(&self) -> usize {
        self.p.first().map_or(0, |row| row.len())
    }

    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.p.iter().enumerate() {
            if row.len() != self.bob_settings() {
                return Err(BellError::ShapeMismatch {
                    location: format!("behavior row {i}"),
                    expected: self.bob_settings(),
                    actual: row.len(),
                });
            }
            for (j, ctx) in row.iter().enumerate() {
                let mut sum = 0.0;
                for a in 0..2 {
                    for b in 0..2 {
                        let v = ctx[a][b];
                        if !(-NORMALIZATION_TOL..=1.0 + NORMALIZATION_TOL).contains(&v) {
                            return Err(BellError::ProbabilityRange {
                                location: format!("p[{i}][{j}][{a}][{b}]"),
                                value: v,
                            });
                        }
                        sum += v;
                    }
                }
                if (sum - 1.0).abs() > NORMALIZATION_TOL {
                    return Err(BellError::BehaviorNormalization {
                        i,
                        j,
                        sum,
                        tol: NORMALIZATION_TOL,
                    });
                }
            }
        }
        Ok(())
    }

    /// `E(i,j) = sum_{a,b} v(a) v(b) p(a,b|i,j)` with the table's own
    /// outcome values.
    pub fn expectation(&self, i: usize, j: usize) -> f64 {
        self.expectation_with(i, j, self.outcome_coding.values())
    }

    fn expectation_with(&self, i: usize, j: usize, values: [f64; 2]) -> f64 {
        let ctx = &self.p[i][j];
        let mut e = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                e += values[a] * values[b] * ctx[a][b];
            }
        }
        e
    }

    /// Alice's marginal `p(a | i)` evaluated in context `(i, j)`.
    pub fn alice_marginal(&self, a: usize, i: usize, j: usize) -> f64 {
        self.p[i][j][a][0] + self.p[i][j][a][1]
    }

    /// Bob's marginal `p(b | j)` evaluated in context `(i, j)`.
    pub fn bob_marginal(&self, b: usize, i: usize, j: usize) -> f64 {
        self.p[i][j][0][b] + self.p[i][j][1][b]
    }
}

/// Assemble the full behavior from the same effective joint the expectation
/// evaluators use.
pub fn behavior(model: &Model) -> Result<BehaviorTable> {
    model.validate()?;
    match model {
        Model::Local(m) => behavior_local(m),
        Model::Retro(m) => behavior_retro(m),
    }
}

fn behavior_local(model: &LocalModel) -> Result<BehaviorTable> {
    let coding = model.scenario.outcome_coding;
    let na = model.scenario.alice_settings.len();
    let nb = model.scenario.bob_settings.len();
    let mut p = vec![vec![[[0.0; 2]; 2]; nb]; na];
    for i in 0..na {
        for j in 0..nb {
            for k in 0..model.lambda.len() {
                let w = model.atom_weight(k);
                for a in 0..2 {
                    for b in 0..2 {
                        p[i][j][a][b] +=
                            w * model.alice.prob(k, i, a, coding) * model.bob.prob(k, j, b, coding);
                    }
                }
            }
        }
    }
    Ok(BehaviorTable {
        outcome_coding: coding,
        p,
    })
}

fn behavior_retro(model: &RetroModel) -> Result<BehaviorTable> {
    let coding = model.scenario.outcome_coding;
    let quad = model.lambda.quadrature();
    let na = model.scenario.alice_settings.len();
    let nb = model.scenario.bob_settings.len();
    let mut p = vec![vec![[[0.0; 2]; 2]; nb]; na];
    for i in 0..na {
        for j in 0..nb {
            let mut z = 0.0;
            for k in 0..model.lambda.len() {
                for a in 0..2 {
                    for b in 0..2 {
                        let q = model.weight[k][a][b]
                            * quad
                            * model.alice.prob(k, i, a, coding)
                            * model.bob.prob(k, j, b, coding);
                        p[i][j][a][b] += q;
                        z += q;
                    }
                }
            }
            match model.mode {
                NormalizationMode::Strict => {
                    if (z - 1.0).abs() > NORMALIZATION_TOL {
                        return Err(BellError::ContextNormalization {
                            i,
                            j,
                            z,
                            tol: NORMALIZATION_TOL,
                        });
                    }
                }
                NormalizationMode::Auto => {
                    if z <= 0.0 {
                        return Err(BellError::DegenerateContext { i, j });
                    }
                    for a in 0..2 {
                        for b in 0..2 {
                            p[i][j][a][b] /= z;
                        }
                    }
                }
            }
        }
    }
    Ok(BehaviorTable {
        outcome_coding: coding,
        p,
    })
}

fn require_two_by_two(table: &BehaviorTable) -> Result<()> {
    if table.alice_settings() != 2 || table.bob_settings() != 2 {
        return Err(BellError::ScenarioShape {
            alice: table.alice_settings(),
            bob: table.bob_settings(),
        });
    }
    Ok(())
}

/// CHSH statistic `S = E(0,0) + E(0,1) + E(1,0) - E(1,1)` in +-1 values.
///
/// Detect coding is mapped 1 -> +1, 0 -> -1; callers should warn when the
/// table's coding is `DetectZeroOne`.
pub fn chsh_statistic(table: &BehaviorTable) -> Result<f64> {
    table.validate()?;
    require_two_by_two(table)?;
    let values = table.outcome_coding.chsh_values();
    let e = |i, j| table.expectation_with(i, j, values);
    Ok(e(0, 0) + e(0, 1) + e(1, 0) - e(1, 1))
}

/// Clauser-Horne statistic in detection probabilities:
/// `J = p11(0,0) + p11(0,1) + p11(1,0) - p11(1,1) - pA1(0) - pB1(0)`.
/// `J <= 0` for every local model. Singles are read from context (0,0).
pub fn ch_statistic(table: &BehaviorTable) -> Result<f64> {
    table.validate()?;
    require_two_by_two(table)?;
    if table.outcome_coding != OutcomeCoding::DetectZeroOne {
        return Err(BellError::CodingMismatch {
            expected: OutcomeCoding::DetectZeroOne,
            actual: table.outcome_coding,
        });
    }
    // Slot 0 is the detection outcome.
    let p11 = |i: usize, j: usize| table.p[i][j][0][0];
    let pa1 = table.alice_marginal(0, 0, 0);
    let pb1 = table.bob_marginal(0, 0, 0);
    Ok(p11(0, 0) + p11(0, 1) + p11(1, 0) - p11(1, 1) - pa1 - pb1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Party {
    Alice,
    Bob,
}

/// One marginal's worst-case dependence on the remote setting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginalDeviation {
    pub party: Party,
    pub outcome: usize,
    pub setting: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoSignallingReport {
    pub tol: f64,
    pub max_deviation: f64,
    pub pass: bool,
    pub entries: Vec<MarginalDeviation>,
}

/// For each party, outcome, and local setting, the maximum absolute change
/// of the marginal across remote settings. Pass iff the worst change is
/// within `tol`.
pub fn check_no_signalling(table: &BehaviorTable, tol: f64) -> Result<NoSignallingReport> {
    table.validate()?;
    let na = table.alice_settings();
    let nb = table.bob_settings();
    let mut entries = Vec::new();
    let mut max_deviation: f64 = 0.0;
    for a in 0..2 {
        for i in 0..na {
            let marginals: Vec<f64> = (0..nb).map(|j| table.alice_marginal(a, i, j)).collect();
            let dev = spread(&marginals);
            max_deviation = max_deviation.max(dev);
            entries.push(MarginalDeviation {
                party: Party::Alice,
                outcome: a,
                setting: i,
                deviation: dev,
            });
        }
    }
    for b in 0..2 {
        for j in 0..nb {
            let marginals: Vec<f64> = (0..na).map(|i| table.bob_marginal(b, i, j)).collect();
            let dev = spread(&marginals);
            max_deviation = max_deviation.max(dev);
            entries.push(MarginalDeviation {
                party: Party::Bob,
                outcome: b,
                setting: j,
                deviation: dev,
            });
        }
    }
    Ok(NoSignallingReport {
        tol,
        max_deviation,
        pass: max_deviation <= tol,
        entries,
    })
}

fn spread(values: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if values.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{LambdaSpace, LocalModel, ResponseTable};
    use crate::scenario::Scenario;
    

    fn pm_scenario() -> Scenario {
        Scenario::new(vec![0.0, 1.0], vec![0.0, 1.0], OutcomeCoding::PlusMinusOne)
    }

    fn detect_scenario() -> Scenario {
        Scenario::new(vec![0.0, 1.0], vec![0.0, 1.0], OutcomeCoding::DetectZeroOne)
    }

    fn deterministic_plus() -> Model {
        Model::Local(LocalModel {
            scenario: pm_scenario(),
            lambda: LambdaSpace::Finite { atoms: 1 },
            density: vec![1.0],
            alice: ResponseTable::Deterministic(vec![vec![1.0, 1.0]]),
            bob: ResponseTable::Deterministic(vec![vec![1.0, 1.0]]),
        })
    }

    fn uniform_coin() -> Model {
        Model::Local(LocalModel {
            scenario: pm_scenario(),
            lambda: LambdaSpace::Finite { atoms: 1 },
            density: vec![1.0],
            alice: ResponseTable::Stochastic(vec![vec![0.5, 0.5]]),
            bob: ResponseTable::Stochastic(vec![vec![0.5, 0.5]]),
        })
    }

    #[test]
    fn deterministic_model_gives_point_mass_table() {
        let t = behavior(&deterministic_plus()).unwrap();
        t.validate().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(t.p[i][j][0][0], 1.0);
                assert_eq!(t.p[i][j][1][1], 0.0);
            }
        }
    }

    #[test]
    fn uniform_coin_gives_quarter_table() {
        let t = behavior(&uniform_coin()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        assert!((t.p[i][j][a][b] - 0.25).abs() <= 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn table_expectations_match_direct_evaluator() {
        let m = Model::Local(LocalModel {
            scenario: pm_scenario(),
            lambda: LambdaSpace::Finite { atoms: 3 },
            density: vec![0.2, 0.5, 0.3],
            alice: ResponseTable::Stochastic(vec![
                vec![0.1, 0.9],
                vec![0.6, 0.4],
                vec![0.8, 0.2],
            ]),
            bob: ResponseTable::Stochastic(vec![
                vec![0.3, 0.7],
                vec![0.5, 0.5],
                vec![0.9, 0.1],
            ]),
        });
        let t = behavior(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let direct = m.expectation(i, j).unwrap();
                assert!((t.expectation(i, j) - direct).abs() <= crate::IDENTITY_TOL);
            }
        }
    }

    #[test]
    fn chsh_of_all_plus_is_two() {
        let t = behavior(&deterministic_plus()).unwrap();
        assert_eq!(chsh_statistic(&t).unwrap(), 2.0);
    }

    #[test]
    fn chsh_of_uniform_table_is_zero() {
        let t = behavior(&uniform_coin()).unwrap();
        assert!(chsh_statistic(&t).unwrap().abs() <= 1e-15);
    }

    #[test]
    fn chsh_rejects_wrong_shape() {
        let t = BehaviorTable {
            outcome_coding: OutcomeCoding::PlusMinusOne,
            p: vec![vec![[[0.25; 2]; 2]; 1]; 1],
        };
        assert!(matches!(
            chsh_statistic(&t),
            Err(BellError::ScenarioShape { alice: 1, bob: 1 })
        ));
    }

    #[test]
    fn chsh_maps_detect_coding_to_plus_minus() {
        // Always-detect in detect coding is the all-plus model after mapping.
        let m = Model::Local(LocalModel {
            scenario: detect_scenario(),
            lambda: LambdaSpace::Finite { atoms: 1 },
            density: vec![1.0],
            alice: ResponseTable::Deterministic(vec![vec![1.0, 1.0]]),
            bob: ResponseTable::Deterministic(vec![vec![1.0, 1.0]]),
        });
        let t = behavior(&m).unwrap();
        assert_eq!(chsh_statistic(&t).unwrap(), 2.0);
    }

    #[test]
    fn ch_of_never_detect_is_zero() {
        let m = Model::Local(LocalModel {
            scenario: detect_scenario(),
            lambda: LambdaSpace::Finite { atoms: 1 },
            density: vec![1.0],
            alice: ResponseTable::Deterministic(vec![vec![0.0, 0.0]]),
            bob: ResponseTable::Deterministic(vec![vec![0.0, 0.0]]),
        });
        let t = behavior(&m).unwrap();
        assert_eq!(ch_statistic(&t).unwrap(), 0.0);
    }

    #[test]
    fn ch_of_always_detect_is_zero() {
        let m = Model::Local(LocalModel {
            scenario: detect_scenario(),
            lambda: LambdaSpace::Finite { atoms: 1 },
            density: vec![1.0],
            alice: ResponseTable::Deterministic(vec![vec![1.0, 1.0]]),
            bob: ResponseTable::Deterministic(vec![vec![1.0, 1.0]]),
        });
        let t = behavior(&m).unwrap();
        // 1 + 1 + 1 - 1 - 1 - 1 = 0.
        assert_eq!(ch_statistic(&t).unwrap(), 0.0);
    }

    #[test]
    fn ch_rejects_plus_minus_coding() {
        let t = behavior(&uniform_coin()).unwrap();
        assert!(matches!(
            ch_statistic(&t),
            Err(BellError::CodingMismatch { .. })
        ));
    }

    #[test]
    fn local_behavior_is_no_signalling() {
        let m = Model::Local(LocalModel {
            scenario: pm_scenario(),
            lambda: LambdaSpace::Finite { atoms: 2 },
            density: vec![0.4, 0.6],
            alice: ResponseTable::Stochastic(vec![vec![0.15, 0.85], vec![0.55, 0.35]]),
            bob: ResponseTable::Stochastic(vec![vec![0.25, 0.65], vec![0.75, 0.45]]),
        });
        let t = behavior(&m).unwrap();
        let report = check_no_signalling(&t, 1e-12).unwrap();
        assert!(report.pass, "max deviation {}", report.max_deviation);
    }

    #[test]
    fn signalling_table_fails() {
        // Bob's marginal depends on Alice's setting.
        let mut p = vec![vec![[[0.0; 2]; 2]; 2]; 2];
        for j in 0..2 {
            p[0][j][0][0] = 1.0; // (i=0): Bob always slot 0
            p[1][j][0][1] = 1.0; // (i=1): Bob always slot 1
        }
        let t = BehaviorTable {
            outcome_coding: OutcomeCoding::PlusMinusOne,
            p,
        };
        let report = check_no_signalling(&t, 1e-12).unwrap();
        assert!(!report.pass);
        assert!((report.max_deviation - 1.0).abs() <= 1e-15);
    }
}
