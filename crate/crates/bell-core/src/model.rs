use crate::error::{BellError, Result};
use crate::scenario::{OutcomeCoding, Scenario};
use crate::NORMALIZATION_TOL;
use serde::{Deserialize, Serialize};

/// Hidden-state space: a finite atom list, or a uniform grid on the unit
/// interval evaluated by midpoint quadrature (each cell carries weight 1/m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LambdaSpace {
    Finite { atoms: usize },
    Grid { cells: usize },
}

impl LambdaSpace {
    pub fn len(&self) -> usize {
        match *self {
            LambdaSpace::Finite { atoms } => atoms,
            LambdaSpace::Grid { cells } => cells,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Quadrature factor applied to stored density values.
    pub fn quadrature(&self) -> f64 {
        match *self {
            LambdaSpace::Finite { .. } => 1.0,
            LambdaSpace::Grid { cells } => 1.0 / cells as f64,
        }
    }
}

/// Per-party response functions, indexed `[atom][setting]`.
///
/// Deterministic tables hold outcome values (must belong to the coding's
/// outcome set); stochastic tables hold the probability of the first outcome
/// (+1 or 1 depending on coding).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ResponseTable {
    Deterministic(Vec<Vec<f64>>),
    Stochastic(Vec<Vec<f64>>),
}

impl ResponseTable {
    fn table(&self) -> &Vec<Vec<f64>> {
        match self {
            ResponseTable::Deterministic(t) | ResponseTable::Stochastic(t) => t,
        }
    }

    pub fn validate(
        &self,
        atoms: usize,
        settings: usize,
        coding: OutcomeCoding,
        party: &str,
    ) -> Result<()> {
        let t = self.table();
        if t.len() != atoms {
            return Err(BellError::ShapeMismatch {
                location: format!("{party} responses (atoms)"),
                expected: atoms,
                actual: t.len(),
            });
        }
        for (k, row) in t.iter().enumerate() {
            if row.len() != settings {
                return Err(BellError::ShapeMismatch {
                    location: format!("{party} responses atom {k} (settings)"),
                    expected: settings,
                    actual: row.len(),
                });
            }
            for (s, &v) in row.iter().enumerate() {
                match self {
                    ResponseTable::Deterministic(_) => {
                        let [v0, v1] = coding.values();
                        if v != v0 && v != v1 {
                            return Err(BellError::BadOutcome {
                                location: format!("{party} responses[{k}][{s}]"),
                                value: v,
                                coding,
                            });
                        }
                    }
                    ResponseTable::Stochastic(_) => {
                        if !(0.0..=1.0).contains(&v) {
                            return Err(BellError::ProbabilityRange {
                                location: format!("{party} responses[{k}][{s}]"),
                                value: v,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// p(outcome slot | setting, atom).
    pub fn prob(&self, atom: usize, setting: usize, slot: usize, coding: OutcomeCoding) -> f64 {
        match self {
            ResponseTable::Deterministic(t) => {
                let v = t[atom][setting];
                let hit = v == coding.values()[slot];
                if hit {
                    1.0
                } else {
                    0.0
                }
            }
            ResponseTable::Stochastic(t) => {
                let p = t[atom][setting];
                if slot == 0 {
                    p
                } else {
                    1.0 - p
                }
            }
        }
    }

    /// E[outcome | setting, atom] under the coding's outcome values.
    pub fn expectation(&self, atom: usize, setting: usize, coding: OutcomeCoding) -> f64 {
        let [v0, v1] = coding.values();
        match self {
            ResponseTable::Deterministic(t) => t[atom][setting],
            ResponseTable::Stochastic(t) => {
                let p = t[atom][setting];
                p * v0 + (1.0 - p) * v1
            }
        }
    }
}

/// Bell's factorized correlation model: density over hidden states with
/// setting-local responses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalModel {
    pub scenario: Scenario,
    pub lambda: LambdaSpace,
    /// Density values per atom (grid densities carry the 1/m quadrature
    /// factor implicitly; `atom_weight` applies it).
    pub density: Vec<f64>,
    pub alice: ResponseTable,
    pub bob: ResponseTable,
}

impl LocalModel {
    /// Probability mass of atom `k` after quadrature.
    pub fn atom_weight(&self, k: usize) -> f64 {
        self.density[k] * self.lambda.quadrature()
    }

    pub fn validate(&self) -> Result<()> {
        let atoms = self.lambda.len();
        if self.density.len() != atoms {
            return Err(BellError::ShapeMismatch {
                location: "density".into(),
                expected: atoms,
                actual: self.density.len(),
            });
        }
        for (k, &d) in self.density.iter().enumerate() {
            if d < 0.0 {
                return Err(BellError::NegativeWeight {
                    location: format!("density[{k}]"),
                    value: d,
                });
            }
        }
        let sum: f64 = (0..atoms).map(|k| self.atom_weight(k)).sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(BellError::Normalization {
                name: "density".into(),
                sum,
                tol: NORMALIZATION_TOL,
            });
        }
        let coding = self.scenario.outcome_coding;
        self.alice
            .validate(atoms, self.scenario.alice_settings.len(), coding, "alice")?;
        self.bob
            .validate(atoms, self.scenario.bob_settings.len(), coding, "bob")?;
        Ok(())
    }
}

/// Joint density over hidden states `lambda` and backward-light-cone context
/// atoms `mu`. Marginalizing out `mu` recovers a plain source density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextualDensity {
    /// `sigma[lambda][mu]`, nonnegative, total mass 1.
    pub sigma: Vec<Vec<f64>>,
}

impl ContextualDensity {
    pub fn validate(&self) -> Result<()> {
        let mut sum = 0.0;
        for (k, row) in self.sigma.iter().enumerate() {
            for (m, &w) in row.iter().enumerate() {
                if w < 0.0 {
                    return Err(BellError::NegativeWeight {
                        location: format!("sigma[{k}][{m}]"),
                        value: w,
                    });
                }
                sum += w;
            }
        }
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(BellError::Normalization {
                name: "sigma".into(),
                sum,
                tol: NORMALIZATION_TOL,
            });
        }
        Ok(())
    }

    /// `rho(lambda) = sum_mu sigma(lambda, mu)`.
    pub fn marginalize(&self) -> Vec<f64> {
        self.sigma.iter().map(|row| row.iter().sum()).collect()
    }
}

/// How retro-model context masses are treated by the evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalizationMode {
    /// Every context mass Z_ij must equal 1 (within tolerance).
    #[serde(rename = "strict")]
    Strict,
    /// Expectations are divided by Z_ij (which must be positive).
    #[serde(rename = "auto")]
    Auto,
}

/// Outcome-conditioned correlation model: the source weight depends on the
/// pair of outcomes in addition to the hidden state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetroModel {
    pub scenario: Scenario,
    pub lambda: LambdaSpace,
    /// `weight[atom][a_slot][b_slot]`, nonnegative.
    pub weight: Vec<[[f64; 2]; 2]>,
    pub alice: ResponseTable,
    pub bob: ResponseTable,
    pub mode: NormalizationMode,
}

impl RetroModel {
    pub fn validate(&self) -> Result<()> {
        let atoms = self.lambda.len();
        if self.weight.len() != atoms {
            return Err(BellError::ShapeMismatch {
                location: "weight".into(),
                expected: atoms,
                actual: self.weight.len(),
            });
        }
        for (k, w) in self.weight.iter().enumerate() {
            for a in 0..2 {
                for b in 0..2 {
                    if w[a][b] < 0.0 {
                        return Err(BellError::NegativeWeight {
                            location: format!("weight[{k}][{a}][{b}]"),
                            value: w[a][b],
                        });
                    }
                }
            }
        }
        let coding = self.scenario.outcome_coding;
        self.alice
            .validate(atoms, self.scenario.alice_settings.len(), coding, "alice")?;
        self.bob
            .validate(atoms, self.scenario.bob_settings.len(), coding, "bob")?;
        if self.mode == NormalizationMode::Strict {
            for i in 0..self.scenario.alice_settings.len() {
                for j in 0..self.scenario.bob_settings.len() {
                    let z = self.context_mass(i, j);
                    if (z - 1.0).abs() > NORMALIZATION_TOL {
                        return Err(BellError::ContextNormalization {
                            i,
                            j,
                            z,
                            tol: NORMALIZATION_TOL,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Effective mass `Z_ij = sum_{lambda,a,b} w(lambda,a,b) p(a|i,lambda) p(b|j,lambda)`.
    pub fn context_mass(&self, i: usize, j: usize) -> f64 {
        let coding = self.scenario.outcome_coding;
        let quad = self.lambda.quadrature();
        let mut z = 0.0;
        for k in 0..self.lambda.len() {
            for a in 0..2 {
                for b in 0..2 {
                    z += self.weight[k][a][b]
                        * quad
                        * self.alice.prob(k, i, a, coding)
                        * self.bob.prob(k, j, b, coding);
                }
            }
        }
        z
    }
}

/// A model of either class, as stored in model files.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Local(LocalModel),
    Retro(RetroModel),
}

impl Model {
    pub fn scenario(&self) -> &Scenario {
        match self {
            Model::Local(m) => &m.scenario,
            Model::Retro(m) => &m.scenario,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Model::Local(m) => m.validate(),
            Model::Retro(m) => m.validate(),
        }
    }

    pub fn expectation(&self, i: usize, j: usize) -> Result<f64> {
        match self {
            Model::Local(m) => expectation_local(m, i, j),
            Model::Retro(m) => expectation_retro(m, i, j),
        }
    }
}

fn check_setting(party: &'static str, index: usize, count: usize) -> Result<()> {
    if index >= count {
        return Err(BellError::SettingIndex {
            party,
            index,
            count,
        });
    }
    Ok(())
}

pub(crate) fn check_context(scenario: &Scenario, i: usize, j: usize) -> Result<()> {
    check_setting("alice", i, scenario.alice_settings.len())?;
    check_setting("bob", j, scenario.bob_settings.len())
}

/// `<AB>_ij = sum_lambda rho(lambda) E[a|A_i,lambda] E[b|B_j,lambda]`.
pub fn expectation_local(model: &LocalModel, i: usize, j: usize) -> Result<f64> {
    model.validate()?;
    check_context(&model.scenario, i, j)?;
    let coding = model.scenario.outcome_coding;
    let mut e = 0.0;
    for k in 0..model.lambda.len() {
        e += model.atom_weight(k)
            * model.alice.expectation(k, i, coding)
            * model.bob.expectation(k, j, coding);
    }
    Ok(e)
}

/// The same expectation evaluated through the explicit double sum over
/// `(lambda, mu)`, using `sigma` in place of the model's own density.
pub fn expectation_contextual(
    model: &LocalModel,
    sigma: &ContextualDensity,
    i: usize,
    j: usize,
) -> Result<f64> {
    sigma.validate()?;
    check_context(&model.scenario, i, j)?;
    if sigma.sigma.len() != model.lambda.len() {
        return Err(BellError::ShapeMismatch {
            location: "sigma (lambda atoms)".into(),
            expected: model.lambda.len(),
            actual: sigma.sigma.len(),
        });
    }
    let coding = model.scenario.outcome_coding;
    let mut e = 0.0;
    for (k, row) in sigma.sigma.iter().enumerate() {
        let ea = model.alice.expectation(k, i, coding);
        let eb = model.bob.expectation(k, j, coding);
        for &w in row {
            e += w * ea * eb;
        }
    }
    Ok(e)
}

/// `rho(lambda) = sum_mu sigma(lambda, mu)`, validated.
pub fn marginalize_context(sigma: &ContextualDensity) -> Result<Vec<f64>> {
    sigma.validate()?;
    Ok(sigma.marginalize())
}

/// `<AB>_ij` for a retro model.
///
/// The effective joint is `q_ij(lambda,a,b) = w(lambda,a,b) p(a|A_i,lambda)
/// p(b|B_j,lambda)` with mass `Z_ij`. Strict mode requires `Z_ij = 1`; auto
/// mode divides by `Z_ij`.
pub fn expectation_retro(model: &RetroModel, i: usize, j: usize) -> Result<f64> {
    model.validate()?;
    check_context(&model.scenario, i, j)?;
    let coding = model.scenario.outcome_coding;
    let values = coding.values();
    let quad = model.lambda.quadrature();
    let mut z = 0.0;
    let mut e = 0.0;
    for k in 0..model.lambda.len() {
        for a in 0..2 {
            for b in 0..2 {
                let q = model.weight[k][a][b]
                    * quad
                    * model.alice.prob(k, i, a, coding)
                    * model.bob.prob(k, j, b, coding);
                z += q;
                e += q * values[a] * values[b];
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
            Ok(e)
        }
        NormalizationMode::Auto => {
            if z <= 0.0 {
                return Err(BellError::DegenerateContext { i, j });
            }
            Ok(e / z)
        }
    }
}
