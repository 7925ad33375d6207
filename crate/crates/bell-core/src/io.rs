//! On-disk model format.
//!
//! A model file is a single JSON document:
//!
//! ```json
//! {
//!   "class": "local",
//!   "outcome_coding": "plus-minus-one",
//!   "settings": { "alice": [0.0, 1.5707963267948966], "bob": [0.7853981633974483, -0.7853981633974483] },
//!   "lambda": { "type": "finite", "atoms": 2 },
//!   "density": [0.5, 0.5],
//!   "responses": { "deterministic": { "alice": [[1, 1], [1, 1]], "bob": [[1, 1], [-1, -1]] } }
//! }
//! ```
//!
//! Retro models use `"class": "retro"`, a `[K][2][2]` density array ordered
//! by outcome slot ((+1, -1) or (1, 0) depending on coding), and a
//! `normalization_mode` of `"strict"` or `"auto"`.

use crate::error::{BellError, Result};
use crate::model::{
    LambdaSpace, LocalModel, Model, NormalizationMode, ResponseTable, RetroModel,
};
use crate::scenario::{OutcomeCoding, Scenario};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelClass {
    #[serde(rename = "local")]
    Local,
    #[serde(rename = "retro")]
    Retro,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartySettings {
    pub alice: Vec<f64>,
    pub bob: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum LambdaSpec {
    #[serde(rename = "finite")]
    Finite { atoms: usize },
    #[serde(rename = "grid")]
    Grid { m: usize },
}

impl From<LambdaSpec> for LambdaSpace {
    fn from(spec: LambdaSpec) -> Self {
        match spec {
            LambdaSpec::Finite { atoms } => LambdaSpace::Finite { atoms },
            LambdaSpec::Grid { m } => LambdaSpace::Grid { cells: m },
        }
    }
}

impl From<LambdaSpace> for LambdaSpec {
    fn from(space: LambdaSpace) -> Self {
        match space {
            LambdaSpace::Finite { atoms } => LambdaSpec::Finite { atoms },
            LambdaSpace::Grid { cells } => LambdaSpec::Grid { m: cells },
        }
    }
}

/// Density payload: a flat array for local models, `[K][2][2]` for retro.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DensityField {
    Local(Vec<f64>),
    Retro(Vec<[[f64; 2]; 2]>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartyTables {
    pub alice: Vec<Vec<f64>>,
    pub bob: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResponsesField {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deterministic: Option<PartyTables>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stochastic: Option<PartyTables>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub class: ModelClass,
    pub outcome_coding: OutcomeCoding,
    pub settings: PartySettings,
    pub lambda: LambdaSpec,
    pub density: DensityField,
    pub responses: ResponsesField,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization_mode: Option<NormalizationMode>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<ModelFile> {
        serde_json::from_str(text).map_err(|e| BellError::ModelFile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files always serialize")
    }

    /// Build and validate the in-memory model.
    pub fn to_model(&self) -> Result<Model> {
        let scenario = Scenario::new(
            self.settings.alice.clone(),
            self.settings.bob.clone(),
            self.outcome_coding,
        );
        let lambda: LambdaSpace = self.lambda.into();
        let responses = match (&self.responses.deterministic, &self.responses.stochastic) {
            (Some(t), None) => (
                ResponseTable::Deterministic(t.alice.clone()),
                ResponseTable::Deterministic(t.bob.clone()),
            ),
            (None, Some(t)) => (
                ResponseTable::Stochastic(t.alice.clone()),
                ResponseTable::Stochastic(t.bob.clone()),
            ),
            _ => {
                return Err(BellError::ModelFile(
                    "responses must contain exactly one of `deterministic` or `stochastic`".into(),
                ))
            }
        };
        let model = match (self.class, &self.density) {
            (ModelClass::Local, DensityField::Local(density)) => Model::Local(LocalModel {
                scenario,
                lambda,
                density: density.clone(),
                alice: responses.0,
                bob: responses.1,
            }),
            (ModelClass::Retro, DensityField::Retro(weight)) => Model::Retro(RetroModel {
                scenario,
                lambda,
                weight: weight.clone(),
                alice: responses.0,
                bob: responses.1,
                mode: self.normalization_mode.unwrap_or(NormalizationMode::Strict),
            }),
            (ModelClass::Local, DensityField::Retro(_)) => {
                return Err(BellError::ModelFile(
                    "local model requires a flat density array".into(),
                ))
            }
            (ModelClass::Retro, DensityField::Local(_)) => {
                return Err(BellError::ModelFile(
                    "retro model requires a [K][2][2] density array".into(),
                ))
            }
        };
        model.validate()?;
        Ok(model)
    }
}

impl From<&Model> for ModelFile {
    fn from(model: &Model) -> Self {
        fn responses_field(alice: &ResponseTable, bob: &ResponseTable) -> ResponsesField {
            match (alice, bob) {
                (ResponseTable::Deterministic(a), ResponseTable::Deterministic(b)) => {
                    ResponsesField {
                        deterministic: Some(PartyTables {
                            alice: a.clone(),
                            bob: b.clone(),
                        }),
                        stochastic: None,
                    }
                }
                (ResponseTable::Stochastic(a), ResponseTable::Stochastic(b)) => ResponsesField {
                    deterministic: None,
                    stochastic: Some(PartyTables {
                        alice: a.clone(),
                        bob: b.clone(),
                    }),
                },
                // Mixed per-party kinds are representable in memory but the
                // file format keeps one kind per model; promote to stochastic.
                (a, b) => ResponsesField {
                    deterministic: None,
                    stochastic: Some(PartyTables {
                        alice: to_stochastic(a),
                        bob: to_stochastic(b),
                    }),
                },
            }
        }

        fn to_stochastic(t: &ResponseTable) -> Vec<Vec<f64>> {
            match t {
                ResponseTable::Stochastic(t) => t.clone(),
                ResponseTable::Deterministic(t) => t
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&v| if v == 1.0 { 1.0 } else { 0.0 })
                            .collect()
                    })
                    .collect(),
            }
        }

        match model {
            Model::Local(m) => ModelFile {
                class: ModelClass::Local,
                outcome_coding: m.scenario.outcome_coding,
                settings: PartySettings {
                    alice: m.scenario.alice_settings.clone(),
                    bob: m.scenario.bob_settings.clone(),
                },
                lambda: m.lambda.into(),
                density: DensityField::Local(m.density.clone()),
                responses: responses_field(&m.alice, &m.bob),
                normalization_mode: None,
            },
            Model::Retro(m) => ModelFile {
                class: ModelClass::Retro,
                outcome_coding: m.scenario.outcome_coding,
                settings: PartySettings {
                    alice: m.scenario.alice_settings.clone(),
                    bob: m.scenario.bob_settings.clone(),
                },
                lambda: m.lambda.into(),
                density: DensityField::Retro(m.weight.clone()),
                responses: responses_field(&m.alice, &m.bob),
                normalization_mode: Some(m.mode),
            },
        }
    }
}
