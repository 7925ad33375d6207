use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::fmt;

/// How outcomes are labeled and valued.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeCoding {
    /// Outcomes are +1 and -1 (spin-style).
    #[serde(rename = "plus-minus-one")]
    PlusMinusOne,
    /// Outcomes are 1 (detection) and 0 (no detection).
    #[serde(rename = "detect-zero-one")]
    DetectZeroOne,
}

impl OutcomeCoding {
    /// Numeric outcome values, indexed by outcome slot.
    ///
    /// Slot 0 is the "first" outcome (+1 or 1), slot 1 the second (-1 or 0).
    pub fn values(self) -> [f64; 2] {
        match self {
            OutcomeCoding::PlusMinusOne => [1.0, -1.0],
            OutcomeCoding::DetectZeroOne => [1.0, 0.0],
        }
    }

    /// Values used by the CHSH statistic: detect coding maps 1 -> +1, 0 -> -1.
    pub fn chsh_values(self) -> [f64; 2] {
        [1.0, -1.0]
    }
}

impl fmt::Display for OutcomeCoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeCoding::PlusMinusOne => write!(f, "plus-minus-one"),
            OutcomeCoding::DetectZeroOne => write!(f, "detect-zero-one"),
        }
    }
}

/// Measurement scenario: per-party setting parameters (radians) and the
/// outcome coding. The statistics require exactly two settings per party;
/// the evaluators accept any number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub alice_settings: Vec<f64>,
    pub bob_settings: Vec<f64>,
    pub outcome_coding: OutcomeCoding,
}

impl Scenario {
    pub fn new(alice: Vec<f64>, bob: Vec<f64>, coding: OutcomeCoding) -> Self {
        Scenario {
            alice_settings: alice,
            bob_settings: bob,
            outcome_coding: coding,
        }
    }

    /// The canonical 2x2 CHSH scenario with +-1 outcomes:
    /// a0=0, a1=pi/2, b0=pi/4, b1=-pi/4.
    pub fn canonical_chsh() -> Self {
        let quarter = FRAC_PI_2 / 2.0;
        Scenario::new(
            vec![0.0, FRAC_PI_2],
            vec![quarter, -quarter],
            OutcomeCoding::PlusMinusOne,
        )
    }

    pub fn is_two_by_two(&self) -> bool {
        self.alice_settings.len() == 2 && self.bob_settings.len() == 2
    }
}
