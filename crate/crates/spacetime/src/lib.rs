//! Minkowski interval classification and validation of the event layout of
//! a loophole-free Bell experiment: source emission, two independent
//! setting choices, two measurements, with the causal separations each
//! condition demands.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for calling an interval lightlike.
pub const LIGHTLIKE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("event {label} has a nonfinite coordinate")]
    NonfiniteCoordinate { label: String },
    #[error("light speed must be positive, got {0}")]
    NonpositiveLightSpeed(f64),
    #[error("missing event {0}")]
    MissingEvent(&'static str),
    #[error("duplicate event label {0}")]
    DuplicateEvent(String),
    #[error("bad geometry file: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub label: String,
    /// Seconds.
    pub t: f64,
    /// Meters.
    pub x: f64,
    #[serde(default)]
    pub y: f64,
    #[serde(default)]
    pub z: f64,
}

impl Event {
    pub fn new(label: &str, t: f64, x: f64, y: f64, z: f64) -> Event {
        Event {
            label: label.to_string(),
            t,
            x,
            y,
            z,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if [self.t, self.x, self.y, self.z].iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonfiniteCoordinate {
                label: self.label.clone(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Squared interval `s^2 = c^2 dt^2 - |dx|^2` and its causal class.
///
/// Lightlike is decided by `|s^2| <= LIGHTLIKE_TOL * (c^2 dt^2 + |dx|^2)`,
/// so exactly null pairs classify as lightlike under rotations too.
pub fn interval(e1: &Event, e2: &Event, c: f64) -> (f64, IntervalClass) {
    let dt = c * (e2.t - e1.t);
    let dx = e2.x - e1.x;
    let dy = e2.y - e1.y;
    let dz = e2.z - e1.z;
    let time_part = dt * dt;
    let space_part = dx * dx + dy * dy + dz * dz;
    let s2 = time_part - space_part;
    let scale = time_part + space_part;
    let class = if s2.abs() <= LIGHTLIKE_TOL * scale {
        IntervalClass::Lightlike
    } else if s2 > 0.0 {
        IntervalClass::Timelike
    } else {
        IntervalClass::Spacelike
    };
    (s2, class)
}

/// True iff `e1` lies in the past light cone of `e2`: causal interval
/// (timelike or lightlike) and strictly earlier.
pub fn in_past_light_cone(e1: &Event, e2: &Event, c: f64) -> bool {
    let (_, class) = interval(e1, e2, c);
    class != IntervalClass::Spacelike && e1.t < e2.t
}

/// The five labeled events of the experiment: emission E_S, setting
/// choices C_A and C_B, measurements M_A and M_B.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentGeometry {
    pub c: f64,
    pub emission: Event,
    pub choice_a: Event,
    pub choice_b: Event,
    pub measure_a: Event,
    pub measure_b: Event,
}

/// On-disk form: `{ "c": 1.0, "events": [{label, t, x, y, z}, ...] }` with
/// labels E_S, C_A, C_B, M_A, M_B.
#[derive(Debug, Serialize, Deserialize)]
pub struct GeometryFile {
    #[serde(default = "default_c")]
    pub c: f64,
    pub events: Vec<Event>,
}

fn default_c() -> f64 {
    1.0
}

impl ExperimentGeometry {
    pub fn from_json(text: &str) -> Result<ExperimentGeometry> {
        let file: GeometryFile = serde_json::from_str(text)?;
        if file.c <= 0.0 || !file.c.is_finite() {
            return Err(GeometryError::NonpositiveLightSpeed(file.c));
        }
        let find = |label: &'static str| -> Result<Event> {
            let mut hits = file.events.iter().filter(|e| e.label == label);
            let event = hits.next().ok_or(GeometryError::MissingEvent(label))?;
            if hits.next().is_some() {
                return Err(GeometryError::DuplicateEvent(label.to_string()));
            }
            event.validate()?;
            Ok(event.clone())
        };
        Ok(ExperimentGeometry {
            c: file.c,
            emission: find("E_S")?,
            choice_a: find("C_A")?,
            choice_b: find("C_B")?,
            measure_a: find("M_A")?,
            measure_b: find("M_B")?,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.c <= 0.0 || !self.c.is_finite() {
            return Err(GeometryError::NonpositiveLightSpeed(self.c));
        }
        for e in [
            &self.emission,
            &self.choice_a,
            &self.choice_b,
            &self.measure_a,
            &self.measure_b,
        ] {
            e.validate()?;
        }
        Ok(())
    }
}

/// One checked pair within a condition.
#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    pub from: String,
    pub to: String,
    pub s2: f64,
    pub class: IntervalClass,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub id: usize,
    pub description: &'static str,
    pub pass: bool,
    pub pairs: Vec<PairCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometryReport {
    pub pass: bool,
    pub conditions: Vec<ConditionReport>,
}

/// Check the six causal-separation conditions. Lightlike boundaries count
/// as failures for spacelike requirements (strict reading).
pub fn validate_config(g: &ExperimentGeometry) -> Result<GeometryReport> {
    g.validate()?;
    let spacelike_pair = |a: &Event, b: &Event| -> PairCheck {
        let (s2, class) = interval(a, b, g.c);
        PairCheck {
            from: a.label.clone(),
            to: b.label.clone(),
            s2,
            class,
            pass: class == IntervalClass::Spacelike,
        }
    };
    let causal_pair = |a: &Event, b: &Event| -> PairCheck {
        let (s2, class) = interval(a, b, g.c);
        PairCheck {
            from: a.label.clone(),
            to: b.label.clone(),
            s2,
            class,
            pass: in_past_light_cone(a, b, g.c),
        }
    };

    let specs: Vec<(usize, &'static str, Vec<PairCheck>)> = vec![
        (
            1,
            "measurements spacelike separated",
            vec![spacelike_pair(&g.measure_a, &g.measure_b)],
        ),
        (
            2,
            "Alice's choice spacelike from Bob's measurement",
            vec![spacelike_pair(&g.choice_a, &g.measure_b)],
        ),
        (
            3,
            "Bob's choice spacelike from Alice's measurement",
            vec![spacelike_pair(&g.choice_b, &g.measure_a)],
        ),
        (
            4,
            "both choices spacelike from the emission",
            vec![
                spacelike_pair(&g.choice_a, &g.emission),
                spacelike_pair(&g.choice_b, &g.emission),
            ],
        ),
        (
            5,
            "the two choices spacelike from each other",
            vec![spacelike_pair(&g.choice_a, &g.choice_b)],
        ),
        (
            6,
            "emission and own choice in each measurement's past cone",
            vec![
                causal_pair(&g.emission, &g.measure_a),
                causal_pair(&g.choice_a, &g.measure_a),
                causal_pair(&g.emission, &g.measure_b),
                causal_pair(&g.choice_b, &g.measure_b),
            ],
        ),
    ];

    let conditions: Vec<ConditionReport> = specs
        .into_iter()
        .map(|(id, description, pairs)| ConditionReport {
            id,
            description,
            pass: pairs.iter().all(|p| p.pass),
            pairs,
        })
        .collect();
    Ok(GeometryReport {
        pass: conditions.iter().all(|c| c.pass),
        conditions,
    })
}
