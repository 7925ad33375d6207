//! Entropy calculators: Clausius sums, hot-cold contact, two-chamber
//! counting entropy, and the steady radiation balance of a planet.

use crate::error::{ArrowError, Result};
use statrs::function::gamma::ln_gamma;

/// One heat exchange: `q` joules entering the system at temperature `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatStep {
    pub q: f64,
    pub t: f64,
}

/// Clausius entropy change `sum_k Q_k / T_k` in J/K.
pub fn clausius_delta_s(steps: &[HeatStep]) -> Result<f64> {
    for (k, step) in steps.iter().enumerate() {
        if step.t <= 0.0 {
            return Err(ArrowError::NonpositiveTemperature {
                location: format!("step {k}"),
                value: step.t,
            });
        }
    }
    Ok(steps.iter().map(|s| s.q / s.t).sum())
}

/// Entropy produced when `q` joules flow from a hot body at `t_hot` to a
/// cold body at `t_cold`: `q (1/t_cold - 1/t_hot)` in J/K.
pub fn contact_delta_s(q: f64, t_hot: f64, t_cold: f64) -> Result<f64> {
    if t_cold <= 0.0 {
        return Err(ArrowError::NonpositiveTemperature {
            location: "t_cold".into(),
            value: t_cold,
        });
    }
    if t_hot < t_cold {
        return Err(ArrowError::TemperatureOrdering { t_hot, t_cold });
    }
    if q < 0.0 {
        return Err(ArrowError::NegativeHeat { q });
    }
    Ok(q * (1.0 / t_cold - 1.0 / t_hot))
}

/// Counting entropy `S/k_B = ln C(n, j)` of `j` marked particles among `n`.
///
/// Exact 128-bit binomials up to n = 60; log-gamma beyond (relative error
/// well below 1e-12).
pub fn box_entropy(n: u64, j: u64) -> Result<f64> {
    if j > n {
        return Err(ArrowError::CountRange { n, j });
    }
    if j == 0 || j == n {
        // C(n, 0) = 1: exactly zero entropy, also on the log-gamma path.
        return Ok(0.0);
    }
    if n <= 60 {
        let mut c: u128 = 1;
        let j = j.min(n - j);
        for i in 0..j {
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        Ok((c as f64).ln())
    } else {
        let lg = |k: u64| ln_gamma(k as f64 + 1.0);
        Ok(lg(n) - lg(j) - lg(n - j))
    }
}

/// Entropy production rate of a body absorbing `w` watts at `t_in` and
/// re-emitting them at `t_out`: `w (1/t_out - 1/t_in)` in W/K.
pub fn earth_entropy_rate(w: f64, t_in: f64, t_out: f64) -> Result<f64> {
    for (location, value) in [("t_in", t_in), ("t_out", t_out)] {
        if value <= 0.0 {
            return Err(ArrowError::NonpositiveTemperature {
                location: location.into(),
                value,
            });
        }
    }
    if w < 0.0 {
        return Err(ArrowError::NegativePower { w });
    }
    Ok(w * (1.0 / t_out - 1.0 / t_in))
}
