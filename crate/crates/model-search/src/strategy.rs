//! The 16 deterministic response tables of the 2x2 binary scenario.

use bell_core::OutcomeCoding;

/// One deterministic response table: outcome slots for (a0, a1, b0, b1).
/// Slot 0 is the first coding outcome (+1 or detect), slot 1 the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub a: [usize; 2],
    pub b: [usize; 2],
}

impl DeterministicStrategy {
    /// Strategy `k` in 0..16: bits (0, 1, 2, 3) select the slots of
    /// (a0, a1, b0, b1); a clear bit means slot 0.
    pub fn from_index(k: usize) -> DeterministicStrategy {
        let bit = |n: usize| (k >> n) & 1;
        DeterministicStrategy {
            a: [bit(0), bit(1)],
            b: [bit(2), bit(3)],
        }
    }

    pub fn all() -> Vec<DeterministicStrategy> {
        (0..16).map(DeterministicStrategy::from_index).collect()
    }

    /// Alice's outcome value at setting `i` under `coding`.
    pub fn alice_value(&self, i: usize, coding: OutcomeCoding) -> f64 {
        coding.values()[self.a[i]]
    }

    /// Bob's outcome value at setting `j` under `coding`.
    pub fn bob_value(&self, j: usize, coding: OutcomeCoding) -> f64 {
        coding.values()[self.b[j]]
    }

    /// CHSH value of this strategy in +-1 outcomes.
    pub fn chsh(&self) -> f64 {
        let v = |slot: usize| if slot == 0 { 1.0 } else { -1.0 };
        let e = |i: usize, j: usize| v(self.a[i]) * v(self.b[j]);
        e(0, 0) + e(0, 1) + e(1, 0) - e(1, 1)
    }

    /// Clauser-Horne value in detect coding (slot 0 = detect), singles taken
    /// at the first settings.
    pub fn ch(&self) -> f64 {
        let d = |slot: usize| if slot == 0 { 1.0 } else { 0.0 };
        let p = |i: usize, j: usize| d(self.a[i]) * d(self.b[j]);
        p(0, 0) + p(0, 1) + p(1, 0) - p(1, 1) - d(self.a[0]) - d(self.b[0])
    }
}

/// Exhaustive scan of the deterministic strategies with both statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub strategies: Vec<DeterministicStrategy>,
    pub max_abs_chsh: f64,
    /// Indices attaining `max_abs_chsh`.
    pub chsh_argmax: Vec<usize>,
    pub max_ch: f64,
    pub ch_argmax: Vec<usize>,
}

pub fn enumerate_deterministic_local() -> Enumeration {
    let strategies = DeterministicStrategy::all();
    let mut max_abs_chsh = f64::NEG_INFINITY;
    let mut max_ch = f64::NEG_INFINITY;
    for s in &strategies {
        max_abs_chsh = max_abs_chsh.max(s.chsh().abs());
        max_ch = max_ch.max(s.ch());
    }
    let chsh_argmax = strategies
        .iter()
        .enumerate()
        .filter(|(_, s)| s.chsh().abs() == max_abs_chsh)
        .map(|(k, _)| k)
        .collect();
    let ch_argmax = strategies
        .iter()
        .enumerate()
        .filter(|(_, s)| s.ch() == max_ch)
        .map(|(k, _)| k)
        .collect();
    Enumeration {
        strategies,
        max_abs_chsh,
        chsh_argmax,
        max_ch,
        ch_argmax,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_distinct_strategies() {
        let all = DeterministicStrategy::all();
        assert_eq!(all.len(), 16);
        for i in 0..16 {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn chsh_maximum_is_two() {
        let e = enumerate_deterministic_local();
        assert_eq!(e.max_abs_chsh, 2.0);
        assert!(!e.chsh_argmax.is_empty());
        for &k in &e.chsh_argmax {
            assert_eq!(e.strategies[k].chsh().abs(), 2.0);
        }
    }

    #[test]
    fn every_chsh_value_is_plus_minus_two() {
        // Each deterministic strategy gives S in {-2, 2}: three of the four
        // products fix the fourth up to sign.
        for s in DeterministicStrategy::all() {
            assert_eq!(s.chsh().abs(), 2.0);
        }
    }

    #[test]
    fn ch_maximum_is_zero() {
        let e = enumerate_deterministic_local();
        assert_eq!(e.max_ch, 0.0);
    }

    #[test]
    fn values_follow_coding() {
        let s = DeterministicStrategy::from_index(0b0101);
        assert_eq!(s.alice_value(0, OutcomeCoding::PlusMinusOne), -1.0);
        assert_eq!(s.alice_value(1, OutcomeCoding::PlusMinusOne), 1.0);
        assert_eq!(s.bob_value(0, OutcomeCoding::DetectZeroOne), 0.0);
        assert_eq!(s.bob_value(1, OutcomeCoding::DetectZeroOne), 1.0);
    }
}
