use hashbrown::HashMap;

use crate::problem::MoveCode;

/// Table of learned weights indexed by move code.
///
/// Codes that were never written read as weight `0.0`; reading never inserts.
#[derive(Debug, Clone, Default)]
pub struct Policy {
    weights: HashMap<MoveCode, f64>,
}

impl Policy {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn weight(&self, code: MoveCode) -> f64 {
        self.weights.get(&code).copied().unwrap_or(0.0)
    }

    /// Overwrites the weight stored for `code`.
    ///
    /// # Panics
    ///
    /// Panics if `weight` is not finite.
    pub fn set(&mut self, code: MoveCode, weight: f64) {
        assert!(
            weight.is_finite(),
            "policy weights must be finite, got {weight}"
        );
        self.weights.insert(code, weight);
    }

    #[inline]
    pub fn add(&mut self, code: MoveCode, delta: f64) {
        let w = self.weights.entry(code).or_insert(0.0);
        *w += delta;
        debug_assert!(w.is_finite());
    }

    /// Number of codes with a stored weight.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MoveCode, f64)> + '_ {
        self.weights.iter().map(|(&c, &w)| (c, w))
    }
}

/// Two policies are equal when every code reads the same weight, so an
/// explicit `0.0` equals an absent entry.
impl PartialEq for Policy {
    fn eq(&self, other: &Self) -> bool {
        self.iter().all(|(c, w)| other.weight(c) == w)
            && other.iter().all(|(c, w)| self.weight(c) == w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absent_code_reads_zero_without_inserting() {
        let p = Policy::new();
        assert_eq!(p.weight(MoveCode(42)), 0.0);
        assert!(p.is_empty());
    }

    #[test]
    fn add_accumulates() {
        let mut p = Policy::new();
        p.add(MoveCode(1), 0.5);
        p.add(MoveCode(1), -0.25);
        assert_eq!(p.weight(MoveCode(1)), 0.25);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn explicit_zero_equals_absent() {
        let mut p = Policy::new();
        p.add(MoveCode(3), 0.0);
        assert_eq!(p, Policy::new());
        p.add(MoveCode(3), 1.0);
        assert_ne!(p, Policy::new());
    }

    #[test]
    #[should_panic]
    fn set_rejects_nan() {
        Policy::new().set(MoveCode(0), f64::NAN);
    }
}
