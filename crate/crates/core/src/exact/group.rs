use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::ExactError;

/// Finite abelian group `Z/d1 x ... x Z/dk` with `d1 | d2 | ... | dk`, each
/// `di >= 2`. The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<BigInt>) -> Result<Self, ExactError> {
        let two = BigInt::from(2);
        let ok = invariant_factors.iter().all(|d| *d >= two)
            && invariant_factors
                .windows(2)
                .all(|w| w[1].is_multiple_of(&w[0]));
        if !ok {
            return Err(ExactError::BadInvariantFactors(invariant_factors));
        }
        Ok(FiniteAbelianGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup {
                invariant_factors: vec![BigInt::from(n)],
            }
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Exponent (largest invariant factor).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// A finitely generated abelian group `Z^free_rank x torsion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub free_rank: usize,
    pub torsion: FiniteAbelianGroup,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let g = FiniteAbelianGroup::new(vec![BigInt::from(2), BigInt::from(6)]).unwrap();
        assert_eq!(g.order(), BigInt::from(12));
        assert_eq!(g.to_string(), "Z2 x Z6");
        assert!(FiniteAbelianGroup::new(vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(FiniteAbelianGroup::new(vec![BigInt::from(1)]).is_err());
        assert_eq!(FiniteAbelianGroup::cyclic(1).to_string(), "trivial");
    }
}
