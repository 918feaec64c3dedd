//! Exact integer and rational arithmetic.
//!
//! Rationals are [`num_rational::BigRational`]; everything else here (p-adic
//! valuations, Smith and Hermite normal forms, integer kernels, finite
//! abelian groups) is built on top of it.

mod group;
mod linalg;
mod matrix;
mod normal_form;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use group::{FiniteAbelianGroup, LatticeQuotient};
pub use linalg::{nullspace_q, rank_q, solve_q};
pub use matrix::IntMatrix;
pub use normal_form::{
    hermite_normal_form, kernel_lattice, lattice_eq, quotient_by_rows, smith_normal_form,
    sublattice_index, HermiteForm, SmithForm,
};

/// Arbitrary precision rational number.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not a prime")]
    NotPrime(BigInt),
    #[error("sublattice has infinite index")]
    InfiniteIndex,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invariant factors {0:?} do not form a divisibility chain of integers >= 2")]
    BadInvariantFactors(Vec<BigInt>),
}

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// p-adic valuation; zero has valuation `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// Trial-division primality test. Adequate for the small primes used here.
pub fn is_prime(p: &BigInt) -> bool {
    if *p < BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `|n|`, ascending. Empty for `0` and `±1`.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn val_int(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// The p-adic valuation `val_p(x)`.
///
/// ```
/// use kirwan_core::exact::{rat, val_p, Valuation};
/// use num_bigint::BigInt;
/// assert_eq!(val_p(&rat(3375, 8), &BigInt::from(5)).unwrap(), Valuation::Finite(3));
/// assert_eq!(val_p(&rat(-1, 216), &BigInt::from(2)).unwrap(), Valuation::Finite(-3));
/// ```
pub fn val_p(x: &Rational, p: &BigInt) -> Result<Valuation, ExactError> {
    if !is_prime(p) {
        return Err(ExactError::NotPrime(p.clone()));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(val_int(x.numer(), p) - val_int(x.denom(), p)))
}

/// Least common multiple of a list of integers (1 for the empty list).
pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn valuations() {
        let x = Rational::new(BigInt::from(2).pow(13u32), b(27));
        assert_eq!(val_p(&x, &b(5)).unwrap(), Valuation::Finite(0));
        assert_eq!(val_p(&rat(3375, 8), &b(5)).unwrap(), Valuation::Finite(3));
        assert_eq!(val_p(&rat(-1, 216), &b(2)).unwrap(), Valuation::Finite(-3));
        assert_eq!(val_p(&rat(-1, 216), &b(3)).unwrap(), Valuation::Finite(-3));
        assert_eq!(val_p(&int(0), &b(7)).unwrap(), Valuation::Infinite);
        assert_eq!(val_p(&int(10), &b(4)), Err(ExactError::NotPrime(b(4))));
        assert_eq!(val_p(&int(10), &b(1)), Err(ExactError::NotPrime(b(1))));
    }

    #[test]
    fn valuation_is_additive() {
        let p = b(5);
        for (a, c) in [(rat(25, 3), rat(2, 125)), (rat(-7, 10), rat(50, 9))] {
            let lhs = val_p(&(&a * &c), &p).unwrap();
            match (val_p(&a, &p).unwrap(), val_p(&c, &p).unwrap(), lhs) {
                (Valuation::Finite(x), Valuation::Finite(y), Valuation::Finite(z)) => {
                    assert_eq!(x + y, z)
                }
                _ => panic!("finite expected"),
            }
        }
    }

    #[test]
    fn primes() {
        assert_eq!(prime_factors(&b(24)), vec![b(2), b(3)]);
        assert_eq!(prime_factors(&b(-21)), vec![b(3), b(7)]);
        assert!(prime_factors(&b(1)).is_empty());
        assert!(is_prime(&b(97)) && !is_prime(&b(91)));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("25589/216"), Some(rat(25589, 216)));
        assert_eq!(parse_rational("-3"), Some(int(-3)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
