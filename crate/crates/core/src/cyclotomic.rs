//! Exact arithmetic in the cyclotomic field `Q(z)`, `z = exp(2 pi i / N)`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` and
//! reduced modulo the N-th cyclotomic polynomial after every product, so two
//! elements are equal exactly when their coefficient vectors are.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{solve_q, Rational};

/// Default conductor: contains the 8th and the 3rd roots of unity.
pub const DEFAULT_CONDUCTOR: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive {order}-th root of unity in the field of conductor {conductor}")]
    MissingRoot { order: u32, conductor: u32 },
}

fn poly_divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

fn compute_cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divide_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// Coefficients (constant term first) of the monic cyclotomic polynomial
/// of order `n >= 1`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic_polynomial(n));
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// An element of the N-th cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn degree(conductor: u32) -> usize {
        cyclotomic_polynomial(conductor).len() - 1
    }

    fn check(conductor: u32) -> Result<(), CyclotomicError> {
        if conductor == 0 {
            Err(CyclotomicError::ZeroConductor)
        } else {
            Ok(())
        }
    }

    pub fn zero(conductor: u32) -> Self {
        Self::check(conductor).expect("positive conductor");
        Cyclotomic {
            conductor,
            coeffs: vec![Rational::zero(); Self::degree(conductor)],
        }
    }

    pub fn from_rational(conductor: u32, q: Rational) -> Self {
        let mut c = Self::zero(conductor);
        c.coeffs[0] = q;
        c
    }

    pub fn from_int(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, Rational::from_integer(n.into()))
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_int(conductor, 1)
    }

    /// `z^k` for the fixed generator `z = exp(2 pi i / N)`; negative `k` allowed.
    pub fn zeta_power(conductor: u32, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::reduce(conductor, raw)
    }

    /// The `k`-th power of the primitive `order`-th root of unity
    /// `z^(N/order)`. Fails when `order` does not divide the conductor.
    pub fn root_of_unity(conductor: u32, order: u32, k: i64) -> Result<Self, CyclotomicError> {
        Self::check(conductor)?;
        if order == 0 || !conductor.is_multiple_of(order) {
            return Err(CyclotomicError::MissingRoot { order, conductor });
        }
        Ok(Self::zeta_power(conductor, k * (conductor / order) as i64))
    }

    /// Builds an element from power-basis coefficients of any length.
    pub fn from_coefficients(conductor: u32, coeffs: Vec<Rational>) -> Self {
        Self::reduce(conductor, coeffs)
    }

    fn reduce(conductor: u32, mut raw: Vec<Rational>) -> Self {
        let modulus = cyclotomic_polynomial(conductor);
        let deg = modulus.len() - 1;
        for k in (deg..raw.len()).rev() {
            let c = std::mem::replace(&mut raw[k], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, mj) in modulus.iter().enumerate().take(deg) {
                raw[k - deg + j] -= &c * Rational::from_integer(mj.clone());
            }
        }
        raw.resize(deg, Rational::zero());
        Cyclotomic {
            conductor,
            coeffs: raw,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The element as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.conductor, other.conductor,
            "cyclotomic elements from different fields"
        );
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, by solving the linear system of multiplication
    /// by `self` on the power basis.
    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, q.recip()));
        }
        let d = self.coeffs.len();
        let columns: Vec<Cyclotomic> = (0..d)
            .map(|j| self * &Self::zeta_power(self.conductor, j as i64))
            .collect();
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| columns.iter().map(|c| c.coeffs[i].clone()).collect())
            .collect();
        let mut e = vec![Rational::zero(); d];
        e[0] = Rational::one();
        let x = solve_q(&rows, &e).ok_or(CyclotomicError::DivisionByZero)?;
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs: x,
        })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, CyclotomicError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.conductor);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        let n = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Cyclotomic::reduce(self.conductor, raw)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// Rational number text, or a parenthesised power-basis expression in `z`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        f.write_str("(")?;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{j}")?,
                (_, false) => write!(f, "{mag}*z^{j}")?,
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), big(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(8), big(&[1, 0, 0, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(24), big(&[1, 0, 0, 0, -1, 0, 0, 0, 1]));
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn eighth_roots() {
        let n = DEFAULT_CONDUCTOR;
        let z8 = Cyclotomic::root_of_unity(n, 8, 1).unwrap();
        assert_eq!(z8, Cyclotomic::zeta_power(n, 3));
        let z8_4 = z8.pow(4).unwrap();
        assert!((&z8_4 + &Cyclotomic::one(n)).is_zero());
        let z8_2 = z8.pow(2).unwrap();
        assert_eq!(z8_2.pow(3).unwrap(), z8.pow(6).unwrap());
        assert_eq!(z8.pow(8).unwrap(), Cyclotomic::one(n));
        let i = Cyclotomic::zeta_power(n, 6);
        assert_eq!(&i * &i, Cyclotomic::from_int(n, -1));
        assert!(Cyclotomic::root_of_unity(10, 8, 1).is_err());
    }

    #[test]
    fn inverses() {
        let n = DEFAULT_CONDUCTOR;
        let a = &Cyclotomic::zeta_power(n, 5) + &Cyclotomic::from_rational(n, rat(2, 3));
        let b = a.inverse().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(Cyclotomic::zeta_power(n, -1).inverse().unwrap(), Cyclotomic::zeta_power(n, 1));
        assert_eq!(Cyclotomic::zero(n).inverse(), Err(CyclotomicError::DivisionByZero));
    }

    #[test]
    fn display() {
        let n = DEFAULT_CONDUCTOR;
        assert_eq!(Cyclotomic::from_rational(n, rat(-3, 4)).to_string(), "-3/4");
        assert_eq!(Cyclotomic::zeta_power(n, 3).to_string(), "(z^3)");
        let x = &Cyclotomic::from_int(n, 2) - &Cyclotomic::zeta_power(n, 1);
        assert_eq!(x.to_string(), "(2 - z)");
    }
}
