//! Sparse multivariate Laurent polynomials with cyclotomic coefficients.
//!
//! Terms are kept in graded-lexicographic order; the text form lists them
//! from the largest monomial down, e.g. `27*a1^2 + 4*ah1^3`. In text the
//! generator of the cyclotomic field is written `z`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::cyclotomic::{Cyclotomic, CyclotomicError};
use crate::exact::{parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("image of `{0}` is not a single term")]
    NotATerm(String),
    #[error("image of `{0}` is zero but appears with a negative exponent")]
    NegativePowerOfZero(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("negative exponent: not a polynomial")]
    NegativeExponent,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Field(#[from] CyclotomicError),
}

/// Variable names and the cyclotomic conductor shared by a family of
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    conductor: u32,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], conductor: u32) -> Result<Arc<Ring>, PolyError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(Ring { vars, conductor }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Variables of `self` followed by those of `other` not already present.
    pub fn union(&self, other: &Ring) -> Result<Arc<Ring>, PolyError> {
        if self.conductor != other.conductor {
            return Err(PolyError::RingMismatch);
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        Ring::new(&vars, self.conductor)
    }

    /// The same ring with the listed variables removed.
    pub fn without(&self, drop: &[&str]) -> Result<Arc<Ring>, PolyError> {
        let vars: Vec<&String> = self.vars.iter().filter(|v| !drop.contains(&v.as_str())).collect();
        Ring::new(&vars, self.conductor)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Laurent polynomial over the cyclotomic field of its ring's conductor.
#[derive(Clone, Debug)]
pub struct LaurentPolynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for LaurentPolynomial {}

impl LaurentPolynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        LaurentPolynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Cyclotomic) -> Self {
        assert_eq!(c.conductor(), ring.conductor, "coefficient field");
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.nvars()), c);
        p
    }

    pub fn from_int(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, Cyclotomic::from_int(ring.conductor, n))
    }

    pub fn from_rational(ring: &Arc<Ring>, q: Rational) -> Self {
        Self::constant(ring, Cyclotomic::from_rational(ring.conductor, q))
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self, PolyError> {
        Self::monomial(ring, Cyclotomic::one(ring.conductor), &[(name, 1)])
    }

    /// `coeff * prod name^exp`
    pub fn monomial(ring: &Arc<Ring>, coeff: Cyclotomic, powers: &[(&str, i64)]) -> Result<Self, PolyError> {
        let mut m = Monomial::one(ring.nvars());
        for (name, e) in powers {
            let i = ring
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            m.0[i] += e;
        }
        let mut p = Self::zero(ring);
        p.add_term(m, coeff);
        Ok(p)
    }

    /// Parses text such as `27*a1^2 + 4*ah1^3` or `(x + y)^2 - 3/4*z^2*x`.
    ///
    /// ```
    /// use kirwan_core::poly::{LaurentPolynomial, Ring};
    /// let r = Ring::new(&["x", "y"], 24).unwrap();
    /// let p = LaurentPolynomial::parse(&r, "(x + y)^2 - 2*x*y").unwrap();
    /// assert_eq!(p.to_string(), "x^2 + y^2");
    /// ```
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self, PolyError> {
        let mut p = Parser {
            ring,
            src: text.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn conductor(&self) -> u32 {
        self.ring.conductor
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient and monomial if this is a single nonzero term.
    pub fn as_term(&self) -> Option<(&Cyclotomic, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::zero(self.conductor())),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.0.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Cyclotomic {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.conductor()))
    }

    fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(self.same_ring(other), "polynomials live in different rings");
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Non-negative integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(&self.ring, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single nonzero term.
    pub fn term_inverse(&self) -> Result<Self, PolyError> {
        let (c, m) = self.as_term().ok_or_else(|| PolyError::NotATerm("divisor".into()))?;
        let mut out = Self::zero(&self.ring);
        out.add_term(Monomial(m.0.iter().map(|e| -e).collect()), c.inverse()?);
        Ok(out)
    }

    /// Re-expresses the polynomial in a ring containing all its variables.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Self, PolyError> {
        if target.conductor != self.conductor() {
            return Err(PolyError::RingMismatch);
        }
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| target.index_of(v).ok_or_else(|| PolyError::UnknownVariable(v.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Applies a monomial substitution.
    pub fn substitute(&self, s: &Substitution) -> Result<Self, PolyError> {
        if s.target.conductor != self.conductor() {
            return Err(PolyError::RingMismatch);
        }
        let images: Vec<(&str, Option<(&Cyclotomic, &Monomial)>)> = self
            .ring
            .vars
            .iter()
            .map(|v| {
                let img = s.images.get(v).ok_or_else(|| PolyError::MissingImage(v.clone()))?;
                Ok((v.as_str(), img.as_term()))
            })
            .collect::<Result<_, PolyError>>()?;
        let mut out = Self::zero(&s.target);
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Monomial::one(s.target.nvars());
            for (&e, (name, img)) in m.0.iter().zip(&images) {
                if e == 0 {
                    continue;
                }
                match img {
                    None if e > 0 => continue 'terms,
                    None => return Err(PolyError::NegativePowerOfZero(name.to_string())),
                    Some((ic, im)) => {
                        coeff = &coeff * &ic.pow(e)?;
                        mono = mono.mul(&Monomial(im.0.iter().map(|x| x * e).collect()));
                    }
                }
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    fn index(&self, var: &str) -> Result<usize, PolyError> {
        self.ring
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))
    }

    /// Partial derivative with respect to `var`.
    pub fn partial(&self, var: &str) -> Result<Self, PolyError> {
        let i = self.index(var)?;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c.scale(&Rational::from_integer(BigInt::from(e))));
        }
        Ok(out)
    }

    /// All partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Self> {
        self.ring
            .vars
            .iter()
            .map(|v| self.partial(v).expect("own variable"))
            .collect()
    }

    /// Lowest total degree of a term: the multiplicity of the hypersurface
    /// at the origin.
    pub fn multiplicity_at_origin(&self) -> Result<u64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial("multiplicity"));
        }
        if self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0)) {
            return Err(PolyError::NegativeExponent);
        }
        Ok(self.terms.keys().map(Monomial::degree).min().unwrap_or(0) as u64)
    }

    /// Writes `self = var^k * g` with `var` not dividing `g` (as a Laurent
    /// polynomial, `g` has a term free of `var`).
    pub fn extract_variable_power(&self, var: &str) -> Result<(i64, Self), PolyError> {
        let i = self.index(var)?;
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial("variable power"));
        }
        let k = self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0);
        let mut g = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.0[i] -= k;
            g.add_term(mm, c.clone());
        }
        Ok((k, g))
    }

    /// Whether any term involves `var`.
    pub fn involves(&self, var: &str) -> bool {
        match self.ring.index_of(var) {
            Some(i) => self.terms.keys().any(|m| m.0[i] != 0),
            None => false,
        }
    }

    /// Whether all coefficients are rational.
    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_same_ring(rhs);
        let mut out = LaurentPolynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = m
                .0
                .iter()
                .zip(&self.ring.vars)
                .filter(|(e, _)| **e != 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let (neg, coeff) = match c.as_rational() {
                Some(q) => (q.is_negative(), Some(q.abs())),
                None => (false, None),
            };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff_text = match coeff {
                Some(q) if q.is_one() && !vars.is_empty() => None,
                Some(q) => Some(q.to_string()),
                None => Some(c.to_string()),
            };
            match (coeff_text, vars.is_empty()) {
                (Some(t), true) => f.write_str(&t)?,
                (Some(t), false) => write!(f, "{t}*{}", vars.join("*"))?,
                (None, _) => f.write_str(&vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A map from source variables to single-term images in a target ring.
#[derive(Clone, Debug)]
pub struct Substitution {
    target: Arc<Ring>,
    images: BTreeMap<String, LaurentPolynomial>,
}

impl Substitution {
    pub fn new(target: &Arc<Ring>) -> Self {
        Substitution {
            target: target.clone(),
            images: BTreeMap::new(),
        }
    }

    /// Sends every variable of `source` that also occurs in `target` to itself.
    pub fn identity(source: &Ring, target: &Arc<Ring>) -> Self {
        let mut s = Self::new(target);
        for v in &source.vars {
            if target.index_of(v).is_some() {
                let img = LaurentPolynomial::var(target, v).expect("present");
                s.images.insert(v.clone(), img);
            }
        }
        s
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    /// Sets the image of `var`; the image must be zero or a single term.
    pub fn set(&mut self, var: &str, image: LaurentPolynomial) -> Result<(), PolyError> {
        if !(Arc::ptr_eq(&image.ring, &self.target) || *image.ring == *self.target) {
            return Err(PolyError::RingMismatch);
        }
        if image.terms.len() > 1 {
            return Err(PolyError::NotATerm(var.to_string()));
        }
        self.images.insert(var.to_string(), image);
        Ok(())
    }

    /// Sets the image of `var` from text parsed in the target ring.
    pub fn set_text(&mut self, var: &str, image: &str) -> Result<(), PolyError> {
        let p = LaurentPolynomial::parse(&self.target, image)?;
        self.set(var, p)
    }

    pub fn with(mut self, var: &str, image: &str) -> Result<Self, PolyError> {
        self.set_text(var, image)?;
        Ok(self)
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPolynomial, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = &acc * &d.term_inverse()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let v: i64 = s.parse().map_err(|_| self.err("expected integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<LaurentPolynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if e >= 0 {
                Ok(base.pow(e as u32))
            } else {
                Ok(base.term_inverse()?.pow(e.unsigned_abs() as u32))
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<LaurentPolynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let q = parse_rational(s).ok_or_else(|| self.err("bad number"))?;
                Ok(LaurentPolynomial::from_rational(self.ring, q))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if self.ring.index_of(name).is_some() {
                    LaurentPolynomial::var(self.ring, name)
                } else if name == "z" {
                    Ok(LaurentPolynomial::constant(
                        self.ring,
                        Cyclotomic::zeta_power(self.ring.conductor, 1),
                    ))
                } else {
                    Err(PolyError::UnknownVariable(name.to_string()))
                }
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::DEFAULT_CONDUCTOR as N;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, N).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(r, s).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring(&["x", "y"]);
        let a = p(&r, "x + y^2");
        assert_eq!((&a * &a).to_string(), "y^4 + 2*x*y^2 + x^2");
        assert_eq!(p(&r, "3/4*x - 2").to_string(), "3/4*x - 2");
        assert_eq!(p(&r, "-x^-1*y").to_string(), "-x^-1*y");
        assert_eq!(p(&r, "z^3*x").to_string(), "(z^3)*x");
        assert!((&a - &a).is_zero());
        assert_eq!(p(&r, "0").to_string(), "0");
        assert!(LaurentPolynomial::parse(&r, "w").is_err());
        assert!(LaurentPolynomial::parse(&r, "x +").is_err());
    }

    #[test]
    fn substitution_into_blowup_chart() {
        let src = ring(&["a0", "a1", "ah0", "ah1"]);
        let dst = ring(&["a0", "t1", "th0", "th1"]);
        let s = Substitution::new(&dst)
            .with("a0", "a0")
            .unwrap()
            .with("a1", "a0*t1")
            .unwrap()
            .with("ah0", "a0*th0")
            .unwrap()
            .with("ah1", "a0*th1")
            .unwrap();
        let f = p(&src, "27*a1^2 + 4*ah1^3");
        let g = f.substitute(&s).unwrap();
        assert_eq!(g, p(&dst, "a0^2*(27*t1^2 + 4*a0*th1^3)"));
        let missing = Substitution::new(&dst).with("a0", "a0").unwrap();
        assert_eq!(f.substitute(&missing), Err(PolyError::MissingImage("a1".into())));
    }

    #[test]
    fn zero_images() {
        let r = ring(&["x", "y"]);
        let s = Substitution::new(&r).with("x", "0").unwrap().with("y", "y").unwrap();
        assert_eq!(p(&r, "x*y + y^2").substitute(&s).unwrap(), p(&r, "y^2"));
        assert!(matches!(
            p(&r, "x^-1").substitute(&s),
            Err(PolyError::NegativePowerOfZero(_))
        ));
        let mut bad = Substitution::new(&r);
        assert!(bad.set_text("x", "x + y").is_err());
    }

    #[test]
    fn multiplicities() {
        let r = ring(&["a0", "a1", "a2", "ah0", "ah1", "ah2"]);
        assert_eq!(p(&r, "a1^2*ah0^3 - a0^2*ah1^3").multiplicity_at_origin().unwrap(), 5);
        assert_eq!(p(&r, "a0 + a1^2").multiplicity_at_origin().unwrap(), 1);
        let disc = p(
            &r,
            "(27*a0^2 + 4*ah0^3)*(27*a1^2 + 4*ah1^3)*(27*a2^2 + 4*ah2^3)",
        );
        assert_eq!(disc.multiplicity_at_origin().unwrap(), 6);
        assert!(p(&r, "a0^-1").multiplicity_at_origin().is_err());
        assert!(p(&r, "0").multiplicity_at_origin().is_err());
    }

    #[test]
    fn derivatives() {
        let r = ring(&["x", "y"]);
        let f = p(&r, "x^3*y - 2*x^-1 + y");
        assert_eq!(f.partial("x").unwrap(), p(&r, "3*x^2*y + 2*x^-2"));
        assert_eq!(f.gradient()[1], p(&r, "x^3 + 1"));
        assert!(f.partial("w").is_err());
    }

    #[test]
    fn variable_powers() {
        let r = ring(&["e", "t"]);
        let (k, g) = p(&r, "e^6*(27 + 4*e*t^3)").extract_variable_power("e").unwrap();
        assert_eq!(k, 6);
        assert_eq!(g, p(&r, "27 + 4*e*t^3"));
        assert_eq!(p(&r, "5").extract_variable_power("e").unwrap().0, 0);
        assert_eq!(p(&r, "e^-2 + t").extract_variable_power("e").unwrap().0, -2);
        assert!(p(&r, "0").extract_variable_power("e").is_err());
    }

    #[test]
    fn roots_of_unity_in_coefficients() {
        let r = ring(&["x"]);
        let z8 = Cyclotomic::root_of_unity(N, 8, 1).unwrap();
        let c = LaurentPolynomial::constant(&r, z8.pow(4).unwrap());
        assert!((&c + &LaurentPolynomial::from_int(&r, 1)).is_zero());
    }
}
