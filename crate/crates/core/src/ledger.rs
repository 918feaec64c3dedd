//! Q-linear divisor bookkeeping on the GIT, Baily-Borel, Kirwan and
//! toroidal models, and the numbers derived from it.
//!
//! Geometric inputs that are not recomputed here live in a constants
//! fixture; everything else is derived from them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::exact::{int, parse_rational, val_p, ExactError, Rational, Valuation};
use crate::wps::{WeightedProjectiveSpace, WpsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("stabilizer ratio {0} is below one")]
    RatioBelowOne(Rational),
    #[error("ramification index must be positive")]
    NonPositiveIndex,
    #[error("exceptional restriction is zero")]
    ZeroExceptional,
    #[error("components give different coefficients")]
    InconsistentComponents,
    #[error("no pairing for ({0}, {1})")]
    MissingPairing(String, String),
    #[error("rewriting did not terminate")]
    NonTerminating,
    #[error("cross terms are only known to vanish for an exceptional divisor over a point")]
    CrossTermsUnknown,
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("bad fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Wps(#[from] WpsError),
}

pub mod sym {
    pub const LAMBDA: &str = "lambda";
    pub const LAMBDA_M: &str = "lambda_m";
    pub const D_N: &str = "D_n";
    pub const D_NM: &str = "D_nm";
    pub const R: &str = "R";
    pub const R_M: &str = "R_m";
    pub const O1: &str = "O(1)";
    pub const H: &str = "H";
    /// Strict transforms on the toroidal models.
    pub const DT_N: &str = "Dt_n";
    pub const DT_NM: &str = "Dt_nm";
    pub const RT: &str = "Rt";
    pub const RT_M: &str = "Rt_m";
    pub const T: &str = "T";
    pub const T_M: &str = "T_m";
}

/// Finite Q-linear combination of named divisor classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorExpression(BTreeMap<String, Rational>);

impl DivisorExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(Rational::one(), name)
    }

    pub fn term(c: Rational, name: &str) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(name.to_string(), c);
        }
        DivisorExpression(m)
    }

    pub fn from_terms(terms: &[(Rational, &str)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, (c, s)| &acc + &Self::term(c.clone(), s))
    }

    pub fn coefficient(&self, name: &str) -> Rational {
        self.0.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DivisorExpression(
            self.0
                .iter()
                .filter(|_| !c.is_zero())
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        )
    }

    /// The single coefficient if the expression is a multiple of `name`.
    pub fn multiple_of(&self, name: &str) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => self.0.get(name).cloned(),
            _ => None,
        }
    }

    /// Replaces every occurrence of `name` by `image`.
    pub fn substitute(&self, name: &str, image: &DivisorExpression) -> Self {
        let c = self.coefficient(name);
        let mut rest = self.clone();
        rest.0.remove(name);
        &rest + &image.scale(&c)
    }
}

impl Add for &DivisorExpression {
    type Output = DivisorExpression;
    fn add(self, o: &DivisorExpression) -> DivisorExpression {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(k.clone()).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                m.remove(k);
            }
        }
        DivisorExpression(m)
    }
}

impl Neg for &DivisorExpression {
    type Output = DivisorExpression;
    fn neg(self) -> DivisorExpression {
        self.scale(&-Rational::one())
    }
}

impl Sub for &DivisorExpression {
    type Output = DivisorExpression;
    fn sub(self, o: &DivisorExpression) -> DivisorExpression {
        self + &(-o)
    }
}

impl Mul<&DivisorExpression> for &Rational {
    type Output = DivisorExpression;
    fn mul(self, e: &DivisorExpression) -> DivisorExpression {
        e.scale(self)
    }
}

impl fmt::Display for DivisorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.0.iter().enumerate() {
            let neg = v.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = v.abs();
            if a.is_one() {
                f.write_str(k)?;
            } else {
                write!(f, "{a}*{k}")?;
            }
        }
        Ok(())
    }
}

/// Directed rewrite rules `symbol -> expression`, applied until no rule
/// applies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<(String, DivisorExpression)>,
}

impl RewriteSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rule(mut self, name: &str, image: DivisorExpression) -> Self {
        self.rules.push((name.to_string(), image));
        self
    }

    pub fn rules(&self) -> &[(String, DivisorExpression)] {
        &self.rules
    }

    pub fn normalize(&self, e: &DivisorExpression) -> Result<DivisorExpression, LedgerError> {
        self.normalize_in_order(e, &(0..self.rules.len()).collect::<Vec<_>>())
    }

    /// Normal form trying the rules in the given priority order.
    pub fn normalize_in_order(&self, e: &DivisorExpression, order: &[usize]) -> Result<DivisorExpression, LedgerError> {
        let mut cur = e.clone();
        for _ in 0..64 {
            let next = order
                .iter()
                .map(|&i| &self.rules[i])
                .find(|(name, _)| !cur.coefficient(name).is_zero());
            match next {
                None => return Ok(cur),
                Some((name, image)) => cur = cur.substitute(name, image),
            }
        }
        Err(LedgerError::NonTerminating)
    }

    /// Whether every rule order gives the same normal form for `e`.
    pub fn confluent_on(&self, e: &DivisorExpression) -> Result<bool, LedgerError> {
        let reference = self.normalize(e)?;
        for order in crate::ledger::orders(self.rules.len()) {
            if self.normalize_in_order(e, &order)? != reference {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn orders(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in orders(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct ConstantRecord {
    pub name: String,
    pub value: String,
    pub paper_ref: String,
    pub quote: String,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct Constants {
    pub version: u32,
    pub constants: Vec<ConstantRecord>,
}

pub const CONSTANTS_JSON: &str = include_str!("../fixtures/constants.json");

pub fn constants() -> Result<Constants, LedgerError> {
    serde_json::from_str(CONSTANTS_JSON).map_err(|e| LedgerError::Fixture(e.to_string()))
}

impl Constants {
    pub fn record(&self, name: &str) -> Result<&ConstantRecord, LedgerError> {
        self.constants
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| LedgerError::UnknownConstant(name.to_string()))
    }

    pub fn rational(&self, name: &str) -> Result<Rational, LedgerError> {
        let r = self.record(name)?;
        parse_rational(&r.value).ok_or_else(|| LedgerError::Fixture(format!("{name} is not a number")))
    }

    pub fn triple(&self, name: &str) -> Result<[i64; 3], LedgerError> {
        let r = self.record(name)?;
        let parts: Vec<i64> = r
            .value
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| LedgerError::Fixture(format!("{name} is not a triple")))?;
        parts
            .try_into()
            .map_err(|_| LedgerError::Fixture(format!("{name} is not a triple")))
    }
}

/// Relations among the Hodge class and the branch divisors on the
/// Baily-Borel model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeRelations {
    pub discriminant: DivisorExpression,
    pub eckardt: DivisorExpression,
    pub canonical: DivisorExpression,
    /// `K` before substitution: `5 lambda - (1 - 1/6) D_n - (1 - 1/2) R`.
    pub canonical_formula: DivisorExpression,
    pub marked_discriminant: DivisorExpression,
    pub marked_canonical_formula: DivisorExpression,
    pub marked_canonical: DivisorExpression,
    /// `O(1)` from the discriminant degree.
    pub polarization: DivisorExpression,
    /// `O(1)` from the Eckardt degree, for comparison.
    pub polarization_from_eckardt: DivisorExpression,
    pub rules: RewriteSystem,
}

impl HodgeRelations {
    pub fn polarizations_agree(&self) -> bool {
        self.polarization == self.polarization_from_eckardt
    }
}

/// A form of weight `w` vanishing on a branch divisor of index `n` gives
/// `w lambda = D / n`.
pub fn hodge_relations(
    weights: (i64, i64),
    ramification: (i64, i64),
    marked_ramification: i64,
    degrees: (i64, i64),
) -> Result<HodgeRelations, LedgerError> {
    use sym::*;
    if [ramification.0, ramification.1, marked_ramification].iter().any(|&r| r < 1) {
        return Err(LedgerError::NonPositiveIndex);
    }
    let lam = DivisorExpression::symbol(LAMBDA);
    let lam_m = DivisorExpression::symbol(LAMBDA_M);
    let discriminant = lam.scale(&int(weights.0 * ramification.0));
    let eckardt = lam.scale(&int(weights.1 * ramification.1));
    let marked_discriminant = lam_m.scale(&int(weights.0 * marked_ramification));
    let branch = |n: i64| Rational::one() - Rational::new(1.into(), n.into());
    let five = int(5);
    let canonical_formula = &(&lam.scale(&five) - &DivisorExpression::term(branch(ramification.0), D_N))
        - &DivisorExpression::term(branch(ramification.1), R);
    let marked_canonical_formula =
        &lam_m.scale(&five) - &DivisorExpression::term(branch(marked_ramification), D_NM);
    let polarization = discriminant.scale(&Rational::new(1.into(), degrees.0.into()));
    let polarization_from_eckardt = eckardt.scale(&Rational::new(1.into(), degrees.1.into()));
    let rules = RewriteSystem::new()
        .rule(D_N, discriminant.clone())
        .rule(R, eckardt.clone())
        .rule(D_NM, marked_discriminant.clone())
        .rule(O1, polarization.clone());
    let canonical = rules.normalize(&canonical_formula)?;
    let marked_canonical = rules.normalize(&marked_canonical_formula)?;
    Ok(HodgeRelations {
        discriminant,
        eckardt,
        canonical,
        canonical_formula,
        marked_discriminant,
        marked_canonical_formula,
        marked_canonical,
        polarization,
        polarization_from_eckardt,
        rules,
    })
}

pub fn standard_hodge_relations() -> Result<HodgeRelations, LedgerError> {
    hodge_relations((4, 75), (6, 2), 3, (4, 25))
}

/// `q^* K_Y = K_X - sum (ratio - 1) R_i`
pub fn riemann_hurwitz_git(
    k_up: &DivisorExpression,
    ramification: &[(DivisorExpression, Rational)],
) -> Result<DivisorExpression, LedgerError> {
    let mut out = k_up.clone();
    for (r, ratio) in ramification {
        if *ratio < Rational::one() {
            return Err(LedgerError::RatioBelowOne(ratio.clone()));
        }
        out = &out - &r.scale(&(ratio - Rational::one()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GitCanonical {
    /// In multiples of the hyperplane class on `P^19`.
    pub pullback: DivisorExpression,
    /// Degree on `P(1,2,3,4,5)` after descent.
    pub degree: Rational,
    /// Coefficient of the discriminant `D = O(4)`.
    pub in_discriminant: Rational,
    /// `K = O(-15)` and `D = O(4)` read off the weights.
    pub invariant_theory: Rational,
    /// Degree of the image of the Eckardt hypersurface after descent.
    pub eckardt_descends_to: Rational,
    pub eckardt_degree: Rational,
}

impl GitCanonical {
    pub fn routes_agree(&self) -> bool {
        self.in_discriminant == self.invariant_theory
    }

    /// Twice the descended Eckardt hypersurface is the Eckardt divisor.
    pub fn eckardt_doubling(&self) -> bool {
        &self.eckardt_descends_to * int(2) == self.eckardt_degree
    }
}

pub fn git_canonical(c: &Constants) -> Result<GitCanonical, LedgerError> {
    let h = DivisorExpression::symbol(sym::H);
    let k_up = h.scale(&c.rational("canonical_degree_p19")?);
    let eckardt_up = h.scale(&c.rational("eckardt_degree_p19")?);
    let pullback = riemann_hurwitz_git(&k_up, &[(eckardt_up, c.rational("eckardt_stabilizer_ratio")?)])?;
    let descent = c.rational("hyperplane_descent")?;
    let degree = pullback.coefficient(sym::H) * &descent;
    let d_deg = c.rational("discriminant_degree")?;
    let disc_check = c.rational("discriminant_degree_p19")? * &descent;
    if disc_check != d_deg {
        return Err(LedgerError::Fixture("discriminant does not descend to its degree".into()));
    }
    let p = WeightedProjectiveSpace::new(&[1, 2, 3, 4, 5])?;
    Ok(GitCanonical {
        in_discriminant: &degree / &d_deg,
        degree,
        pullback,
        invariant_theory: int(p.canonical_degree()) / d_deg,
        eckardt_descends_to: c.rational("eckardt_degree_p19")? * descent,
        eckardt_degree: c.rational("eckardt_degree")?,
    })
}

/// `(c + sum (ratio - 1) mu) / gF - 1`
pub fn kirwan_discrepancy(c: i64, ram: &[(Rational, Rational)], gf_ratio: &Rational) -> Result<Rational, LedgerError> {
    kirwan_discrepancy_with_boundary(&int(c - 1), ram, gf_ratio)
}

/// Version with a boundary: `a(F)` takes the place of `c - 1`.
pub fn kirwan_discrepancy_with_boundary(
    a_f: &Rational,
    ram: &[(Rational, Rational)],
    gf_ratio: &Rational,
) -> Result<Rational, LedgerError> {
    if *gf_ratio < Rational::one() {
        return Err(LedgerError::RatioBelowOne(gf_ratio.clone()));
    }
    let mut num = a_f + Rational::one();
    for (ratio, mu) in ram {
        if *ratio < Rational::one() {
            return Err(LedgerError::RatioBelowOne(ratio.clone()));
        }
        num += (ratio - Rational::one()) * mu;
    }
    Ok(num / gf_ratio - Rational::one())
}

/// `((1 + mu_D + mu_R) + 1) / r - 1`
pub fn toroidal_discrepancy(r: i64, mu_d: &Rational, mu_r: &Rational) -> Result<Rational, LedgerError> {
    if r < 1 {
        return Err(LedgerError::NonPositiveIndex);
    }
    Ok((Rational::one() + mu_d + mu_r + Rational::one()) / int(r) - Rational::one())
}

/// Solves `0 = restr(D) + a restr(T)` componentwise.
pub fn pullback_coefficient(divisor: &[i64], exceptional: &[i64]) -> Result<Rational, LedgerError> {
    if exceptional.iter().all(|&x| x == 0) {
        return Err(LedgerError::ZeroExceptional);
    }
    let mut a: Option<Rational> = None;
    for (&d, &t) in divisor.iter().zip(exceptional) {
        if t == 0 {
            if d != 0 {
                return Err(LedgerError::InconsistentComponents);
            }
            continue;
        }
        let v = Rational::new((-d).into(), t.into());
        match &a {
            Some(prev) if *prev != v => return Err(LedgerError::InconsistentComponents),
            _ => a = Some(v),
        }
    }
    Ok(a.expect("some component nonzero"))
}

/// Self-intersection `E^n` of the exceptional divisor of the blowup of the
/// vertex of the cone over `(P^1)^k` in its Segre embedding (`n = k + 1`),
/// from `E|_E = O(-1, ..., -1)`.
pub fn segre_cone_exceptional_power(k: u32) -> Rational {
    let fact: i64 = (1..=k as i64).product();
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    int(sign * fact)
}

/// `K^4 + a^4 E^4` for an exceptional divisor over a point, where all
/// cross terms vanish.
pub fn top_self_intersection_blowup(
    k4_base: &Rational,
    a: &Rational,
    e4: &Rational,
    exceptional_over_point: bool,
) -> Result<Rational, LedgerError> {
    if !exceptional_over_point {
        return Err(LedgerError::CrossTermsUnknown);
    }
    Ok(k4_base + a.pow(4) * e4)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryIntersections {
    pub component: Rational,
    pub marked: Rational,
    pub unmarked: Rational,
}

pub fn boundary_intersections(c: &Constants) -> Result<BoundaryIntersections, LedgerError> {
    let k = c.rational("boundary_component_factors")?;
    let component = segre_cone_exceptional_power(k.to_integer().try_into().map_err(|_| LedgerError::Fixture("factors".into()))?);
    let marked = &component * c.rational("cusp_count")?;
    let unmarked = &marked / c.rational("cover_degree")?;
    Ok(BoundaryIntersections { component, marked, unmarked })
}

/// Top intersections on the Baily-Borel model by two routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseIntersections {
    pub canonical_by_degree: Rational,
    pub canonical_by_lambda: Rational,
    pub lambda: Rational,
}

impl BaseIntersections {
    pub fn agree(&self) -> bool {
        self.canonical_by_degree == self.canonical_by_lambda
    }
}

pub fn base_intersections(h: &HodgeRelations) -> Result<BaseIntersections, LedgerError> {
    let p = WeightedProjectiveSpace::new(&[1, 2, 3, 4, 5])?;
    let k = int(p.canonical_degree());
    let canonical_by_degree = p.top_intersection(&[k.clone(), k.clone(), k.clone(), k])?;
    // O(1) = 6 lambda, so lambda = O(1/6)
    let per_lambda = Rational::one()
        / h.polarization
            .multiple_of(sym::LAMBDA)
            .ok_or_else(|| LedgerError::Fixture("polarization".into()))?;
    let lambda = p.top_intersection(&[per_lambda.clone(), per_lambda.clone(), per_lambda.clone(), per_lambda])?;
    let k_lambda = h
        .canonical
        .multiple_of(sym::LAMBDA)
        .ok_or_else(|| LedgerError::Fixture("canonical".into()))?;
    Ok(BaseIntersections { canonical_by_lambda: k_lambda.pow(4) * &lambda, canonical_by_degree, lambda })
}

/// Checks on the toroidal side, written with the symbols of [`sym`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToroidalConsistency {
    /// `5 lambda - 2/3 (Dt + 3T) + T`
    pub marked_via_pullback: DivisorExpression,
    /// `5 lambda - 2/3 Dt - T`
    pub marked_direct: DivisorExpression,
    /// Discrepancy solved from the unmarked pullbacks.
    pub unmarked_discrepancy: Rational,
    /// Discrepancy from the toroidal formula.
    pub formula_discrepancy: Rational,
}

impl ToroidalConsistency {
    pub fn holds(&self) -> bool {
        self.marked_via_pullback == self.marked_direct && self.unmarked_discrepancy == self.formula_discrepancy
    }
}

pub fn toroidal_consistency(c: &Constants) -> Result<ToroidalConsistency, LedgerError> {
    use sym::*;
    let t_normal = c.triple("boundary_normal_class")?;
    let mu_d = pullback_coefficient(&c.triple("restriction_marked_discriminant")?, &t_normal)?;
    let mu_r = pullback_coefficient(&c.triple("restriction_marked_eckardt")?, &t_normal)?;
    let r = c.rational("boundary_ramification_index")?.to_integer().try_into().map_err(|_| LedgerError::NonPositiveIndex)?;
    let formula_discrepancy = toroidal_discrepancy(r, &mu_d, &mu_r)?;

    let lam = DivisorExpression::symbol(LAMBDA);
    let tm = DivisorExpression::symbol(T_M);
    let branch_m = Rational::one() - Rational::one() / c.rational("ramification_marked_discriminant")?;
    let pulled_d = &DivisorExpression::symbol(DT_NM) + &tm.scale(&mu_d);
    let marked_via_pullback = &(&lam.scale(&int(5)) - &pulled_d.scale(&branch_m)) + &tm;
    let marked_direct = &(&lam.scale(&int(5)) - &DivisorExpression::term(branch_m, DT_NM)) - &tm;

    // unmarked: p^*K + a T must equal 5 lambda - 5/6 Dt - 1/2 Rt - T
    let factor = c.rational("unmarked_multiplicity_factor")?;
    let t = DivisorExpression::symbol(T);
    let bd = Rational::one() - Rational::one() / c.rational("ramification_discriminant")?;
    let br = Rational::one() - Rational::one() / c.rational("ramification_eckardt")?;
    let pullback_k = &(&lam.scale(&int(5))
        - &(&DivisorExpression::symbol(DT_N) + &t.scale(&(&mu_d * &factor))).scale(&bd))
        - &(&DivisorExpression::symbol(RT) + &t.scale(&(&mu_r * &factor))).scale(&br);
    let target = &(&(&lam.scale(&int(5)) - &DivisorExpression::term(bd, DT_N)) - &DivisorExpression::term(br, RT)) - &t;
    let unmarked_discrepancy = (&target - &pullback_k).coefficient(T);
    Ok(ToroidalConsistency { marked_via_pullback, marked_direct, unmarked_discrepancy, formula_discrepancy })
}

/// Constraint on an intersection number that is not known as a value:
/// it lies in `(1/e^d) Z` with `e` prime to every excluded prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorConstraint {
    pub dimension: u32,
    pub excluded_primes: BTreeSet<BigInt>,
}

impl DenominatorConstraint {
    /// Lower bound on `val_p` of a number satisfying the constraint, or
    /// `None` if `p` may divide the denominator.
    pub fn valuation_floor(&self, p: &BigInt) -> Option<i64> {
        self.excluded_primes.contains(p).then_some(0)
    }

    /// Bound on the denominator `e^d` for a given `e`.
    pub fn denominator_bound(&self, e: &BigInt) -> BigInt {
        num_traits::pow(e.clone(), self.dimension as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KEquivalenceWitness {
    pub prime: BigInt,
    pub coefficient: Rational,
    pub coefficient_valuation: Valuation,
    pub rhs: Rational,
    pub rhs_valuation: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KEquivalenceVerdict {
    NotKEquivalent(KEquivalenceWitness),
    Inconclusive,
}

impl fmt::Display for KEquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KEquivalenceVerdict::NotKEquivalent(w) => write!(
                f,
                "NOT-K-EQUIVALENT (p={}, val_p(coeff)={}, val_p(rhs)={})",
                w.prime, w.coefficient_valuation, w.rhs_valuation
            ),
            KEquivalenceVerdict::Inconclusive => f.write_str("INCONCLUSIVE"),
        }
    }
}

/// Compares `base + coeff * d` with `base + rhs` where only a
/// [`DenominatorConstraint`] on `d` is known. If `rhs` is nonzero and
/// some excluded prime divides `coeff` to a higher power than `rhs`, the
/// two cannot agree: `coeff * d` is zero or has `p`-adic valuation at
/// least `val_p(coeff)`.
pub fn k_equivalence_certificate(
    coeff: &Rational,
    constraint: &DenominatorConstraint,
    rhs: &Rational,
) -> Result<KEquivalenceVerdict, LedgerError> {
    if rhs.is_zero() || coeff.is_zero() {
        return Ok(KEquivalenceVerdict::Inconclusive);
    }
    for p in &constraint.excluded_primes {
        let Some(floor) = constraint.valuation_floor(p) else { continue };
        let vc = val_p(coeff, p)?;
        let vr = val_p(rhs, p)?;
        if let (Valuation::Finite(a), Valuation::Finite(b)) = (&vc, &vr) {
            if a + floor > *b {
                return Ok(KEquivalenceVerdict::NotKEquivalent(KEquivalenceWitness {
                    prime: p.clone(),
                    coefficient: coeff.clone(),
                    coefficient_valuation: vc,
                    rhs: rhs.clone(),
                    rhs_valuation: vr,
                }));
            }
        }
    }
    Ok(KEquivalenceVerdict::Inconclusive)
}

/// Primes that divide `coeff` but no stabilizer order.
pub fn excluded_primes(coeff: &Rational, stabilizer_primes: &BTreeSet<BigInt>) -> BTreeSet<BigInt> {
    crate::exact::prime_factors(coeff.numer())
        .into_iter()
        .filter(|p| !stabilizer_primes.contains(p))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCounts {
    pub isotropic: usize,
    pub short: usize,
    pub long: usize,
    pub short_perp: usize,
    pub long_perp: usize,
    pub points: usize,
}

fn norm_f3(v: &[u8; 5]) -> u8 {
    let s: i32 = v[..4].iter().map(|&x| (x as i32).pow(2)).sum::<i32>() - (v[4] as i32).pow(2);
    s.rem_euclid(3) as u8
}

fn pairing_f3(a: &[u8; 5], b: &[u8; 5]) -> u8 {
    let s: i32 = (0..4).map(|i| a[i] as i32 * b[i] as i32).sum::<i32>() - a[4] as i32 * b[4] as i32;
    s.rem_euclid(3) as u8
}

/// Projective points of `F_3^5` under `x1^2 + ... + x4^2 - x5^2`, by
/// norm, and those orthogonal to the isotropic point `(0,0,0,1,1)`.
pub fn f3_root_counts() -> RootCounts {
    let mut pts = Vec::new();
    for code in 1..243u32 {
        let mut v = [0u8; 5];
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % 3) as u8;
            c /= 3;
        }
        // representative with first nonzero coordinate 1
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            pts.push(v);
        }
    }
    let h = [0, 0, 0, 1, 1];
    debug_assert_eq!(norm_f3(&h), 0);
    let count = |n: u8, perp: bool| {
        pts.iter()
            .filter(|v| norm_f3(v) == n && (!perp || pairing_f3(v, &h) == 0))
            .count()
    };
    RootCounts {
        isotropic: count(0, false),
        short: count(1, false),
        long: count(2, false),
        short_perp: count(1, true),
        long_perp: count(2, true),
        points: pts.len(),
    }
}

/// Symmetric pairing on divisor symbols of a surface.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionForm {
    table: BTreeMap<(String, String), Rational>,
}

impl IntersectionForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, a: &str, b: &str, v: Rational) -> Self {
        let key = if a <= b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        self.table.insert(key, v);
        self
    }

    pub fn pairing(&self, a: &str, b: &str) -> Result<Rational, LedgerError> {
        let key = if a <= b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        self.table
            .get(&key)
            .cloned()
            .ok_or_else(|| LedgerError::MissingPairing(a.to_string(), b.to_string()))
    }

    pub fn product(&self, x: &DivisorExpression, y: &DivisorExpression) -> Result<Rational, LedgerError> {
        let mut s = Rational::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                s += ca * cb * self.pairing(a, b)?;
            }
        }
        Ok(s)
    }
}

pub fn quadratic_self_intersection(e: &DivisorExpression, form: &IntersectionForm) -> Result<Rational, LedgerError> {
    form.product(e, e)
}

/// Discrepancy of the exceptional curve of a `1/n(1,1)` point.
pub fn cyclic_discrepancy(n: i64) -> Rational {
    Rational::new((2 - n).into(), n.into())
}

/// `K.C` for a smooth rational curve from adjunction.
pub fn adjunction_degree(self_intersection: &Rational) -> Rational {
    -int(2) - self_intersection
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceExample {
    pub plane: Rational,
    pub one_blowup: Rational,
    pub contracted: Rational,
}

/// The plane with a cuspidal cubic: one blowup of the cusp versus the log
/// resolution with the `-3` and `-2` curves contracted.
pub fn surface_example(c: &Constants) -> Result<SurfaceExample, LedgerError> {
    let h = "H";
    let plane_form = IntersectionForm::new().set(h, h, int(1));
    let k_plane = DivisorExpression::term(int(-3), h);
    let plane = quadratic_self_intersection(&k_plane, &plane_form)?;

    // pullback of K plus the exceptional curve
    let blow = IntersectionForm::new()
        .set("piK", "piK", plane.clone())
        .set("piK", "E", int(0))
        .set("E", "E", int(-1));
    let k_blow = &DivisorExpression::symbol("piK") + &DivisorExpression::symbol("E");
    let one_blowup = quadratic_self_intersection(&k_blow, &blow)?;

    let blowups = c.rational("surface_blowups")?;
    let e1 = c.rational("surface_e1_square")?;
    let k_hat_sq = &plane - &blowups;
    // only E1 has nonzero discrepancy; the -2 curve is crepant
    let disc = cyclic_discrepancy(-e1.to_integer().try_into().map_err(|_| LedgerError::Fixture("E1".into()))?);
    let hat = IntersectionForm::new()
        .set("K_hat", "K_hat", k_hat_sq)
        .set("K_hat", "E1", adjunction_degree(&e1))
        .set("E1", "E1", e1);
    let pulled = &DivisorExpression::symbol("K_hat") - &DivisorExpression::term(disc, "E1");
    let contracted = quadratic_self_intersection(&pulled, &hat)?;
    Ok(SurfaceExample { plane, one_blowup, contracted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn lam(c: i64) -> DivisorExpression {
        DivisorExpression::term(int(c), sym::LAMBDA)
    }

    #[test]
    fn hodge() {
        let h = standard_hodge_relations().unwrap();
        assert_eq!(h.discriminant, lam(24));
        assert_eq!(h.eckardt, lam(150));
        assert_eq!(h.canonical, lam(-90));
        assert_eq!(h.polarization, lam(6));
        assert!(h.polarizations_agree());
        assert_eq!(h.marked_discriminant, DivisorExpression::term(int(12), sym::LAMBDA_M));
        assert_eq!(h.marked_canonical_formula.to_string(), "-2/3*D_nm + 5*lambda_m");
        // 4 lambda_m = D_nm / 3
        assert_eq!(h.marked_discriminant.scale(&rat(1, 3)), DivisorExpression::term(int(4), sym::LAMBDA_M));
    }

    #[test]
    fn rewriting_is_order_independent() {
        let h = standard_hodge_relations().unwrap();
        let e = DivisorExpression::from_terms(&[(int(2), sym::D_N), (rat(1, 3), sym::R), (int(-1), sym::O1)]);
        assert!(h.rules.confluent_on(&e).unwrap());
        assert_eq!(h.rules.normalize(&e).unwrap(), lam(48 + 50 - 6));
    }

    #[test]
    fn riemann_hurwitz() {
        let c = constants().unwrap();
        let g = git_canonical(&c).unwrap();
        assert_eq!(g.pullback, DivisorExpression::term(int(-120), sym::H));
        assert_eq!(g.degree, int(-15));
        assert_eq!(g.in_discriminant, rat(-15, 4));
        assert!(g.routes_agree());
        assert!(g.eckardt_doubling());
        let k = DivisorExpression::symbol("K");
        assert_eq!(riemann_hurwitz_git(&k, &[]).unwrap(), k);
        assert!(riemann_hurwitz_git(&k, &[(k.clone(), rat(1, 2))]).is_err());
    }

    #[test]
    fn discrepancies() {
        assert_eq!(kirwan_discrepancy(6, &[(int(2), int(15))], &int(1)).unwrap(), int(20));
        assert_eq!(kirwan_discrepancy(6, &[], &int(1)).unwrap(), int(5));
        assert_eq!(kirwan_discrepancy(6, &[(int(2), int(15))], &int(2)).unwrap(), rat(19, 2));
        assert_eq!(
            kirwan_discrepancy_with_boundary(&int(5), &[(int(2), int(15))], &int(1)).unwrap(),
            int(20)
        );
        assert_eq!(toroidal_discrepancy(1, &int(3), &int(12)).unwrap(), int(16));
        assert_eq!(toroidal_discrepancy(1, &int(0), &int(0)).unwrap(), int(1));
    }

    #[test]
    fn pullbacks() {
        assert_eq!(pullback_coefficient(&[3, 3, 3], &[-1, -1, -1]).unwrap(), int(3));
        assert_eq!(pullback_coefficient(&[12, 12, 12], &[-1, -1, -1]).unwrap(), int(12));
        assert_eq!(pullback_coefficient(&[0, 0, 0], &[-1, 2, -1]).unwrap(), int(0));
        assert_eq!(pullback_coefficient(&[1, 2, 3], &[-1, -1, -1]), Err(LedgerError::InconsistentComponents));
        assert_eq!(pullback_coefficient(&[1, 2, 3], &[0, 0, 0]), Err(LedgerError::ZeroExceptional));
    }

    #[test]
    fn toroidal_side() {
        let c = constants().unwrap();
        let t = toroidal_consistency(&c).unwrap();
        assert!(t.holds(), "{t:?}");
        assert_eq!(t.unmarked_discrepancy, int(16));
        let b = boundary_intersections(&c).unwrap();
        assert_eq!(b.component, int(-6));
        assert_eq!(b.marked, int(-240));
        assert_eq!(b.unmarked, rat(-1, 216));
    }

    #[test]
    fn final_numbers() {
        let h = standard_hodge_relations().unwrap();
        let base = base_intersections(&h).unwrap();
        assert_eq!(base.canonical_by_degree, rat(3375, 8));
        assert_eq!(base.lambda, rat(1, 155520));
        assert!(base.agree());
        let k = top_self_intersection_blowup(&rat(3375, 8), &int(16), &rat(-1, 216), true).unwrap();
        assert_eq!(k, rat(25589, 216));
        assert_eq!(top_self_intersection_blowup(&int(7), &int(3), &int(0), true).unwrap(), int(7));
        assert!(top_self_intersection_blowup(&int(7), &int(3), &int(1), false).is_err());
    }

    #[test]
    fn certificate() {
        let coeff = int(20).pow(4);
        assert_eq!(coeff, int(5i64.pow(4) * 2i64.pow(8)));
        let stab: BTreeSet<BigInt> = [2, 3, 7].into_iter().map(BigInt::from).collect();
        let constraint = DenominatorConstraint { dimension: 4, excluded_primes: excluded_primes(&coeff, &stab) };
        assert_eq!(constraint.excluded_primes, BTreeSet::from([BigInt::from(5)]));
        let rhs = int(16).pow(4) * rat(-1, 216);
        assert_eq!(rhs, rat(-(1 << 13), 27));
        match k_equivalence_certificate(&coeff, &constraint, &rhs).unwrap() {
            KEquivalenceVerdict::NotKEquivalent(w) => {
                assert_eq!(w.prime, BigInt::from(5));
                assert_eq!(w.coefficient_valuation, Valuation::Finite(4));
                assert_eq!(w.rhs_valuation, Valuation::Finite(0));
            }
            v => panic!("{v}"),
        }
        assert_eq!(k_equivalence_certificate(&rhs, &constraint, &rhs).unwrap(), KEquivalenceVerdict::Inconclusive);
        let none = DenominatorConstraint { dimension: 4, excluded_primes: BTreeSet::new() };
        assert_eq!(k_equivalence_certificate(&coeff, &none, &rhs).unwrap(), KEquivalenceVerdict::Inconclusive);
        assert_eq!(constraint.denominator_bound(&BigInt::from(6)), BigInt::from(1296));
    }

    #[test]
    fn root_counts() {
        let r = f3_root_counts();
        assert_eq!(r.points, 121);
        assert_eq!((r.isotropic, r.short, r.long), (40, 36, 45));
        assert_eq!((r.short_perp, r.long_perp), (9, 18));
    }

    #[test]
    fn surfaces() {
        let c = constants().unwrap();
        let s = surface_example(&c).unwrap();
        assert_eq!(s.plane, int(9));
        assert_eq!(s.one_blowup, int(8));
        assert_eq!(s.contracted, rat(19, 3));
        assert_eq!(cyclic_discrepancy(3), rat(-1, 3));
        assert_eq!(cyclic_discrepancy(2), int(0));
        let empty = IntersectionForm::new();
        assert!(quadratic_self_intersection(&DivisorExpression::symbol("X"), &empty).is_err());
    }
}
