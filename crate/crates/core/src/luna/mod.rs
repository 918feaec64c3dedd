//! The slice through the cubic `x0 x1 x2 + x3^3` (three `A2` points).
//!
//! The slice is the six-parameter family
//!
//! `F = x0 x1 x2 + x3^3 + sum_i a_i x_i^3 + sum_i ah_i x_i^2 x3`
//!
//! with slice coordinates `a0, a1, a2, ah0, ah1, ah2`. Everything in this
//! module is symbolic: generic points are formal variables, and group
//! elements may depend on formal parameters.

mod blowup;
mod screens;

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::cyclotomic::Cyclotomic;
use crate::exact::{rank_q, Rational};
use crate::git::GitError;
use crate::poly::{LaurentPolynomial, Monomial, PolyError, Ring, Substitution};

pub use blowup::{
    blowup_chart_transform, standard_torus_slice, torus_luna_slice, transversality_diagnostic, BlowupChart,
    ChartTransform, Contact, TorusSlice, TransversalityReport,
};
pub use screens::{
    case_screens, eckardt_multiplicity, finite_part_screen, CaseScreens, CaseTwoSubcase, DiagonalScreen,
    EckardtAudit, EckardtComponent, FinitePartScreen, IdentityImage, PermutationScreen, SignPatternScreen,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LunaError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Git(#[from] GitError),
    #[error("group element violates l0 l1 l2 = l3^3")]
    ConstraintViolated,
    #[error("{0} must be a single nonzero term")]
    NotATerm(String),
    #[error("expected a cubic form in four variables")]
    NotACubicForm,
    #[error("linear algebra needs rational coefficients")]
    NonRationalCoefficient,
    #[error("normalization weights are singular (determinant {0})")]
    SingularNormalization(BigInt),
    #[error("factor does not meet the exceptional divisor")]
    NotMeeting,
    #[error("factor vanishes identically on the exceptional divisor")]
    ContainsExceptional,
    #[error("common component is not a coordinate hyperplane of the exceptional divisor")]
    UnsupportedComponent,
    #[error("image of `{0}` is not a scalar multiple of it")]
    NotSemiInvariant(String),
}

pub const X_VARS: [&str; 4] = ["x0", "x1", "x2", "x3"];
pub const SLICE_VARS: [&str; 6] = ["a0", "a1", "a2", "ah0", "ah1", "ah2"];

/// Slice coordinates `a0, a1, a2, ah0, ah1, ah2`.
pub fn slice_ring(conductor: u32) -> Arc<Ring> {
    Ring::new(&SLICE_VARS, conductor).expect("distinct names")
}

/// Projective coordinates `x0..x3` followed by the slice coordinates.
pub fn family_ring(conductor: u32) -> Arc<Ring> {
    let vars: Vec<&str> = X_VARS.iter().chain(SLICE_VARS.iter()).copied().collect();
    Ring::new(&vars, conductor).expect("distinct names")
}

/// Ring of the four projective coordinates only.
pub fn form_ring(conductor: u32) -> Arc<Ring> {
    Ring::new(&X_VARS, conductor).expect("distinct names")
}

fn parse(ring: &Arc<Ring>, s: &str) -> LaurentPolynomial {
    LaurentPolynomial::parse(ring, s).expect("well-formed literal")
}

/// The universal cubic over the slice, in [`family_ring`].
pub fn cubic_family(conductor: u32) -> LaurentPolynomial {
    parse(
        &family_ring(conductor),
        "x0*x1*x2 + x3^3 + a0*x0^3 + a1*x1^3 + a2*x2^3 + ah0*x0^2*x3 + ah1*x1^2*x3 + ah2*x2^2*x3",
    )
}

/// `x0 x1 x2 + x3^3`.
pub fn three_a2_cubic(conductor: u32) -> LaurentPolynomial {
    parse(&form_ring(conductor), "x0*x1*x2 + x3^3")
}

/// `x0^3 + x1^3 + x2^3 + x3^3`.
pub fn fermat_cubic(conductor: u32) -> LaurentPolynomial {
    parse(&form_ring(conductor), "x0^3 + x1^3 + x2^3 + x3^3")
}

/// The three factors `27 a_i^2 + 4 ah_i^3`.
pub fn discriminant_factors(conductor: u32) -> Vec<LaurentPolynomial> {
    let r = slice_ring(conductor);
    (0..3)
        .map(|i| parse(&r, &format!("27*a{i}^2 + 4*ah{i}^3")))
        .collect()
}

/// The discriminant of the slice family: the product of
/// [`discriminant_factors`].
pub fn discriminant(conductor: u32) -> LaurentPolynomial {
    let fs = discriminant_factors(conductor);
    fs.iter().skip(1).fold(fs[0].clone(), |a, b| &a * b)
}

/// Tangent space to the orbit of a cubic form and a complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSpace {
    /// Entries `DF[i][j] = x_j dF/dx_i` of the infinitesimal action.
    pub entries: Vec<Vec<LaurentPolynomial>>,
    /// Groups of positions whose entries coincide.
    pub repeated_entries: Vec<Vec<(usize, usize)>>,
    /// Dimension of the projective tangent space to the orbit in `P^19`.
    pub tangent_dimension: usize,
    /// Monomials completing the tangent space to all cubics.
    pub normal_basis: Vec<LaurentPolynomial>,
}

fn cubic_monomials(n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=3i64 {
        for b in 0..=3 - a {
            for c in 0..=3 - a - b {
                let d = 3 - a - b - c;
                out.push(Monomial(vec![a, b, c, d]));
            }
        }
    }
    debug_assert_eq!(n, 4);
    out.sort();
    out.reverse();
    out
}

fn coefficient_vector(f: &LaurentPolynomial, basis: &[Monomial]) -> Result<Vec<Rational>, LunaError> {
    basis
        .iter()
        .map(|m| f.coefficient(m).as_rational().ok_or(LunaError::NonRationalCoefficient))
        .collect()
}

/// Tangent space to the `GL4` orbit of a cubic form `f` and a monomial
/// complement, inside the 20-dimensional space of cubics.
///
/// ```
/// use kirwan_core::luna::{orbit_normal_space, three_a2_cubic};
/// let ns = orbit_normal_space(&three_a2_cubic(24)).unwrap();
/// assert_eq!(ns.tangent_dimension, 13);
/// assert_eq!(ns.normal_basis.len(), 6);
/// ```
pub fn orbit_normal_space(f: &LaurentPolynomial) -> Result<NormalSpace, LunaError> {
    let ring = f.ring().clone();
    if ring.nvars() != 4 {
        return Err(LunaError::NotACubicForm);
    }
    let monos = cubic_monomials(4);
    if f.is_zero() || f.terms().any(|(m, _)| !monos.contains(m)) {
        return Err(LunaError::NotACubicForm);
    }
    let vars: Vec<String> = ring.vars().to_vec();
    let mut entries = Vec::new();
    for xi in &vars {
        let d = f.partial(xi)?;
        let row: Vec<LaurentPolynomial> = vars
            .iter()
            .map(|xj| &LaurentPolynomial::var(&ring, xj).expect("own variable") * &d)
            .collect();
        entries.push(row);
    }
    let mut repeated: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if entries[i][j].is_zero() || seen.contains(&(i, j)) {
                continue;
            }
            let group: Vec<(usize, usize)> = (0..4)
                .flat_map(|a| (0..4).map(move |b| (a, b)))
                .filter(|&(a, b)| (a, b) >= (i, j) && entries[a][b] == entries[i][j])
                .collect();
            seen.extend(&group);
            if group.len() > 1 {
                repeated.push(group);
            }
        }
    }
    let mut rows: Vec<Vec<Rational>> = vec![coefficient_vector(f, &monos)?];
    for row in &entries {
        for e in row {
            rows.push(coefficient_vector(e, &monos)?);
        }
    }
    let mut rank = rank_q(&rows);
    let tangent_dimension = rank - 1;
    let mut normal_basis = Vec::new();
    for m in &monos {
        if rank == monos.len() {
            break;
        }
        let mut v = vec![Rational::from_integer(0.into()); monos.len()];
        v[monos.iter().position(|x| x == m).expect("member")] = Rational::from_integer(1.into());
        rows.push(v);
        let r = rank_q(&rows);
        if r > rank {
            rank = r;
            normal_basis.push(LaurentPolynomial::monomial(&ring, Cyclotomic::one(ring.conductor()), &{
                let names: Vec<(&str, i64)> = vars.iter().map(String::as_str).zip(m.0.iter().copied()).collect();
                names
            })?);
        } else {
            rows.pop();
        }
    }
    Ok(NormalSpace {
        entries,
        repeated_entries: repeated,
        tangent_dimension,
        normal_basis,
    })
}

/// A monomial matrix preserving `x0 x1 x2 + x3^3`, acting on the slice by
/// `a_i -> (l_{p(i)} / l3)^3 a_{p(i)}` and `ah_i -> (l_{p(i)} / l3)^2 ah_{p(i)}`.
///
/// The scalars `l0..l3` are single terms in a parameter ring (constants
/// for concrete elements, formal units otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceElement {
    pub perm: [usize; 3],
    pub lambdas: [LaurentPolynomial; 4],
}

impl SliceElement {
    pub fn new(perm: [usize; 3], lambdas: [LaurentPolynomial; 4]) -> Result<Self, LunaError> {
        let mut sorted = perm;
        sorted.sort();
        if sorted != [0, 1, 2] {
            return Err(LunaError::NotATerm("permutation".into()));
        }
        for (i, l) in lambdas.iter().enumerate() {
            if l.as_term().is_none() {
                return Err(LunaError::NotATerm(format!("l{i}")));
            }
        }
        let lhs = &(&lambdas[0] * &lambdas[1]) * &lambdas[2];
        if lhs != lambdas[3].pow(3) {
            return Err(LunaError::ConstraintViolated);
        }
        Ok(SliceElement { perm, lambdas })
    }

    /// A diagonal element with constant entries.
    pub fn diagonal(conductor: u32, lambdas: [Cyclotomic; 4]) -> Result<Self, LunaError> {
        let r = Ring::new::<&str>(&[], conductor)?;
        let ls = lambdas.map(|c| LaurentPolynomial::constant(&r, c));
        Self::new([0, 1, 2], ls)
    }

    /// The permutation `perm` with all scalars one.
    pub fn permutation(conductor: u32, perm: [usize; 3]) -> Result<Self, LunaError> {
        let r = Ring::new::<&str>(&[], conductor)?;
        let one = LaurentPolynomial::from_int(&r, 1);
        Self::new(perm, [one.clone(), one.clone(), one.clone(), one])
    }

    pub fn parameter_ring(&self) -> &Arc<Ring> {
        self.lambdas[0].ring()
    }

    pub fn sign(&self) -> i64 {
        let p = self.perm;
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Determinant of the monomial matrix.
    pub fn determinant(&self) -> LaurentPolynomial {
        let prod = self.lambdas.iter().skip(1).fold(self.lambdas[0].clone(), |a, b| &a * b);
        if self.sign() < 0 {
            -prod
        } else {
            prod
        }
    }

    /// Multiplier and source coordinate for slice coordinate `a{i}` (`hat =
    /// false`) or `ah{i}`.
    pub fn multiplier(&self, i: usize, hat: bool) -> Result<(LaurentPolynomial, usize), LunaError> {
        let j = self.perm[i];
        let ratio = &self.lambdas[j] * &self.lambdas[3].term_inverse()?;
        Ok((ratio.pow(if hat { 2 } else { 3 }), j))
    }

    /// Whether this element is a scalar matrix.
    pub fn is_scalar(&self) -> bool {
        self.perm == [0, 1, 2] && self.lambdas.iter().all(|l| *l == self.lambdas[0])
    }
}

/// Pulls back a function on the slice along the action of `g`: every slice
/// coordinate is replaced by its image. The result lives in the ring of
/// `f` extended by the parameters of `g`.
pub fn slice_action(g: &SliceElement, f: &LaurentPolynomial) -> Result<LaurentPolynomial, LunaError> {
    let target = f.ring().union(g.parameter_ring())?;
    let mut s = Substitution::identity(f.ring(), &target);
    for hat in [false, true] {
        for i in 0..3 {
            let name = if hat { format!("ah{i}") } else { format!("a{i}") };
            if f.ring().index_of(&name).is_none() {
                continue;
            }
            let (mult, j) = g.multiplier(i, hat)?;
            let src = if hat { format!("ah{j}") } else { format!("a{j}") };
            let image = &mult.embed(&target)? * &LaurentPolynomial::var(&target, &src)?;
            s.set(&name, image)?;
        }
    }
    Ok(f.substitute(&s)?)
}

/// Evidence that the discriminant cuts out the singular members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantCertificate {
    pub discriminant: LaurentPolynomial,
    /// For each `i`, whether the cubic and its four partials vanish at
    /// `(x_i = 1, x3 = s)` along `a_i = 2 s^3, ah_i = -3 s^2`.
    pub cusp_witnesses: Vec<bool>,
    /// Whether `27 a_i^2 + 4 ah_i^3` vanishes on that parametrization.
    pub parametrization_on_factor: Vec<bool>,
    /// The same checks specialized to `s = 1`.
    pub spot_checks: Vec<bool>,
    /// Coordinate points where the central fibre `x0 x1 x2 + x3^3` is singular.
    pub central_singular_points: Vec<usize>,
}

impl DiscriminantCertificate {
    pub fn holds(&self) -> bool {
        self.cusp_witnesses.iter().all(|&b| b)
            && self.parametrization_on_factor.iter().all(|&b| b)
            && self.spot_checks.iter().all(|&b| b)
            && self.central_singular_points == vec![0, 1, 2]
    }
}

fn vanishes_with_gradient(f: &LaurentPolynomial, s: &Substitution) -> Result<bool, LunaError> {
    if !f.substitute(s)?.is_zero() {
        return Ok(false);
    }
    for x in X_VARS {
        if !f.partial(x)?.substitute(s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Discriminant of the slice family with a singular-point certificate.
pub fn discriminant_in_slice(conductor: u32) -> Result<DiscriminantCertificate, LunaError> {
    let fam = cubic_family(conductor);
    let mut cusp_witnesses = Vec::new();
    let mut parametrization_on_factor = Vec::new();
    let mut spot_checks = Vec::new();
    let factors = discriminant_factors(conductor);
    for i in 0..3 {
        let others: Vec<String> = SLICE_VARS
            .iter()
            .filter(|v| **v != format!("a{i}") && **v != format!("ah{i}"))
            .map(|v| v.to_string())
            .collect();
        let mut vars = vec!["s".to_string()];
        vars.extend(others);
        let target = Ring::new(&vars, conductor)?;
        let mut sub = Substitution::identity(fam.ring(), &target);
        for j in 0..3 {
            sub.set_text(&format!("x{j}"), if j == i { "1" } else { "0" })?;
        }
        sub.set_text("x3", "s")?;
        sub.set_text(&format!("a{i}"), "2*s^3")?;
        sub.set_text(&format!("ah{i}"), "-3*s^2")?;
        cusp_witnesses.push(vanishes_with_gradient(&fam, &sub)?);

        let factor_sub = {
            let mut fs = Substitution::identity(factors[i].ring(), &target);
            fs.set_text(&format!("a{i}"), "2*s^3")?;
            fs.set_text(&format!("ah{i}"), "-3*s^2")?;
            fs
        };
        parametrization_on_factor.push(factors[i].substitute(&factor_sub)?.is_zero());

        let mut spot = sub.clone();
        spot.set_text("x3", "1")?;
        spot.set_text(&format!("a{i}"), "2")?;
        spot.set_text(&format!("ah{i}"), "-3")?;
        spot_checks.push(vanishes_with_gradient(&fam, &spot)?);
    }
    let central = three_a2_cubic(conductor);
    let mut central_singular_points = Vec::new();
    for i in 0..4 {
        let mut s = Substitution::new(central.ring());
        for (j, x) in X_VARS.iter().enumerate() {
            s.set_text(x, if i == j { "1" } else { "0" })?;
        }
        if vanishes_with_gradient(&central, &s)? {
            central_singular_points.push(i);
        }
    }
    Ok(DiscriminantCertificate {
        discriminant: discriminant(conductor),
        cusp_witnesses,
        parametrization_on_factor,
        spot_checks,
        central_singular_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::DEFAULT_CONDUCTOR as N;

    #[test]
    fn normal_space_of_three_a2() {
        let ns = orbit_normal_space(&three_a2_cubic(N)).unwrap();
        assert_eq!(ns.tangent_dimension, 13);
        let mut got: Vec<String> = ns.normal_basis.iter().map(|p| p.to_string()).collect();
        got.sort();
        let mut want = vec!["x0^3", "x1^3", "x2^3", "x0^2*x3", "x1^2*x3", "x2^2*x3"];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(ns.repeated_entries, vec![vec![(0, 0), (1, 1), (2, 2)]]);
        assert_eq!(ns.tangent_dimension + ns.normal_basis.len(), 19);
    }

    #[test]
    fn normal_space_of_fermat() {
        let ns = orbit_normal_space(&fermat_cubic(N)).unwrap();
        assert_eq!(ns.tangent_dimension, 15);
        assert_eq!(ns.normal_basis.len(), 4);
        assert!(ns.repeated_entries.is_empty());
    }

    #[test]
    fn normal_space_rejects_non_cubics() {
        let r = form_ring(N);
        let q = LaurentPolynomial::parse(&r, "x0^2").unwrap();
        assert_eq!(orbit_normal_space(&q), Err(LunaError::NotACubicForm));
    }

    #[test]
    fn diagonal_action_on_slice() {
        let params = Ring::new(&["l0", "l1", "l2", "l3"], N).unwrap();
        let l = |s: &str| LaurentPolynomial::parse(&params, s).unwrap();
        // l2 is forced by the constraint
        let g = SliceElement::new([0, 1, 2], [l("l0"), l("l1"), l("l3^3*l0^-1*l1^-1"), l("l3")]).unwrap();
        let r = slice_ring(N);
        let f = LaurentPolynomial::parse(&r, "a0 + ah1").unwrap();
        let img = slice_action(&g, &f).unwrap();
        let t = img.ring().clone();
        assert_eq!(img, LaurentPolynomial::parse(&t, "l0^3*l3^-3*a0 + l1^2*l3^-2*ah1").unwrap());
        let bad = SliceElement::new([0, 1, 2], [l("l0"), l("l1"), l("l2"), l("l3")]);
        assert_eq!(bad, Err(LunaError::ConstraintViolated));
    }

    #[test]
    fn identity_and_permutations() {
        let r = slice_ring(N);
        let f = LaurentPolynomial::parse(&r, "a0*ah1^2 + a2").unwrap();
        let id = SliceElement::permutation(N, [0, 1, 2]).unwrap();
        assert_eq!(slice_action(&id, &f).unwrap(), f);
        let swap = SliceElement::permutation(N, [1, 0, 2]).unwrap();
        let g = slice_action(&swap, &f).unwrap();
        assert_eq!(g, LaurentPolynomial::parse(&r, "a1*ah0^2 + a2").unwrap());
    }

    #[test]
    fn discriminant_is_symmetric() {
        let d = discriminant(N);
        for p in [[1, 0, 2], [1, 2, 0], [2, 1, 0]] {
            let g = SliceElement::permutation(N, p).unwrap();
            assert_eq!(slice_action(&g, &d).unwrap(), d);
        }
    }

    #[test]
    fn discriminant_certificate() {
        let c = discriminant_in_slice(N).unwrap();
        assert!(c.holds(), "{c:?}");
        assert_eq!(c.discriminant.multiplicity_at_origin().unwrap(), 6);
    }

    /// Pulling back along the slice action agrees with substituting the
    /// monomial matrix into the family, up to the factor `l3^3`.
    #[test]
    fn slice_action_matches_matrix_action() {
        let params = Ring::new(&["l0", "l1", "l3"], N).unwrap();
        let l = |s: &str| LaurentPolynomial::parse(&params, s).unwrap();
        for perm in [[0, 1, 2], [1, 0, 2], [1, 2, 0]] {
            let g = SliceElement::new(perm, [l("l0"), l("l1"), l("l3^3*l0^-1*l1^-1"), l("l3")]).unwrap();
            let fam = cubic_family(N);
            let lhs = slice_action(&g, &fam).unwrap();
            let t = lhs.ring().clone();
            let mut s = Substitution::identity(fam.ring(), &t);
            let inv = {
                let mut inv = [0usize; 3];
                for (i, &p) in perm.iter().enumerate() {
                    inv[p] = i;
                }
                inv
            };
            for j in 0..4 {
                let src = if j < 3 { inv[j] } else { 3 };
                let img = &g.lambdas[j].embed(&t).unwrap() * &LaurentPolynomial::var(&t, &format!("x{src}")).unwrap();
                s.set(&format!("x{j}"), img).unwrap();
            }
            let rhs = fam.substitute(&s).unwrap();
            let l3cubed = g.lambdas[3].pow(3).embed(&t).unwrap();
            assert_eq!(&lhs * &l3cubed, rhs, "{perm:?}");
        }
    }
}
