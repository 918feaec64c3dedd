//! Polytopes of torus GIT quotients: inequalities from a character,
//! vertices, the face lattice and a finite group acting on it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{
    kernel_lattice, lattice_eq, rank_q, solve_q, sublattice_index, ExactError, IntMatrix, Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("basis column {0} is not in the kernel of the character matrix")]
    NotInKernel(usize),
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("inequality system is unbounded")]
    Unbounded,
    #[error("inequality system has no vertices")]
    Empty,
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("group generated by the matrices exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("matrix does not preserve the vertex set")]
    NotAnAutomorphism,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Point = Vec<Rational>;

pub fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// `normal . m >= bound`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub bound: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<BigInt>, bound: Rational) -> Self {
        Halfspace { normal, bound }
    }

    pub fn from_i64(normal: &[i64], bound: i64) -> Self {
        Halfspace {
            normal: normal.iter().map(|&x| BigInt::from(x)).collect(),
            bound: Rational::from_integer(bound.into()),
        }
    }

    pub fn evaluate(&self, m: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(m)
            .map(|(n, x)| Rational::from_integer(n.clone()) * x)
            .sum()
    }

    pub fn contains(&self, m: &[Rational]) -> bool {
        self.evaluate(m) >= self.bound
    }

    pub fn is_tight(&self, m: &[Rational]) -> bool {
        self.evaluate(m) == self.bound
    }

    /// Primitive normal with the bound rescaled to match.
    fn primitive(&self) -> (Vec<BigInt>, Rational) {
        let g = self.normal.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return (self.normal.clone(), self.bound.clone());
        }
        (
            self.normal.iter().map(|x| x / &g).collect(),
            &self.bound / Rational::from_integer(g),
        )
    }
}

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, n) in self.normal.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let name = NAMES.get(i).map_or_else(|| format!("m{i}"), |s| s.to_string());
            if n.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if !n.abs().is_one() {
                write!(f, "{}", n.abs())?;
            }
            f.write_str(&name)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " >= {}", self.bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    pub rank: usize,
    pub halfspaces: Vec<Halfspace>,
}

impl InequalitySystem {
    pub fn new(rank: usize, halfspaces: Vec<Halfspace>) -> Result<Self, ToricError> {
        for h in &halfspaces {
            if h.normal.len() != rank {
                return Err(ToricError::Length { expected: rank, got: h.normal.len() });
            }
        }
        Ok(InequalitySystem { rank, halfspaces })
    }

    pub fn contains(&self, m: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(m))
    }

    pub fn scale(&self, k: &Rational) -> InequalitySystem {
        InequalitySystem {
            rank: self.rank,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), &h.bound * k))
                .collect(),
        }
    }

    fn normal_rows(&self, idx: &[usize]) -> Vec<Vec<Rational>> {
        idx.iter()
            .map(|&i| {
                self.halfspaces[i]
                    .normal
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }

    /// The image of the system under `m -> g m`.
    pub fn transform(&self, g: &IntMatrix) -> Result<InequalitySystem, ToricError> {
        let inv = g.unimodular_inverse().ok_or(ToricError::NotUnimodular)?;
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| {
                let row = IntMatrix::from_rows(std::slice::from_ref(&h.normal)).expect("one row");
                let n = row.checked_mul(&inv).expect("conformable").row(0);
                Halfspace::new(n, h.bound.clone())
            })
            .collect();
        Ok(InequalitySystem { rank: self.rank, halfspaces })
    }

    /// Same set of inequalities up to order and positive rescaling.
    pub fn same_halfspaces(&self, other: &InequalitySystem) -> bool {
        let norm = |s: &InequalitySystem| {
            let mut v: Vec<_> = s.halfspaces.iter().map(Halfspace::primitive).collect();
            v.sort();
            v
        };
        norm(self) == norm(other)
    }
}

impl fmt::Display for InequalitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.halfspaces.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Inequalities `e_i(B m) >= -a_i` for `m` in the coordinates of the
/// columns of `basis`, which must lie in the kernel of `gamma`.
pub fn polytope_from_character(
    gamma: &IntMatrix,
    basis: &IntMatrix,
    a: &[i64],
) -> Result<InequalitySystem, ToricError> {
    if a.len() != basis.rows() {
        return Err(ToricError::Length { expected: basis.rows(), got: a.len() });
    }
    let prod = gamma.checked_mul(basis)?;
    if let Some(j) = (0..prod.cols()).find(|&j| prod.column(j).iter().any(|x| !x.is_zero())) {
        return Err(ToricError::NotInKernel(j));
    }
    let halfspaces = (0..basis.rows())
        .map(|i| Halfspace::new(basis.row(i), Rational::from_integer(BigInt::from(-a[i]))))
        .collect();
    InequalitySystem::new(basis.cols(), halfspaces)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Whether `{m : N m >= 0}` is zero.
fn recession_cone_trivial(sys: &InequalitySystem) -> bool {
    let n = sys.rank;
    let all: Vec<usize> = (0..sys.halfspaces.len()).collect();
    if rank_q(&sys.normal_rows(&all)) < n {
        return false;
    }
    // a nonzero pointed cone has an extreme ray cut out by n - 1 tight rows
    for idx in subsets(sys.halfspaces.len(), n - 1) {
        let rows = sys.normal_rows(&idx);
        let null = crate::exact::nullspace_q(&rows, n);
        if null.len() != 1 {
            continue;
        }
        for sign in [1, -1] {
            let d: Vec<Rational> = null[0].iter().map(|x| x * Rational::from_integer(sign.into())).collect();
            let zero = Rational::zero();
            if sys.halfspaces.iter().all(|h| Halfspace::new(h.normal.clone(), zero.clone()).contains(&d)) {
                return false;
            }
        }
    }
    true
}

/// All vertices, each cut out by `rank` independent tight inequalities,
/// sorted and deduplicated.
pub fn enumerate_vertices(sys: &InequalitySystem) -> Result<Vec<Point>, ToricError> {
    if !recession_cone_trivial(sys) {
        return Err(ToricError::Unbounded);
    }
    let mut out = BTreeSet::new();
    for idx in subsets(sys.halfspaces.len(), sys.rank) {
        let rows = sys.normal_rows(&idx);
        let rhs: Vec<Rational> = idx.iter().map(|&i| sys.halfspaces[i].bound.clone()).collect();
        if let Some(p) = solve_q(&rows, &rhs) {
            if sys.contains(&p) {
                out.insert(p);
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub vertices: BTreeSet<usize>,
    /// Indices of the inequalities tight on the face.
    pub tight: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub inequalities: InequalitySystem,
    pub vertices: Vec<Point>,
    /// All nonempty faces, including the polytope itself, sorted by
    /// dimension then vertex set.
    pub faces: Vec<Face>,
}

fn affine_dim(points: &[&Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<Vec<Rational>> = rest
                .iter()
                .map(|p| p.iter().zip(p0.iter()).map(|(a, b)| a - b).collect())
                .collect();
            rank_q(&diffs)
        }
    }
}

impl LatticePolytope {
    pub fn new(inequalities: InequalitySystem) -> Result<Self, ToricError> {
        let vertices = enumerate_vertices(&inequalities)?;
        if vertices.is_empty() {
            return Err(ToricError::Empty);
        }
        let tight_at: Vec<BTreeSet<usize>> = vertices
            .iter()
            .map(|v| {
                (0..inequalities.halfspaces.len())
                    .filter(|&i| inequalities.halfspaces[i].is_tight(v))
                    .collect()
            })
            .collect();
        let vertex_set = |t: &BTreeSet<usize>| -> BTreeSet<usize> {
            (0..vertices.len()).filter(|&v| t.is_subset(&tight_at[v])).collect()
        };
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        sets.insert((0..vertices.len()).collect());
        for i in 0..inequalities.halfspaces.len() {
            let s = vertex_set(&BTreeSet::from([i]));
            if !s.is_empty() {
                sets.insert(s);
            }
        }
        loop {
            let cur: Vec<_> = sets.iter().cloned().collect();
            let mut grew = false;
            for (k, a) in cur.iter().enumerate() {
                for b in &cur[k + 1..] {
                    let c: BTreeSet<usize> = a.intersection(b).copied().collect();
                    if !c.is_empty() && sets.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|vs| {
                let pts: Vec<&Point> = vs.iter().map(|&v| &vertices[v]).collect();
                let tight = vs
                    .iter()
                    .map(|&v| tight_at[v].clone())
                    .reduce(|a, b| a.intersection(&b).copied().collect())
                    .unwrap_or_default();
                Face { dim: affine_dim(&pts), vertices: vs, tight }
            })
            .collect();
        faces.sort();
        Ok(LatticePolytope { inequalities, vertices, faces })
    }

    pub fn rank(&self) -> usize {
        self.inequalities.rank
    }

    pub fn dimension(&self) -> usize {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(0)
    }

    /// Number of faces of each dimension below the top.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dimension();
        (0..d).map(|k| self.faces.iter().filter(|f| f.dim == k).count()).collect()
    }

    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        let d = self.dimension();
        self.faces.iter().filter(move |f| f.dim + 1 == d)
    }

    /// Every vertex lies on exactly `rank` facets, so the normal fan is
    /// simplicial.
    pub fn is_simple(&self) -> bool {
        let d = self.dimension();
        (0..self.vertices.len()).all(|v| self.facets().filter(|f| f.vertices.contains(&v)).count() == d)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn vertex_index(&self, p: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == p)
    }

    pub fn face_index(&self, vertices: &BTreeSet<usize>) -> Option<usize> {
        self.faces.iter().position(|f| &f.vertices == vertices)
    }

    /// Permutation of the vertices induced by `m -> g m`, if any.
    pub fn vertex_permutation(&self, g: &IntMatrix) -> Option<Vec<usize>> {
        let perm: Option<Vec<usize>> = self.vertices.iter().map(|v| self.vertex_index(&g.apply_q(v))).collect();
        perm.filter(|p| p.iter().collect::<BTreeSet<_>>().len() == p.len())
    }

    /// Same vertex-facet incidence up to relabeling.
    pub fn combinatorially_equivalent(&self, other: &LatticePolytope) -> bool {
        if self.f_vector() != other.f_vector() || self.vertices.len() != other.vertices.len() {
            return false;
        }
        let fa: Vec<&BTreeSet<usize>> = self.facets().map(|f| &f.vertices).collect();
        let fb: BTreeSet<&BTreeSet<usize>> = other.facets().map(|f| &f.vertices).collect();
        let n = self.vertices.len();
        let degree = |p: &LatticePolytope, v: usize| p.facets().filter(|f| f.vertices.contains(&v)).count();
        let da: Vec<usize> = (0..n).map(|v| degree(self, v)).collect();
        let db: Vec<usize> = (0..n).map(|v| degree(other, v)).collect();

        fn search(
            k: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            da: &[usize],
            db: &[usize],
            fa: &[&BTreeSet<usize>],
            fb: &BTreeSet<&BTreeSet<usize>>,
        ) -> bool {
            let n = da.len();
            if k == n {
                return fa.iter().all(|f| {
                    let img: BTreeSet<usize> = f.iter().map(|&v| map[v]).collect();
                    fb.contains(&img)
                });
            }
            for t in 0..n {
                if used[t] || da[k] != db[t] {
                    continue;
                }
                map.push(t);
                used[t] = true;
                // every facet already fully mapped must land on a facet subset
                let ok = fa.iter().all(|f| {
                    let img: BTreeSet<usize> = f.iter().filter(|&&v| v <= k).map(|&v| map[v]).collect();
                    img.is_empty() || fb.iter().any(|g| img.is_subset(g) && f.range(..=k).count() == img.len())
                });
                if ok && search(k + 1, map, used, da, db, fa, fb) {
                    return true;
                }
                used[t] = false;
                map.pop();
            }
            false
        }
        search(0, &mut Vec::new(), &mut vec![false; n], &da, &db, &fa, &fb)
    }
}

/// `[0,1]^n`
pub fn unit_cube(n: usize) -> InequalitySystem {
    let mut hs = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        hs.push(Halfspace::from_i64(&e, 0));
        e[i] = -1;
        hs.push(Halfspace::from_i64(&e, -1));
    }
    InequalitySystem { rank: n, halfspaces: hs }
}

/// `x_i >= 0`, `sum x_i <= 1`
pub fn standard_simplex(n: usize) -> InequalitySystem {
    let mut hs = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        hs.push(Halfspace::from_i64(&e, 0));
    }
    hs.push(Halfspace::from_i64(&vec![-1; n], -1));
    InequalitySystem { rank: n, halfspaces: hs }
}

/// Pyramid over the unit square with apex `(1/2, 1/2, 1)`.
pub fn square_pyramid() -> InequalitySystem {
    InequalitySystem {
        rank: 3,
        halfspaces: vec![
            Halfspace::from_i64(&[0, 0, 1], 0),
            Halfspace::from_i64(&[2, 0, -1], 0),
            Halfspace::from_i64(&[-2, 0, -1], -2),
            Halfspace::from_i64(&[0, 2, -1], 0),
            Halfspace::from_i64(&[0, -2, -1], -2),
        ],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLatticeAudit {
    pub f_vector: Vec<usize>,
    pub combinatorial_cube: bool,
    pub simplicial_fan: bool,
    pub euler_characteristic: i64,
}

pub fn face_lattice_audit(p: &LatticePolytope) -> FaceLatticeAudit {
    let cube = LatticePolytope::new(unit_cube(p.rank())).expect("cube is bounded");
    FaceLatticeAudit {
        f_vector: p.f_vector(),
        combinatorial_cube: p.combinatorially_equivalent(&cube),
        simplicial_fan: p.is_simple(),
        euler_characteristic: p.euler_characteristic(),
    }
}

/// All products of the generators. Ordered by first appearance in a
/// breadth-first search from the identity.
pub fn generate_group(gens: &[IntMatrix], limit: usize) -> Result<Vec<IntMatrix>, ToricError> {
    let n = gens.first().map_or(0, IntMatrix::rows);
    let mut elems = vec![IntMatrix::identity(n)];
    let mut k = 0;
    while k < elems.len() {
        for g in gens {
            let h = elems[k].checked_mul(g)?;
            if !elems.contains(&h) {
                if elems.len() == limit {
                    return Err(ToricError::GroupTooLarge(limit));
                }
                elems.push(h);
            }
        }
        k += 1;
    }
    Ok(elems)
}

/// The basis change and sublattice used to identify an `S3` action with
/// the permutation representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Reference {
    /// New basis vectors, in order.
    pub change_of_basis: Vec<Vec<i64>>,
    pub standard_tau: IntMatrix,
    pub standard_sigma: IntMatrix,
    /// Three vectors expected to be permuted by the action.
    pub sublattice: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChangeAudit {
    pub conjugated_tau: IntMatrix,
    pub conjugated_sigma: IntMatrix,
    pub matches_as_listed: bool,
    /// Orderings of the basis (as index lists) that give the standard
    /// matrices.
    pub matching_orders: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeAudit {
    pub index: BigInt,
    /// `g v_i = v_{perm[i]}`
    pub tau_permutation: Option<Vec<usize>>,
    pub sigma_permutation: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3ActionAudit {
    pub tau_squared_identity: bool,
    pub sigma_cubed_identity: bool,
    pub conjugation_relation: bool,
    pub tau_vertex_permutation: Option<Vec<usize>>,
    pub sigma_vertex_permutation: Option<Vec<usize>>,
    pub fixed_vertices: Vec<Point>,
    pub inequalities_invariant: bool,
    pub basis_change: Option<BasisChangeAudit>,
    pub sublattice: Option<SublatticeAudit>,
}

impl S3ActionAudit {
    pub fn relations_hold(&self) -> bool {
        self.tau_squared_identity && self.sigma_cubed_identity && self.conjugation_relation
    }

    pub fn permutes_vertices(&self) -> bool {
        self.tau_vertex_permutation.is_some() && self.sigma_vertex_permutation.is_some()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn conjugate(c: &IntMatrix, g: &IntMatrix) -> Result<IntMatrix, ToricError> {
    let inv = c.unimodular_inverse().ok_or(ToricError::NotUnimodular)?;
    Ok(inv.checked_mul(g)?.checked_mul(c)?)
}

fn vector_permutation(g: &IntMatrix, vs: &[Vec<BigInt>]) -> Option<Vec<usize>> {
    vs.iter().map(|v| vs.iter().position(|w| *w == g.apply(v))).collect()
}

pub fn s3_action_audit(
    tau: &IntMatrix,
    sigma: &IntMatrix,
    p: &LatticePolytope,
    reference: Option<&S3Reference>,
) -> Result<S3ActionAudit, ToricError> {
    let n = tau.rows();
    let id = IntMatrix::identity(n);
    let tau_inv = tau.unimodular_inverse().ok_or(ToricError::NotUnimodular)?;
    let sigma_inv = sigma.unimodular_inverse().ok_or(ToricError::NotUnimodular)?;
    let tau_vertex_permutation = p.vertex_permutation(tau);
    let sigma_vertex_permutation = p.vertex_permutation(sigma);
    let fixed_vertices = p
        .vertices
        .iter()
        .filter(|v| tau.apply_q(v) == **v && sigma.apply_q(v) == **v)
        .cloned()
        .collect();
    let inequalities_invariant = [tau, sigma]
        .iter()
        .map(|g| p.inequalities.transform(g))
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .all(|s| s.same_halfspaces(&p.inequalities));

    let mut basis_change = None;
    let mut sublattice = None;
    if let Some(r) = reference {
        let conj = |order: &[usize]| -> Result<(IntMatrix, IntMatrix), ToricError> {
            let cols: Vec<Vec<i64>> = order.iter().map(|&i| r.change_of_basis[i].clone()).collect();
            let c = IntMatrix::from_columns(&cols)?;
            Ok((conjugate(&c, tau)?, conjugate(&c, sigma)?))
        };
        let listed: Vec<usize> = (0..r.change_of_basis.len()).collect();
        let (ct, cs) = conj(&listed)?;
        let mut matching_orders = Vec::new();
        for order in permutations(listed.len()) {
            let (t, s) = conj(&order)?;
            if t == r.standard_tau && s == r.standard_sigma {
                matching_orders.push(order);
            }
        }
        basis_change = Some(BasisChangeAudit {
            matches_as_listed: ct == r.standard_tau && cs == r.standard_sigma,
            conjugated_tau: ct,
            conjugated_sigma: cs,
            matching_orders,
        });
        let vs: Vec<Vec<BigInt>> = r
            .sublattice
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        sublattice = Some(SublatticeAudit {
            index: sublattice_index(&IntMatrix::from_rows(&vs)?)?,
            tau_permutation: vector_permutation(tau, &vs),
            sigma_permutation: vector_permutation(sigma, &vs),
        });
    }

    Ok(S3ActionAudit {
        tau_squared_identity: tau.pow(2) == id,
        sigma_cubed_identity: sigma.pow(3) == id,
        conjugation_relation: tau.checked_mul(sigma)?.checked_mul(&tau_inv)? == sigma_inv,
        tau_vertex_permutation,
        sigma_vertex_permutation,
        fixed_vertices,
        inequalities_invariant,
        basis_change,
        sublattice,
    })
}

/// Integral conjugacy type of a finite group acting on a face lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LatticeAction {
    Trivial,
    /// `-1` on a rank one lattice.
    Negation,
    /// Involution conjugate to exchanging two basis vectors.
    Swap,
    /// Involution conjugate to `diag(1, -1)`.
    Reflection,
    /// Rank three, order six, trivial summand plus a faithful rank two
    /// summand on which transpositions exchange basis vectors.
    S3Standard,
    Other { order: usize, rank: usize },
}

impl fmt::Display for LatticeAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeAction::Trivial => f.write_str("trivial"),
            LatticeAction::Negation => f.write_str("negation"),
            LatticeAction::Swap => f.write_str("swap"),
            LatticeAction::Reflection => f.write_str("reflection"),
            LatticeAction::S3Standard => f.write_str("s3-standard"),
            LatticeAction::Other { order, rank } => write!(f, "order {order} on rank {rank}"),
        }
    }
}

fn stacked(ms: &[IntMatrix]) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = ms.iter().flat_map(IntMatrix::to_rows).collect();
    IntMatrix::from_rows(&rows).expect("rectangular")
}

fn shifted(a: &IntMatrix, s: i64) -> IntMatrix {
    let mut m = a.clone();
    for i in 0..m.rows() {
        let v = m.get(i, i) + s;
        m.set(i, i, v);
    }
    m
}

fn hconcat(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut cols: Vec<Vec<BigInt>> = (0..a.cols()).map(|j| a.column(j)).collect();
    cols.extend((0..b.cols()).map(|j| b.column(j)));
    IntMatrix::from_columns(&cols).expect("same height")
}

fn involution_type(a: &IntMatrix) -> Option<bool> {
    let plus = kernel_lattice(&shifted(a, -1));
    let minus = kernel_lattice(&shifted(a, 1));
    if plus.cols() + minus.cols() != a.rows() {
        return None;
    }
    let idx = hconcat(&plus, &minus).det().ok()?.abs();
    Some(idx == BigInt::from(2))
}

/// Classifies a finite group of integer matrices up to integral conjugacy,
/// as far as the cases above go.
pub fn classify_action(group: &[IntMatrix]) -> LatticeAction {
    let rank = group.first().map_or(0, IntMatrix::rows);
    let id = IntMatrix::identity(rank);
    let order = group.len();
    if group.iter().all(|g| *g == id) {
        return LatticeAction::Trivial;
    }
    let other = LatticeAction::Other { order, rank };
    match (order, rank) {
        (2, 1) => LatticeAction::Negation,
        (2, 2) => {
            let g = group.iter().find(|g| **g != id).expect("nontrivial");
            if g.pow(2) != id || g.det().ok() != Some(BigInt::from(-1)) {
                return other;
            }
            match involution_type(g) {
                Some(true) => LatticeAction::Swap,
                Some(false) => LatticeAction::Reflection,
                None => other,
            }
        }
        (6, 3) => {
            let shifted_all: Vec<IntMatrix> = group.iter().map(|g| shifted(g, -1)).collect();
            let fixed = kernel_lattice(&stacked(&shifted_all));
            let mut sum = IntMatrix::zeros(3, 3);
            for g in group {
                for i in 0..3 {
                    for j in 0..3 {
                        sum.set(i, j, sum.get(i, j) + g.get(i, j));
                    }
                }
            }
            let complement = kernel_lattice(&sum);
            if fixed.cols() != 1 || complement.cols() != 2 {
                return other;
            }
            if !hconcat(&fixed, &complement).det().map(|d| d.abs().is_one()).unwrap_or(false) {
                return other;
            }
            // restrict an involution to the complement
            let Some(t) = group.iter().find(|g| **g != id && g.pow(2) == id) else {
                return other;
            };
            let image = t.checked_mul(&complement).expect("conformable");
            let rows = complement.to_rational_rows();
            let cols: Option<Vec<Vec<Rational>>> = (0..2)
                .map(|j| {
                    let b: Vec<Rational> = image.column(j).into_iter().map(Rational::from_integer).collect();
                    solve_q(&rows, &b)
                })
                .collect();
            let Some(cols) = cols else { return other };
            let Some(restricted) = rational_columns_to_int(&cols) else { return other };
            if involution_type(&restricted) == Some(true) {
                LatticeAction::S3Standard
            } else {
                other
            }
        }
        _ => other,
    }
}

fn rational_columns_to_int(cols: &[Vec<Rational>]) -> Option<IntMatrix> {
    let ints: Option<Vec<Vec<BigInt>>> = cols
        .iter()
        .map(|c| c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect();
    IntMatrix::from_columns(&ints?).ok()
}

/// Matrix of `g` on the lattice with column basis `k`, if `g` preserves it.
fn restrict(g: &IntMatrix, k: &IntMatrix) -> Option<IntMatrix> {
    express_in(&g.checked_mul(k).ok()?, k)
}

/// Integer `u` with `image = k u`.
fn express_in(image: &IntMatrix, k: &IntMatrix) -> Option<IntMatrix> {
    let rows = k.to_rational_rows();
    let cols: Option<Vec<Vec<Rational>>> = (0..k.cols())
        .map(|j| {
            let b: Vec<Rational> = image.column(j).into_iter().map(Rational::from_integer).collect();
            solve_q(&rows, &b)
        })
        .collect();
    rational_columns_to_int(&cols?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceOrbit {
    pub dim: usize,
    /// Face indices in the orbit, the first is the representative.
    pub faces: Vec<usize>,
    pub stabilizer_order: usize,
    /// Action of the stabilizer on the character lattice of the torus orbit
    /// attached to the representative.
    pub action: LatticeAction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceOrbits {
    pub group_order: usize,
    pub orbits: Vec<FaceOrbit>,
    /// Orbit counts per dimension agree with the average number of fixed
    /// faces over the group.
    pub burnside_consistent: bool,
}

impl FaceOrbits {
    /// Orbit counts for dimensions `0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.orbits.iter().map(|o| o.dim).max().unwrap_or(0);
        (0..=top).map(|d| self.orbits.iter().filter(|o| o.dim == d).count()).collect()
    }
}

/// Character lattice of the torus orbit of a face: integer vectors
/// orthogonal to all tight normals.
pub fn face_lattice_basis(p: &LatticePolytope, face: &Face) -> IntMatrix {
    if face.tight.is_empty() {
        return IntMatrix::identity(p.rank());
    }
    let rows: Vec<Vec<BigInt>> = face.tight.iter().map(|&i| p.inequalities.halfspaces[i].normal.clone()).collect();
    kernel_lattice(&IntMatrix::from_rows(&rows).expect("rectangular"))
}

pub fn face_orbits(gens: &[IntMatrix], p: &LatticePolytope) -> Result<FaceOrbits, ToricError> {
    let group = generate_group(gens, 1024)?;
    let perms: Vec<Vec<usize>> = group
        .iter()
        .map(|g| p.vertex_permutation(g).ok_or(ToricError::NotAnAutomorphism))
        .collect::<Result<_, _>>()?;
    let act = |k: usize, f: usize| -> Result<usize, ToricError> {
        let img: BTreeSet<usize> = p.faces[f].vertices.iter().map(|&v| perms[k][v]).collect();
        p.face_index(&img).ok_or(ToricError::NotAnAutomorphism)
    };
    let mut seen = vec![false; p.faces.len()];
    let mut orbits = Vec::new();
    for f in 0..p.faces.len() {
        if seen[f] {
            continue;
        }
        let mut members = vec![f];
        let mut stab = Vec::new();
        for k in 0..group.len() {
            let h = act(k, f)?;
            if h == f {
                stab.push(k);
            }
            if !members.contains(&h) {
                members.push(h);
            }
        }
        for &m in &members {
            seen[m] = true;
        }
        let basis = face_lattice_basis(p, &p.faces[f]);
        let restricted: Vec<IntMatrix> = stab
            .iter()
            .map(|&k| restrict(&group[k], &basis).ok_or(ToricError::NotAnAutomorphism))
            .collect::<Result<_, _>>()?;
        orbits.push(FaceOrbit {
            dim: p.faces[f].dim,
            faces: members,
            stabilizer_order: stab.len(),
            action: classify_action(&restricted),
        });
    }
    orbits.sort_by_key(|o| (o.dim, o.faces[0]));

    let mut fixed: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..group.len() {
        for f in 0..p.faces.len() {
            if act(k, f)? == f {
                *fixed.entry(p.faces[f].dim).or_default() += 1;
            }
        }
    }
    let burnside_consistent = fixed.iter().all(|(&d, &n)| {
        n % group.len() == 0 && n / group.len() == orbits.iter().filter(|o| o.dim == d).count()
    });
    Ok(FaceOrbits { group_order: group.len(), orbits, burnside_consistent })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisIndependence {
    pub hermite_basis: IntMatrix,
    pub same_lattice: bool,
    /// Vertices computed in the Hermite basis agree with the transported
    /// vertices of the original.
    pub vertices_correspond: bool,
    pub same_f_vector: bool,
}

/// Re-runs the pipeline in the normalized kernel basis of `gamma`.
pub fn basis_independence(
    gamma: &IntMatrix,
    basis: &IntMatrix,
    a: &[i64],
) -> Result<BasisIndependence, ToricError> {
    let k = kernel_lattice(gamma);
    let same_lattice = lattice_eq(&k, basis);
    let p = LatticePolytope::new(polytope_from_character(gamma, basis, a)?)?;
    let q = LatticePolytope::new(polytope_from_character(gamma, &k, a)?)?;
    // basis = k u
    let u = express_in(basis, &k);
    let vertices_correspond = match &u {
        Some(u) => {
            let moved: BTreeSet<Point> = p.vertices.iter().map(|v| u.apply_q(v)).collect();
            moved == q.vertices.iter().cloned().collect()
        }
        None => false,
    };
    Ok(BasisIndependence {
        hermite_basis: k,
        same_lattice,
        vertices_correspond,
        same_f_vector: p.f_vector() == q.f_vector(),
    })
}

/// Data for the torus quotient of the exceptional divisor: the character
/// matrix of the slice torus, a basis of its kernel, the linearization, the
/// `S3` generators in that basis and the eight vertices of the polytope.
pub mod cubic {
    use super::*;

    pub const CHARACTER: [i64; 6] = [-2, -2, -2, 3, 3, 3];

    pub fn gamma() -> IntMatrix {
        IntMatrix::from_i64(&[&[1, 1, 1, 1, 1, 1], &[-3, 3, 0, -2, 2, 0], &[-3, 0, 3, -2, 0, 2]])
    }

    pub fn kernel_basis() -> IntMatrix {
        IntMatrix::from_i64(&[
            &[0, 0, 1],
            &[-2, 0, 1],
            &[-16, -6, 1],
            &[-3, -1, -1],
            &[0, -1, -1],
            &[21, 8, -1],
        ])
    }

    pub fn polytope() -> Result<LatticePolytope, ToricError> {
        LatticePolytope::new(polytope_from_character(&gamma(), &kernel_basis(), &CHARACTER)?)
    }

    pub fn tau() -> IntMatrix {
        IntMatrix::from_i64(&[&[-1, 0, 0], &[5, 1, 0], &[-2, 0, 1]])
    }

    pub fn sigma() -> IntMatrix {
        IntMatrix::from_i64(&[&[-8, -3, 0], &[19, 7, 0], &[-16, -6, 1]])
    }

    pub fn reference() -> S3Reference {
        S3Reference {
            change_of_basis: vec![vec![0, 0, 1], vec![-1, 3, 0], vec![1, -2, 2]],
            standard_tau: IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
            standard_sigma: IntMatrix::from_i64(&[&[0, 1, 0], &[-1, -1, 0], &[0, 0, 1]]),
            sublattice: vec![vec![0, 1, -1], vec![3, -8, -1], vec![-3, 7, -7]],
        }
    }

    /// The vertices as columns `(numerator, denominator)` per coordinate.
    pub fn listed_vertices() -> Vec<Point> {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let cols: [[(i64, i64); 3]; 8] = [
            [(-3, 8), (1, 1), (2, 1)],
            [(0, 1), (1, 7), (20, 7)],
            [(3, 8), (-7, 8), (11, 4)],
            [(0, 1), (0, 1), (2, 1)],
            [(3, 7), (-8, 7), (20, 7)],
            [(0, 1), (-1, 8), (2, 1)],
            [(0, 1), (0, 1), (3, 1)],
            [(-3, 7), (1, 1), (2, 1)],
        ];
        cols.iter().map(|c| c.iter().map(|&(n, d)| r(n, d)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    use super::cubic::{gamma, kernel_basis as basis, reference, sigma, tau, CHARACTER as A};

    fn pa() -> LatticePolytope {
        cubic::polytope().unwrap()
    }

    #[test]
    fn inequalities_from_character() {
        let sys = polytope_from_character(&gamma(), &basis(), &A).unwrap();
        assert_eq!(
            sys.to_string(),
            "c >= 2; -2a+c >= 2; -16a-6b+c >= 2; -3a-b-c >= -3; -b-c >= -3; 21a+8b-c >= -3"
        );
        let bad = IntMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(polytope_from_character(&gamma(), &bad, &A), Err(ToricError::NotInKernel(0)));
        let cone = polytope_from_character(&gamma(), &basis(), &[0; 6]).unwrap();
        assert!(cone.halfspaces.iter().all(|h| h.bound.is_zero()));
    }

    #[test]
    fn vertices_of_pa() {
        let p = pa();
        assert_eq!(p.vertices.len(), 8);
        assert!(p.vertex_index(&[rat(-3, 8), int(1), int(2)]).is_some());
        assert!(p.vertex_index(&[int(0), int(0), int(3)]).is_some());
        assert!(p.vertex_index(&[rat(3, 7), rat(-8, 7), rat(20, 7)]).is_some());
        let mut listed = cubic::listed_vertices();
        listed.sort();
        assert_eq!(p.vertices, listed);
    }

    #[test]
    fn scaling_scales_vertices() {
        let sys = polytope_from_character(&gamma(), &basis(), &A).unwrap();
        let a2: Vec<i64> = A.iter().map(|x| 2 * x).collect();
        let sys2 = polytope_from_character(&gamma(), &basis(), &a2).unwrap();
        assert_eq!(sys.scale(&int(2)), sys2);
        let v: Vec<Point> = enumerate_vertices(&sys).unwrap().into_iter().map(|p| p.iter().map(|x| x * int(2)).collect()).collect();
        let mut v = v;
        v.sort();
        assert_eq!(v, enumerate_vertices(&sys2).unwrap());
    }

    #[test]
    fn controls() {
        let cube = LatticePolytope::new(unit_cube(3)).unwrap();
        assert_eq!(cube.vertices.len(), 8);
        let s = LatticePolytope::new(standard_simplex(3)).unwrap();
        assert_eq!(s.vertices.len(), 4);
        assert_eq!(s.f_vector(), vec![4, 6, 4]);
        assert!(s.is_simple());
        let pyr = LatticePolytope::new(square_pyramid()).unwrap();
        assert_eq!(pyr.f_vector(), vec![5, 8, 5]);
        assert!(!pyr.is_simple());
        assert!(!face_lattice_audit(&pyr).combinatorial_cube);
        let half = InequalitySystem::new(2, vec![Halfspace::from_i64(&[1, 0], 0), Halfspace::from_i64(&[0, 1], 0)]).unwrap();
        assert_eq!(enumerate_vertices(&half), Err(ToricError::Unbounded));
    }

    #[test]
    fn pa_is_a_simple_cube() {
        let a = face_lattice_audit(&pa());
        assert_eq!(a.f_vector, vec![8, 12, 6]);
        assert!(a.combinatorial_cube);
        assert!(a.simplicial_fan);
        assert_eq!(a.euler_characteristic, 2);
        let c = face_lattice_audit(&LatticePolytope::new(unit_cube(3)).unwrap());
        assert!(c.combinatorial_cube && c.simplicial_fan);
    }

    #[test]
    fn s3_audit() {
        let a = s3_action_audit(&tau(), &sigma(), &pa(), Some(&reference())).unwrap();
        assert!(a.relations_hold());
        assert!(a.permutes_vertices());
        assert!(a.inequalities_invariant);
        assert_eq!(a.fixed_vertices, vec![vec![int(0), int(0), int(2)], vec![int(0), int(0), int(3)]]);
        let b = a.basis_change.unwrap();
        assert!(!b.matches_as_listed);
        assert_eq!(b.matching_orders, vec![vec![1, 2, 0]]);
        let s = a.sublattice.unwrap();
        assert_eq!(s.index, BigInt::from(27));
        assert_eq!(s.tau_permutation, Some(vec![0, 2, 1]));
        assert_eq!(s.sigma_permutation.as_ref().map(|p| p.iter().collect::<BTreeSet<_>>().len()), Some(3));
    }

    #[test]
    fn identity_action() {
        let id = IntMatrix::identity(3);
        let a = s3_action_audit(&id, &id, &pa(), None).unwrap();
        assert!(a.relations_hold());
        assert_eq!(a.fixed_vertices.len(), 8);
    }

    #[test]
    fn orbits_on_pa() {
        let o = face_orbits(&[tau(), sigma()], &pa()).unwrap();
        assert_eq!(o.group_order, 6);
        assert_eq!(o.counts(), vec![4, 3, 2, 1]);
        assert!(o.burnside_consistent);
        let top = o.orbits.iter().find(|x| x.dim == 3).unwrap();
        assert_eq!(top.action, LatticeAction::S3Standard);
        for x in o.orbits.iter().filter(|x| x.dim == 2) {
            assert_eq!(x.stabilizer_order, 2);
            assert_eq!(x.action, LatticeAction::Swap);
        }
        let triv = face_orbits(&[IntMatrix::identity(3)], &pa()).unwrap();
        assert_eq!(triv.counts(), vec![8, 12, 6, 1]);
    }

    #[test]
    fn octahedral_control() {
        let rot = IntMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let cyc = IntMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let sym = unit_cube(3);
        // centre the cube at the origin so the rotations preserve it
        let centred = InequalitySystem::new(
            3,
            sym.halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.iter().map(|x| x * 2).collect(), int(-1)))
                .collect(),
        )
        .unwrap();
        let p = LatticePolytope::new(centred).unwrap();
        let o = face_orbits(&[rot, cyc], &p).unwrap();
        assert_eq!(o.group_order, 24);
        assert_eq!(o.counts()[0], 1);
    }

    #[test]
    fn hermite_basis_gives_same_polytope() {
        let b = basis_independence(&gamma(), &basis(), &A).unwrap();
        assert!(b.same_lattice);
        assert!(b.vertices_correspond);
        assert!(b.same_f_vector);
    }

    #[test]
    fn classify_involutions() {
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let refl = IntMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(classify_action(&[IntMatrix::identity(2), swap]), LatticeAction::Swap);
        assert_eq!(classify_action(&[IntMatrix::identity(2), refl]), LatticeAction::Reflection);
    }
}
