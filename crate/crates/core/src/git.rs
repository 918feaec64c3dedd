//! Stability for diagonal torus actions.
//!
//! A point with support `S` is semistable iff the origin lies in the convex
//! hull of the weights of `S`. Both outcomes carry a certificate: a convex
//! combination of weights summing to zero, or an integral functional that is
//! strictly positive on every weight of the support.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{prime_factors, quotient_by_rows, solve_q, FiniteAbelianGroup, IntMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GitError {
    #[error("weight {index} has length {len}, expected {rank}")]
    WeightLength { index: usize, len: usize, rank: usize },
    #[error("{names} names for {weights} weights")]
    NameCount { names: usize, weights: usize },
    #[error("too many coordinates ({0}); at most 63 supported")]
    TooManyCoordinates(usize),
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("separating functionals are only searched for tori of rank 1 or 2, not {0}")]
    UnsupportedRank(usize),
    #[error("semistable point with positive-dimensional stabilizer in chart {chart}: {support}")]
    PositiveDimensional { chart: String, support: String },
}

/// Integral weights of a diagonal action of a rank-`r` torus on named
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    names: Vec<String>,
    weights: Vec<Vec<i64>>,
    rank: usize,
}

/// A set of coordinates, as a bitmask over the coordinate indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Support(pub u64);

impl Support {
    pub fn full(n: usize) -> Self {
        Support((1u64 << n) - 1)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        Support(self.0 | 1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Support) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// Image under the coordinate permutation `i -> perm[i]`.
    pub fn permute(self, perm: &[usize]) -> Support {
        Support(self.indices().fold(0, |acc, i| acc | 1 << perm[i]))
    }
}

impl WeightSystem {
    pub fn new<S: AsRef<str>>(names: &[S], weights: Vec<Vec<i64>>) -> Result<Self, GitError> {
        if names.len() != weights.len() {
            return Err(GitError::NameCount {
                names: names.len(),
                weights: weights.len(),
            });
        }
        if weights.len() > 63 {
            return Err(GitError::TooManyCoordinates(weights.len()));
        }
        let rank = weights.first().map_or(0, Vec::len);
        for (index, w) in weights.iter().enumerate() {
            if w.len() != rank {
                return Err(GitError::WeightLength {
                    index,
                    len: w.len(),
                    rank,
                });
            }
        }
        Ok(WeightSystem {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            weights,
            rank,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, GitError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GitError::UnknownCoordinate(name.to_string()))
    }

    pub fn weight(&self, name: &str) -> Result<&[i64], GitError> {
        Ok(&self.weights[self.index_of(name)?])
    }

    /// Support consisting of the named coordinates.
    pub fn support(&self, names: &[&str]) -> Result<Support, GitError> {
        names
            .iter()
            .try_fold(Support(0), |s, n| Ok(s.insert(self.index_of(n)?)))
    }

    pub fn full_support(&self) -> Support {
        Support::full(self.len())
    }

    /// Names of the coordinates outside `s`.
    pub fn vanishing(&self, s: Support) -> Vec<&str> {
        (0..self.len())
            .filter(|&i| !s.contains(i))
            .map(|i| self.names[i].as_str())
            .collect()
    }

    /// Zero pattern, `*` for a coordinate in the support and `0` otherwise.
    pub fn pattern(&self, s: Support) -> String {
        (0..self.len())
            .map(|i| if s.contains(i) { '*' } else { '0' })
            .collect()
    }

    /// Parses a pattern produced by [`WeightSystem::pattern`].
    pub fn parse_pattern(&self, pattern: &str) -> Option<Support> {
        let chars: Vec<char> = pattern.chars().filter(|c| !c.is_whitespace() && *c != '|').collect();
        if chars.len() != self.len() {
            return None;
        }
        chars.iter().enumerate().try_fold(Support(0), |s, (i, c)| match c {
            '*' => Some(s.insert(i)),
            '0' => Some(s),
            _ => None,
        })
    }

    /// Weights after the change of torus coordinates `w -> m w`.
    pub fn reparametrize(&self, m: &IntMatrix) -> WeightSystem {
        let weights = self
            .weights
            .iter()
            .map(|w| {
                let v: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
                m.apply(&v)
                    .into_iter()
                    .map(|x| i64::try_from(x).expect("small weight"))
                    .collect()
            })
            .collect();
        WeightSystem {
            names: self.names.clone(),
            weights,
            rank: m.rows(),
        }
    }

    /// Weights on the affine chart where coordinate `chart` is nonzero, after
    /// blowing up the origin of the affine cone: the chart coordinate itself
    /// becomes the exceptional coordinate `exceptional` and keeps its weight,
    /// each other coordinate `c` becomes `rename(c)` with weight
    /// `w_c - w_chart`.
    pub fn blowup_chart(
        &self,
        chart: &str,
        exceptional: &str,
        rename: impl Fn(&str) -> String,
    ) -> Result<WeightSystem, GitError> {
        let c = self.index_of(chart)?;
        let mut names = vec![exceptional.to_string()];
        let mut weights = vec![self.weights[c].clone()];
        for (i, (n, w)) in self.names.iter().zip(&self.weights).enumerate() {
            if i != c {
                names.push(rename(n));
                weights.push(w.iter().zip(&self.weights[c]).map(|(a, b)| a - b).collect());
            }
        }
        WeightSystem::new(&names, weights)
    }
}

/// Weights of the maximal torus on the six monomials spanning the slice
/// through the cubic `x0 x1 x2 + x3^3`, in the torus coordinates
/// `(l1, l2)` with `l0 = 1 / (l1 l2)`. Coordinates `T0, T1, T2` carry the
/// cubes, `Th0, Th1, Th2` the squares.
pub fn cubic_slice_weights() -> WeightSystem {
    WeightSystem::new(
        &["T0", "T1", "T2", "Th0", "Th1", "Th2"],
        vec![
            vec![-3, -3],
            vec![3, 0],
            vec![0, 3],
            vec![-2, -2],
            vec![2, 0],
            vec![0, 2],
        ],
    )
    .expect("well formed")
}

/// Change of torus coordinates from `(l1, l2)` to `(l0, l1)`: the character
/// `l1^a l2^b` equals `l0^-b l1^(a-b)`.
pub fn l12_to_l01() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, -1], &[1, -1]])
}

/// Name of a chart coordinate: `T1 -> t1`, `Th2 -> th2`.
pub fn chart_coordinate_name(homogeneous: &str) -> String {
    homogeneous.to_lowercase()
}

/// Name of the exceptional coordinate on the chart of `T0` (`a0`) or
/// `Th0` (`ah0`).
pub fn exceptional_name(homogeneous: &str) -> String {
    let lower = homogeneous.to_lowercase();
    match lower.strip_prefix("th") {
        Some(rest) => format!("ah{rest}"),
        None => format!("a{}", &lower[1..]),
    }
}

/// Weights on the blowup chart of `chart` in the `(l0, l1)` coordinates.
pub fn cubic_blowup_chart(chart: &str) -> Result<WeightSystem, GitError> {
    cubic_slice_weights()
        .reparametrize(&l12_to_l01())
        .blowup_chart(chart, &exceptional_name(chart), chart_coordinate_name)
}

/// Certificate of the stability verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    /// Positive coefficients (coordinate index, weight) of a convex
    /// combination of support weights equal to zero.
    Semistable { combination: Vec<(usize, Rational)> },
    /// Functional strictly positive on every support weight.
    Unstable { functional: Vec<i64> },
}

impl Stability {
    pub fn is_semistable(&self) -> bool {
        matches!(self, Stability::Semistable { .. })
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = subsets(&items[1..], k - 1);
    for s in out.iter_mut() {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], k));
    out
}

fn convex_combination(w: &WeightSystem, idx: &[usize]) -> Option<Vec<(usize, Rational)>> {
    // Carathéodory: if zero is in the hull it is a convex combination of an
    // affinely independent subset, which solves the square-or-taller system
    // uniquely.
    for k in 1..=(w.rank + 1).min(idx.len()) {
        for sub in subsets(idx, k) {
            let mut rows: Vec<Vec<Rational>> = (0..w.rank)
                .map(|r| sub.iter().map(|&i| Rational::from_integer(w.weights[i][r].into())).collect())
                .collect();
            rows.push(vec![Rational::from_integer(1.into()); k]);
            let mut rhs = vec![Rational::zero(); w.rank];
            rhs.push(Rational::from_integer(1.into()));
            if let Some(x) = solve_q(&rows, &rhs) {
                if x.iter().all(Signed::is_positive) {
                    return Some(sub.into_iter().zip(x).collect());
                }
            }
        }
    }
    None
}

fn perp(v: &[i64]) -> [i64; 2] {
    [-v[1], v[0]]
}

fn separating_functional(w: &WeightSystem, idx: &[usize]) -> Result<Option<Vec<i64>>, GitError> {
    let pts: Vec<&[i64]> = idx.iter().map(|&i| w.weights[i].as_slice()).collect();
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    match w.rank {
        1 => candidates.extend([vec![1], vec![-1]]),
        2 => {
            // The open cone of separating functionals is bounded by rays
            // orthogonal to support weights; a positive sum of two such rays,
            // or a weight itself when all weights are collinear, lies inside.
            candidates.extend(pts.iter().map(|p| p.to_vec()));
            for (a, p) in pts.iter().enumerate() {
                for q in &pts[a..] {
                    let (pp, qp) = (perp(p), perp(q));
                    for s in [1, -1] {
                        for t in [1, -1] {
                            candidates.push(vec![s * pp[0] + t * qp[0], s * pp[1] + t * qp[1]]);
                        }
                    }
                }
            }
            candidates.extend([vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]);
        }
        r => return Err(GitError::UnsupportedRank(r)),
    }
    Ok(candidates.into_iter().find(|l| pts.iter().all(|p| dot(l, p) > 0)))
}

/// Decides semistability of a point with the given support.
///
/// ```
/// use kirwan_core::git::{cubic_slice_weights, is_semistable};
/// let w = cubic_slice_weights();
/// let hats = w.support(&["Th0", "Th1", "Th2"]).unwrap();
/// assert!(is_semistable(&w, hats).unwrap().is_semistable());
/// ```
pub fn is_semistable(w: &WeightSystem, s: Support) -> Result<Stability, GitError> {
    let idx: Vec<usize> = s.indices().filter(|&i| i < w.len()).collect();
    if let Some(combination) = convex_combination(w, &idx) {
        return Ok(Stability::Semistable { combination });
    }
    match separating_functional(w, &idx)? {
        Some(functional) => Ok(Stability::Unstable { functional }),
        None => unreachable!("origin outside the hull but no separating functional found"),
    }
}

/// Independently re-checks a certificate.
pub fn verify_certificate(w: &WeightSystem, s: Support, cert: &Stability) -> bool {
    match cert {
        Stability::Semistable { combination } => {
            let mut sum = vec![Rational::zero(); w.rank];
            let mut total = Rational::zero();
            for (i, c) in combination {
                if !s.contains(*i) || !c.is_positive() {
                    return false;
                }
                total += c;
                for (r, x) in sum.iter_mut().enumerate() {
                    *x += c * Rational::from_integer(w.weights[*i][r].into());
                }
            }
            total == Rational::from_integer(1.into()) && sum.iter().all(Zero::is_zero)
        }
        Stability::Unstable { functional } => {
            functional.len() == w.rank && s.indices().all(|i| dot(functional, &w.weights[i]) > 0)
        }
    }
}

/// The maximal nonempty supports whose points are unstable, i.e. the
/// minimal coordinate vanishing patterns that force instability. Every
/// strictly larger support is semistable.
pub fn minimal_unstable_supports(w: &WeightSystem) -> Result<Vec<Support>, GitError> {
    let n = w.len();
    let mut unstable = vec![false; 1 << n];
    for m in 1..(1u64 << n) {
        unstable[m as usize] = !is_semistable(w, Support(m))?.is_semistable();
    }
    Ok((1..(1u64 << n))
        .filter(|&m| unstable[m as usize])
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 1 || !unstable[(m | 1 << i) as usize]))
        .map(Support)
        .collect())
}

/// Stabilizer in the torus of a point with the given support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stabilizer {
    Finite(FiniteAbelianGroup),
    PositiveDimensional { dimension: usize, components: FiniteAbelianGroup },
}

impl Stabilizer {
    pub fn finite(&self) -> Option<&FiniteAbelianGroup> {
        match self {
            Stabilizer::Finite(g) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilizer::Finite(g) => write!(f, "{g}"),
            Stabilizer::PositiveDimensional { dimension, .. } => {
                write!(f, "positive-dimensional (dimension {dimension})")
            }
        }
    }
}

/// The subgroup of the torus acting trivially on the coordinates in `s`:
/// dual to `Z^r / span(weights of s)`, computed from the Smith form.
///
/// ```
/// use kirwan_core::git::{continuous_stabilizer, WeightSystem};
/// let w = WeightSystem::new(&["t1", "t2"], vec![vec![-3, 3], vec![-6, -3]]).unwrap();
/// assert_eq!(continuous_stabilizer(&w, w.full_support()).to_string(), "Z3 x Z9");
/// ```
pub fn continuous_stabilizer(w: &WeightSystem, s: Support) -> Stabilizer {
    let rows: Vec<Vec<i64>> = s.indices().filter(|&i| i < w.len()).map(|i| w.weights[i].clone()).collect();
    let q = if rows.is_empty() {
        crate::exact::LatticeQuotient {
            free_rank: w.rank,
            torsion: FiniteAbelianGroup::trivial(),
        }
    } else {
        quotient_by_rows(&IntMatrix::from_rows(&rows).expect("rectangular"))
    };
    if q.free_rank == 0 {
        Stabilizer::Finite(q.torsion)
    } else {
        Stabilizer::PositiveDimensional {
            dimension: q.free_rank,
            components: q.torsion,
        }
    }
}

/// A point of the exceptional divisor, described by its chart and the
/// support of the remaining chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalPoint {
    pub chart: String,
    pub chart_weights: WeightSystem,
    pub support: Support,
    pub stabilizer: Stabilizer,
}

/// Torus stabilizers of all semistable points on the exceptional divisor of
/// the blowup of the origin, enumerating every support pattern on every
/// chart. The exceptional coordinate itself vanishes on the divisor.
pub fn exceptional_stabilizers(homogeneous: &WeightSystem, charts: &[WeightSystem]) -> Result<Vec<ExceptionalPoint>, GitError> {
    let n = homogeneous.len();
    let mut out = Vec::new();
    for (c, chart_weights) in charts.iter().enumerate() {
        let chart = homogeneous.names[c].clone();
        let others: Vec<usize> = (0..n).filter(|&i| i != c).collect();
        for m in 0..(1u64 << (n - 1)) {
            let mut homog = Support(1 << c);
            let mut local = Support(0);
            for (k, &i) in others.iter().enumerate() {
                if m >> k & 1 == 1 {
                    homog = homog.insert(i);
                    local = local.insert(k + 1);
                }
            }
            if !is_semistable(homogeneous, homog)?.is_semistable() {
                continue;
            }
            let stabilizer = continuous_stabilizer(chart_weights, local);
            if let Stabilizer::PositiveDimensional { .. } = stabilizer {
                return Err(GitError::PositiveDimensional {
                    chart,
                    support: chart_weights.pattern(local),
                });
            }
            out.push(ExceptionalPoint {
                chart: chart.clone(),
                chart_weights: chart_weights.clone(),
                support: local,
                stabilizer,
            });
        }
    }
    Ok(out)
}

/// The blowup chart weight systems of every coordinate of the cubic slice,
/// in the order of [`cubic_slice_weights`].
pub fn cubic_blowup_charts() -> Vec<WeightSystem> {
    cubic_slice_weights()
        .names()
        .iter()
        .map(|c| cubic_blowup_chart(c).expect("own coordinate"))
        .collect()
}

/// Primes dividing the order of some stabilizer: those of the finite part
/// of the group and those of the torus stabilizers at the given points.
pub fn stabilizer_prime_support(finite_part_order: &BigInt, points: &[ExceptionalPoint]) -> BTreeSet<BigInt> {
    let mut primes: BTreeSet<BigInt> = prime_factors(finite_part_order).into_iter().collect();
    for p in points {
        if let Some(g) = p.stabilizer.finite() {
            primes.extend(prime_factors(&g.order()));
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn unstable_patterns_of_the_slice() {
        let w = cubic_slice_weights();
        let found = minimal_unstable_supports(&w).unwrap();
        let expected: Vec<Support> = [["T0", "Th0"], ["T1", "Th1"], ["T2", "Th2"]]
            .iter()
            .map(|v| Support(w.full_support().0 & !w.support(v).unwrap().0))
            .collect();
        let mut e = expected.clone();
        e.sort();
        assert_eq!(found, e);
    }

    #[test]
    fn small_systems() {
        let w = WeightSystem::new(&["x"], vec![vec![0]]).unwrap();
        assert!(minimal_unstable_supports(&w).unwrap().is_empty());
        let w = WeightSystem::new(&["x", "y"], vec![vec![1], vec![-1]]).unwrap();
        let u = minimal_unstable_supports(&w).unwrap();
        assert_eq!(u, vec![Support(0b01), Support(0b10)]);
    }

    #[test]
    fn certificates() {
        let w = cubic_slice_weights();
        let hats = w.support(&["Th0", "Th1", "Th2"]).unwrap();
        match is_semistable(&w, hats).unwrap() {
            Stability::Semistable { combination } => {
                let third = Rational::new(b(1), b(3));
                assert!(combination.iter().all(|(_, c)| *c == third));
                assert_eq!(combination.len(), 3);
            }
            other => panic!("{other:?}"),
        }
        for m in 0..64 {
            let s = Support(m);
            let c = is_semistable(&w, s).unwrap();
            assert!(verify_certificate(&w, s, &c), "{}", w.pattern(s));
        }
        let bad = Stability::Unstable { functional: vec![1, 1] };
        assert!(!verify_certificate(&w, w.full_support(), &bad));
    }

    #[test]
    fn stabilizers() {
        let cases: &[(&[&[i64]], &str)] = &[
            (&[&[-3, 3], &[-6, -3]], "Z3 x Z9"),
            (&[&[-3, 3], &[-5, -2]], "Z21"),
            (&[&[-6, -3], &[-3, 2]], "Z21"),
            (&[&[-3, 2], &[-5, -2]], "Z16"),
            (&[&[-2, 2], &[-4, -2]], "Z2 x Z6"),
            (&[&[-1, 0], &[-3, 2], &[-5, -2]], "Z2"),
            (&[&[-1, 0], &[-3, 3], &[-6, -3]], "Z3"),
        ];
        for (rows, expected) in cases {
            let names: Vec<String> = (0..rows.len()).map(|i| format!("c{i}")).collect();
            let w = WeightSystem::new(&names, rows.iter().map(|r| r.to_vec()).collect()).unwrap();
            let st = continuous_stabilizer(&w, w.full_support());
            assert_eq!(st.to_string(), *expected);
            if rows.len() == 2 {
                let det = IntMatrix::from_i64(rows).det().unwrap();
                assert_eq!(st.finite().unwrap().order(), det.abs());
            }
        }
        let w = WeightSystem::new(&["a", "b"], vec![vec![1, 0], vec![2, 0]]).unwrap();
        assert!(matches!(
            continuous_stabilizer(&w, w.full_support()),
            Stabilizer::PositiveDimensional { dimension: 1, .. }
        ));
    }

    #[test]
    fn chart_weights_match_the_slice_action() {
        let u0 = cubic_blowup_chart("T0").unwrap();
        let expect = [
            ("a0", [3, 0]),
            ("t1", [-3, 3]),
            ("t2", [-6, -3]),
            ("th0", [-1, 0]),
            ("th1", [-3, 2]),
            ("th2", [-5, -2]),
        ];
        for (n, wt) in expect {
            assert_eq!(u0.weight(n).unwrap(), wt, "{n}");
        }
        let uh0 = cubic_blowup_chart("Th0").unwrap();
        let expect = [
            ("t0", [1, 0]),
            ("t1", [-2, 3]),
            ("t2", [-5, -3]),
            ("ah0", [2, 0]),
            ("th1", [-2, 2]),
            ("th2", [-4, -2]),
        ];
        for (n, wt) in expect {
            assert_eq!(uh0.weight(n).unwrap(), wt, "{n}");
        }
    }

    #[test]
    fn exceptional_prime_support() {
        let w = cubic_slice_weights();
        let pts = exceptional_stabilizers(&w, &cubic_blowup_charts()).unwrap();
        let primes = stabilizer_prime_support(&b(24), &pts);
        assert_eq!(primes, [b(2), b(3), b(7)].into_iter().collect());
        assert!(stabilizer_prime_support(&b(1), &[]).is_empty());
        assert!(stabilizer_prime_support(&b(10), &[]).contains(&b(5)));
    }

    #[test]
    fn s3_invariance_exhaustive() {
        let w = cubic_slice_weights();
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        for p in perms {
            let full: Vec<usize> = p.iter().copied().chain(p.iter().map(|i| i + 3)).collect();
            for m in 0..64 {
                let s = Support(m);
                assert_eq!(
                    is_semistable(&w, s).unwrap().is_semistable(),
                    is_semistable(&w, s.permute(&full)).unwrap().is_semistable()
                );
            }
        }
    }

    #[test]
    fn semistability_is_monotone() {
        let w = cubic_slice_weights();
        for a in 0..64u64 {
            for extra in 0..6 {
                let s = Support(a);
                if is_semistable(&w, s).unwrap().is_semistable() {
                    assert!(is_semistable(&w, s.insert(extra)).unwrap().is_semistable());
                }
            }
        }
    }

    #[test]
    fn patterns_round_trip() {
        let w = cubic_slice_weights();
        let s = w.parse_pattern("00*|**0").unwrap();
        assert_eq!(w.pattern(s), "00***0");
        assert!(w.parse_pattern("00*").is_none());
    }
}
