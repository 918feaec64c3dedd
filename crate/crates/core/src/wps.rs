//! Weighted projective spaces `P(q0, ..., qn)`: affine charts as cyclic
//! quotients, the Reid-Tai age criterion, the singular locus and top
//! intersection numbers of `O(d)` line bundles.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WpsError {
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("weights {0:?} have a common factor")]
    NotReduced(Vec<u64>),
    #[error("need at least two weights")]
    TooFewWeights,
    #[error("chart index {index} out of range for {len} weights")]
    ChartOutOfRange { index: usize, len: usize },
    #[error("expected {expected} degrees, got {got}")]
    DegreeCount { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProjectiveSpace {
    weights: Vec<u64>,
}

/// The chart `x_i != 0`: `C^n / mu_n` with the listed weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicQuotientChart {
    pub order: u64,
    pub weights: Vec<u64>,
}

impl WeightedProjectiveSpace {
    pub fn new(weights: &[u64]) -> Result<Self, WpsError> {
        if weights.len() < 2 {
            return Err(WpsError::TooFewWeights);
        }
        if weights.contains(&0) {
            return Err(WpsError::NonPositiveWeight);
        }
        if weights.iter().fold(0, |g, w| w.gcd(&g)) != 1 {
            return Err(WpsError::NotReduced(weights.to_vec()));
        }
        Ok(WeightedProjectiveSpace {
            weights: weights.to_vec(),
        })
    }

    pub fn projective(n: usize) -> Self {
        WeightedProjectiveSpace {
            weights: vec![1; n + 1],
        }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn dimension(&self) -> usize {
        self.weights.len() - 1
    }

    /// `U_i = C^n / mu_{q_i}` acting with weights `q_j mod q_i`, `j != i`.
    pub fn chart_data(&self, i: usize) -> Result<CyclicQuotientChart, WpsError> {
        let order = *self.weights.get(i).ok_or(WpsError::ChartOutOfRange {
            index: i,
            len: self.weights.len(),
        })?;
        let weights = self
            .weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &q)| q % order)
            .collect();
        Ok(CyclicQuotientChart { order, weights })
    }

    /// Degree of the canonical class: `K = O(-sum q)`.
    pub fn canonical_degree(&self) -> i64 {
        -(self.weights.iter().sum::<u64>() as i64)
    }

    /// Smallest `m > 0` with `O(m d)` Cartier: the lcm over charts of
    /// `q_i / gcd(q_i, d)`.
    pub fn cartier_index(&self, d: i64) -> u64 {
        let d = d.unsigned_abs();
        self.weights.iter().fold(1u64, |acc, &q| acc.lcm(&(q / q.gcd(&d))))
    }

    /// `O(d_1) ... O(d_n)` as `prod d / prod q`.
    pub fn top_intersection(&self, degrees: &[Rational]) -> Result<Rational, WpsError> {
        if degrees.len() != self.dimension() {
            return Err(WpsError::DegreeCount {
                expected: self.dimension(),
                got: degrees.len(),
            });
        }
        let num: Rational = degrees.iter().fold(Rational::one(), |a, d| a * d);
        let den: BigInt = self.weights.iter().map(|&q| BigInt::from(q)).product();
        Ok(num / Rational::from_integer(den))
    }

    /// Maximal coordinate strata fixed by some non-trivial, non-reflection
    /// element of a chart group.
    pub fn singular_locus(&self) -> Vec<SingularStratum> {
        let n = self.weights.len();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (i, &q) in self.weights.iter().enumerate() {
            let chart = self.chart_data(i).expect("in range");
            for k in 1..q {
                let moved = chart.weights.iter().filter(|&&w| (k * w) % q != 0).count();
                if moved <= 1 {
                    continue; // identity or a reflection: no singularity
                }
                let free: Vec<usize> = (0..n)
                    .filter(|&j| j == i || (k * self.weights[j]).is_multiple_of(q))
                    .collect();
                sets.insert(free);
            }
        }
        let all: Vec<Vec<usize>> = sets.into_iter().collect();
        all.iter()
            .filter(|s| {
                !all.iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x)))
            })
            .map(|s| SingularStratum {
                free_coordinates: s.clone(),
                ambient: n,
            })
            .collect()
    }
}

impl fmt::Display for WeightedProjectiveSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "P({})", w.join(","))
    }
}

/// The stratum where exactly the coordinates outside `free_coordinates`
/// vanish (closure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularStratum {
    pub free_coordinates: Vec<usize>,
    pub ambient: usize,
}

impl SingularStratum {
    pub fn dimension(&self) -> usize {
        self.free_coordinates.len() - 1
    }
}

impl fmt::Display for SingularStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free_coordinates.len() == 1 {
            return write!(f, "P{}", self.free_coordinates[0]);
        }
        let zero: Vec<String> = (0..self.ambient)
            .filter(|j| !self.free_coordinates.contains(j))
            .map(|j| format!("x{j}=0"))
            .collect();
        write!(f, "{{{}}}", zero.join(","))
    }
}

/// Ages of the non-trivial elements of a cyclic chart group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidTaiAudit {
    /// `(k, age(k))` for every `k` acting non-trivially.
    pub ages: Vec<(u64, Rational)>,
    /// Minimum age, `None` for the trivial group (read as `+inf`).
    pub min_age: Option<Rational>,
    /// Elements moving exactly one coordinate.
    pub quasi_reflections: Vec<u64>,
    /// Minimum age at least one and no quasi-reflections.
    pub canonical: bool,
}

/// `age(k) = (1/n) sum_j (k w_j mod n)` for `k = 1 .. n-1`.
///
/// ```
/// use kirwan_core::wps::{reid_tai_audit, CyclicQuotientChart};
/// use kirwan_core::exact::rat;
/// let a = reid_tai_audit(&CyclicQuotientChart { order: 4, weights: vec![1, 2, 3, 1] });
/// assert_eq!(a.min_age, Some(rat(3, 2)));
/// assert!(a.canonical);
/// ```
pub fn reid_tai_audit(chart: &CyclicQuotientChart) -> ReidTaiAudit {
    let n = chart.order;
    let mut ages = Vec::new();
    let mut quasi_reflections = Vec::new();
    for k in 1..n {
        let residues: Vec<u64> = chart.weights.iter().map(|&w| (k * w) % n).collect();
        let moved = residues.iter().filter(|&&r| r != 0).count();
        if moved == 0 {
            continue;
        }
        if moved == 1 {
            quasi_reflections.push(k);
        }
        let s: u64 = residues.iter().sum();
        ages.push((k, Rational::new(BigInt::from(s), BigInt::from(n))));
    }
    let min_age = ages.iter().map(|(_, a)| a.clone()).min();
    let canonical = quasi_reflections.is_empty()
        && min_age
            .as_ref()
            .is_none_or(|a| *a >= Rational::one());
    ReidTaiAudit {
        ages,
        min_age,
        quasi_reflections,
        canonical,
    }
}

/// Reid-Tai audit of every chart; the overall minimum age is the minimum of
/// the chart minima.
pub fn audit_all_charts(p: &WeightedProjectiveSpace) -> Vec<(usize, CyclicQuotientChart, ReidTaiAudit)> {
    (0..p.weights.len())
        .map(|i| {
            let c = p.chart_data(i).expect("in range");
            let a = reid_tai_audit(&c);
            (i, c, a)
        })
        .collect()
}

/// Whether `age(k) + age(n-k)` equals the number of coordinates moved by
/// `k`, for all `k`.
pub fn age_duality_holds(chart: &CyclicQuotientChart) -> bool {
    let n = chart.order;
    (1..n).all(|k| {
        let age = |k: u64| -> Rational {
            let s: u64 = chart.weights.iter().map(|&w| (k * w) % n).sum();
            Rational::new(BigInt::from(s), BigInt::from(n))
        };
        let moved = chart.weights.iter().filter(|&&w| (k * w) % n != 0).count();
        age(k) + age(n - k) == Rational::from_integer(BigInt::from(moved))
    })
}

/// Formats an optional age, `+inf` for `None`.
pub fn format_age(a: &Option<Rational>) -> String {
    match a {
        Some(a) => a.to_string(),
        None => "+inf".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p12345() -> WeightedProjectiveSpace {
        WeightedProjectiveSpace::new(&[1, 2, 3, 4, 5]).unwrap()
    }

    #[test]
    fn charts() {
        let p = p12345();
        assert_eq!(
            p.chart_data(4).unwrap(),
            CyclicQuotientChart { order: 5, weights: vec![1, 2, 3, 4] }
        );
        assert_eq!(p.chart_data(0).unwrap().order, 1);
        assert_eq!(p.chart_data(1).unwrap().weights, vec![1, 1, 0, 1]);
        assert_eq!(p.chart_data(3).unwrap().weights, vec![1, 2, 3, 1]);
        assert!(p.chart_data(5).is_err());
        assert!(WeightedProjectiveSpace::new(&[2, 4]).is_err());
    }

    #[test]
    fn ages() {
        let a = reid_tai_audit(&CyclicQuotientChart { order: 5, weights: vec![1, 2, 3, 4] });
        assert_eq!(a.min_age, Some(int(2)));
        assert!(a.canonical);
        let a = reid_tai_audit(&CyclicQuotientChart { order: 4, weights: vec![1, 2, 3, 1] });
        assert_eq!(
            a.ages,
            vec![(1, rat(7, 4)), (2, rat(3, 2)), (3, rat(9, 4))]
        );
        let a = reid_tai_audit(&CyclicQuotientChart { order: 1, weights: vec![0, 0, 0, 0] });
        assert_eq!(format_age(&a.min_age), "+inf");
        let overall = audit_all_charts(&p12345())
            .into_iter()
            .filter_map(|(_, _, a)| a.min_age)
            .min();
        assert_eq!(overall, Some(rat(3, 2)));
        let refl = reid_tai_audit(&CyclicQuotientChart { order: 2, weights: vec![0, 1] });
        assert_eq!(refl.quasi_reflections, vec![1]);
        assert!(!refl.canonical);
    }

    #[test]
    fn duality() {
        for (_, c, _) in audit_all_charts(&p12345()) {
            assert!(age_duality_holds(&c));
        }
        assert!(age_duality_holds(&CyclicQuotientChart { order: 7, weights: vec![1, 3, 5] }));
    }

    #[test]
    fn singular_loci() {
        let s: Vec<String> = p12345().singular_locus().iter().map(|s| s.to_string()).collect();
        assert_eq!(s, vec!["{x0=0,x2=0,x4=0}", "P2", "P4"]);
        assert!(WeightedProjectiveSpace::projective(3).singular_locus().is_empty());
        let p = WeightedProjectiveSpace::new(&[1, 1, 2]).unwrap();
        let s: Vec<String> = p.singular_locus().iter().map(|s| s.to_string()).collect();
        assert_eq!(s, vec!["P2"]);
    }

    #[test]
    fn intersections() {
        let p = p12345();
        assert_eq!(p.top_intersection(&vec![int(-15); 4]).unwrap(), rat(3375, 8));
        let lambda = rat(1, 6);
        assert_eq!(p.top_intersection(&vec![lambda; 4]).unwrap(), rat(1, 155520));
        assert!(p.top_intersection(&[int(1)]).is_err());
        assert_eq!(p.canonical_degree(), -15);
        assert_eq!(p.cartier_index(-15), 4);
        assert_eq!(WeightedProjectiveSpace::projective(4).cartier_index(1), 1);
        assert_eq!(WeightedProjectiveSpace::projective(4).canonical_degree(), -5);
        // K = -(15/4) O(4) as rational multiples of O(1)
        assert_eq!(rat(-15, 4) * int(4), int(p.canonical_degree()));
    }

    #[test]
    fn multilinearity() {
        let p = p12345();
        let base = vec![int(2), int(3), int(-1), int(5)];
        let mut twice = base.clone();
        twice[2] = &twice[2] * int(2);
        assert_eq!(
            p.top_intersection(&twice).unwrap(),
            int(2) * p.top_intersection(&base).unwrap()
        );
    }
}
