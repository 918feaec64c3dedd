//! Finite stabilizers of the slice: Eckardt loci, the screens over 8th
//! roots of unity, and the screen of the finite part acting on the
//! exceptional divisor.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{slice_action, slice_ring, LunaError, SliceElement};
use crate::cyclotomic::Cyclotomic;
use crate::exact::{quotient_by_rows, rank_q, FiniteAbelianGroup, IntMatrix, Rational};
use crate::poly::{LaurentPolynomial, Ring};

/// One Eckardt component `a_j^2 ah_i^3 - a_i^2 ah_j^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EckardtComponent {
    pub pair: (usize, usize),
    pub equation: LaurentPolynomial,
    /// `f o g = scalar * f` for the order-two element swapping `i` and `j`.
    pub scalar: Cyclotomic,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EckardtAudit {
    pub components: Vec<EckardtComponent>,
    pub total_multiplicity: u64,
}

/// The element `A_l`: swap `i <-> j`, `l_i = l` formal, `l_j = z8^2 / l`,
/// the remaining scalars `z8`.
fn swap_element(conductor: u32, i: usize, j: usize) -> Result<SliceElement, LunaError> {
    let params = Ring::new(&["l"], conductor)?;
    let z8 = Cyclotomic::root_of_unity(conductor, 8, 1).map_err(crate::poly::PolyError::from)?;
    let c = |k: i64| LaurentPolynomial::constant(&params, z8.pow(k).expect("unit"));
    let lam = LaurentPolynomial::var(&params, "l")?;
    let mut ls = [c(1), c(1), c(1), c(1)];
    ls[i] = lam.clone();
    ls[j] = &c(2) * &lam.term_inverse()?;
    let mut perm = [0, 1, 2];
    perm.swap(i, j);
    SliceElement::new(perm, ls)
}

/// Checks each Eckardt component is semi-invariant under its swap and
/// records its multiplicity at the origin.
pub fn eckardt_multiplicity(conductor: u32) -> Result<EckardtAudit, LunaError> {
    let r = slice_ring(conductor);
    let mut components = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let eq = LaurentPolynomial::parse(&r, &format!("a{j}^2*ah{i}^3 - a{i}^2*ah{j}^3"))?;
        let g = swap_element(conductor, i, j)?;
        let det = g.determinant();
        debug_assert!(det.as_constant().is_some_and(|c| c.is_one()));
        let img = slice_action(&g, &eq)?;
        let lifted = eq.embed(img.ring())?;
        let (lead_m, lead_c) = lifted.terms().next_back().expect("nonzero");
        let scalar = &img.coefficient(lead_m) * &lead_c.inverse().map_err(crate::poly::PolyError::from)?;
        if img != lifted.scale(&scalar) {
            return Err(LunaError::NotSemiInvariant(eq.to_string()));
        }
        components.push(EckardtComponent {
            pair: (i, j),
            multiplicity: eq.multiplicity_at_origin()?,
            equation: eq,
            scalar,
        });
    }
    let total_multiplicity = components.iter().map(|c| c.multiplicity).sum();
    Ok(EckardtAudit {
        components,
        total_multiplicity,
    })
}

/// Diagonal sign matrix with exactly two entries `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPatternScreen {
    pub signs: [i8; 4],
    pub satisfies_constraint: bool,
    /// Number of slice coordinates not fixed.
    pub fixed_codimension: usize,
}

/// All diagonal elements with entries 8th roots of unity satisfying both
/// `l0 l1 l2 = l3^3` and determinant one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalScreen {
    pub checked: usize,
    pub admissible: usize,
    pub non_scalar: usize,
    pub min_codimension: usize,
    /// Count of non-scalar admissible elements by order in `PGL4`.
    pub by_projective_order: BTreeMap<u32, usize>,
}

/// Case of a transposition image: `l0 l1 = z8^(2n)`, `l2 = z8^(3-2n)`,
/// `l3 = z8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTwoSubcase {
    pub n: u32,
    /// `(l0 l1)^3 = l3^6`
    pub cube_condition: bool,
    /// `(l0 l1)^2 = l3^4`
    pub square_condition: bool,
}

impl CaseTwoSubcase {
    /// `II(i)` to `II(iv)` for `n = 0..3`.
    pub fn label(&self) -> String {
        const ROMAN: [&str; 4] = ["i", "ii", "iii", "iv"];
        format!("II({})", ROMAN.get(self.n as usize).copied().unwrap_or("?"))
    }

    pub fn passes(&self) -> bool {
        self.cube_condition && self.square_condition
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseScreens {
    pub sign_patterns: Vec<SignPatternScreen>,
    pub diagonal: DiagonalScreen,
    pub case_two: Vec<CaseTwoSubcase>,
}

fn fixed_codimension(g: &SliceElement) -> Result<usize, LunaError> {
    let mut moved = 0;
    for hat in [false, true] {
        for i in 0..3 {
            let (m, j) = g.multiplier(i, hat)?;
            if j != i || !m.as_constant().is_some_and(|c| c.is_one()) {
                moved += 1;
            }
        }
    }
    Ok(moved)
}

/// Codimension of the fixed locus of `diag(z8^e)` on the slice.
fn codimension_mod8(e: [u32; 4]) -> usize {
    (0..3)
        .map(|i| {
            let d = (e[i] + 8 - e[3]) % 8;
            usize::from(!(3 * d).is_multiple_of(8)) + usize::from(!(2 * d).is_multiple_of(8))
        })
        .sum()
}

fn projective_order(e: [u32; 4]) -> u32 {
    (1..=8)
        .find(|m| (0..3).all(|i| (m * ((e[i] + 8 - e[3]) % 8)).is_multiple_of(8)))
        .expect("order divides 8")
}

pub fn case_screens(conductor: u32) -> Result<CaseScreens, LunaError> {
    let mut sign_patterns = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let mut signs = [1i8; 4];
            signs[a] = -1;
            signs[b] = -1;
            let ls = signs.map(|s| Cyclotomic::from_int(conductor, s as i64));
            let (satisfies_constraint, fixed_codimension) = match SliceElement::diagonal(conductor, ls) {
                Ok(g) => (true, fixed_codimension(&g)?),
                Err(LunaError::ConstraintViolated) => (false, 0),
                Err(e) => return Err(e),
            };
            sign_patterns.push(SignPatternScreen {
                signs,
                satisfies_constraint,
                fixed_codimension,
            });
        }
    }

    let mut diagonal = DiagonalScreen {
        checked: 0,
        admissible: 0,
        non_scalar: 0,
        min_codimension: usize::MAX,
        by_projective_order: BTreeMap::new(),
    };
    for code in 0..4096u32 {
        let e = [code % 8, code / 8 % 8, code / 64 % 8, code / 512];
        diagonal.checked += 1;
        let prod3 = (e[0] + e[1] + e[2]) % 8;
        if prod3 != 3 * e[3] % 8 || (prod3 + e[3]) % 8 != 0 {
            continue;
        }
        diagonal.admissible += 1;
        if e.iter().all(|&x| x == e[3]) {
            continue;
        }
        diagonal.non_scalar += 1;
        diagonal.min_codimension = diagonal.min_codimension.min(codimension_mod8(e));
        *diagonal.by_projective_order.entry(projective_order(e)).or_default() += 1;
    }

    let z8 = |k: i64| Cyclotomic::root_of_unity(conductor, 8, k).map_err(crate::poly::PolyError::from);
    let l3 = z8(1)?;
    let mut case_two = Vec::new();
    for n in 0..4u32 {
        let p = z8(2 * n as i64)?;
        let pow = |c: &Cyclotomic, k| c.pow(k).expect("unit");
        case_two.push(CaseTwoSubcase {
            n,
            cube_condition: pow(&p, 3) == pow(&l3, 6),
            square_condition: pow(&p, 2) == pow(&l3, 4),
        });
    }
    Ok(CaseScreens {
        sign_patterns,
        diagonal,
        case_two,
    })
}

/// Outcome for elements of the finite part whose permutation image fixes
/// the coordinate pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityImage {
    /// Rank of the torus part of the fixing group.
    pub free_rank: usize,
    /// Torsion of the fixing group.
    pub group: FiniteAbelianGroup,
    /// Order of the scalar matrices among them.
    pub scalar_order: BigInt,
}

impl IdentityImage {
    pub fn only_scalars(&self) -> bool {
        self.free_rank == 0 && self.group.order() == self.scalar_order
    }
}

/// Outcome for one permutation image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermutationScreen {
    /// The permutation moves the zero coordinate, so cannot fix the point.
    MovesZeroPattern { perm: [usize; 3] },
    /// Only coordinates mapped to themselves: a subgroup condition.
    Diagonal { perm: [usize; 3], image: IdentityImage },
    /// Some coordinates are exchanged: the group reaches ratios of swapped
    /// coordinates only along a subvariety of dimension `ratio_dimension`,
    /// while a generic point needs `required` independent ratios.
    Exchanging { perm: [usize; 3], ratio_dimension: usize, required: usize },
}

impl PermutationScreen {
    /// Whether some non-scalar element with this image fixes the generic
    /// point.
    pub fn fixes_generic_point(&self) -> bool {
        match self {
            PermutationScreen::MovesZeroPattern { .. } => false,
            PermutationScreen::Diagonal { image, .. } => !image.only_scalars(),
            PermutationScreen::Exchanging { ratio_dimension, required, .. } => ratio_dimension >= required,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePartScreen {
    pub permutations: Vec<PermutationScreen>,
}

impl FinitePartScreen {
    pub fn trivial(&self) -> bool {
        self.permutations.iter().all(|p| !p.fixes_generic_point())
    }
}

fn unit(k: usize) -> [i64; 4] {
    let mut e = [0; 4];
    e[k] = 1;
    e
}

fn add(a: [i64; 4], b: [i64; 4], s: i64) -> [i64; 4] {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]]
}

/// Elements of the normalizer, acting on the chart `ah0 != 0` of the
/// exceptional divisor, at the generic point of `{t0 = 0}`: chart
/// coordinates `t1, t2, th1, th2` generic, `t0 = 0`.
///
/// Characters are integer vectors of exponents of `(l0, l1, l2, l3)`. The
/// group constraints are `l0 l1 l2 l3^-3 = 1` and `l0 l1 l2 l3 = sign`.
pub fn finite_part_screen() -> FinitePartScreen {
    let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let mut out = Vec::new();
    for perm in perms {
        // the zero coordinate t0 = a0 / ah0 must be sent to itself
        if perm[0] != 0 {
            out.push(PermutationScreen::MovesZeroPattern { perm });
            continue;
        }
        let mut constraints: Vec<[i64; 4]> = vec![[1, 1, 1, -3], [1, 1, 1, 1]];
        let mut ratios: Vec<[i64; 4]> = Vec::new();
        let mut seen = Vec::new();
        for (hat, power) in [(false, 3), (true, 2)] {
            for i in 1..3 {
                let j = perm[i];
                // chart coordinate = slice coordinate / ah0
                let ch = add(add(unit(j), unit(3), -1).map(|x| x * power), add(unit(0), unit(3), -1).map(|x| x * 2), -1);
                if j == i {
                    constraints.push(ch);
                } else if !seen.contains(&(hat, j)) {
                    let partner = add(add(unit(i), unit(3), -1).map(|x| x * power), add(unit(0), unit(3), -1).map(|x| x * 2), -1);
                    constraints.push(add(ch, partner, 1));
                    ratios.push(ch);
                    seen.push((hat, i));
                }
            }
        }
        if ratios.is_empty() {
            let rows: Vec<Vec<i64>> = constraints.iter().map(|r| r.to_vec()).collect();
            let q = quotient_by_rows(&IntMatrix::from_rows(&rows).expect("rectangular"));
            let scalar_order = constraints
                .iter()
                .map(|r| BigInt::from(r.iter().sum::<i64>()))
                .fold(BigInt::zero(), |g, s| g.gcd(&s));
            out.push(PermutationScreen::Diagonal {
                perm,
                image: IdentityImage {
                    free_rank: q.free_rank,
                    group: q.torsion,
                    scalar_order,
                },
            });
        } else {
            let q = |rows: &[[i64; 4]]| -> Vec<Vec<Rational>> {
                rows.iter()
                    .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                    .collect()
            };
            let base = rank_q(&q(&constraints));
            let mut all = constraints.clone();
            all.extend(&ratios);
            out.push(PermutationScreen::Exchanging {
                perm,
                ratio_dimension: rank_q(&q(&all)) - base,
                required: ratios.len(),
            });
        }
    }
    FinitePartScreen { permutations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::DEFAULT_CONDUCTOR as N;

    #[test]
    fn eckardt_components() {
        let a = eckardt_multiplicity(N).unwrap();
        assert_eq!(a.components.len(), 3);
        for c in &a.components {
            assert_eq!(c.multiplicity, 5);
            assert_eq!(c.scalar, Cyclotomic::from_int(N, -1));
        }
        assert_eq!(a.total_multiplicity, 15);
    }

    #[test]
    fn screens() {
        let s = case_screens(N).unwrap();
        assert_eq!(s.sign_patterns.len(), 6);
        assert!(s.sign_patterns.iter().all(|p| p.satisfies_constraint && p.fixed_codimension >= 2));
        assert_eq!(s.diagonal.checked, 4096);
        assert!(s.diagonal.non_scalar > 0);
        assert!(s.diagonal.min_codimension >= 2);
        let passing: Vec<u32> = s.case_two.iter().filter(|c| c.passes()).map(|c| c.n).collect();
        assert_eq!(passing, vec![1]);
        assert_eq!(s.case_two[1].label(), "II(ii)");
    }

    #[test]
    fn finite_part() {
        let f = finite_part_screen();
        assert!(f.trivial(), "{f:?}");
        let id = f
            .permutations
            .iter()
            .find_map(|p| match p {
                PermutationScreen::Diagonal { perm: [0, 1, 2], image } => Some(image.clone()),
                _ => None,
            })
            .unwrap();
        assert_eq!(id.group.order(), BigInt::from(4));
        assert!(id.only_scalars());
        let tr = f
            .permutations
            .iter()
            .find(|p| matches!(p, PermutationScreen::Exchanging { perm: [0, 2, 1], .. }))
            .unwrap();
        assert_eq!(
            *tr,
            PermutationScreen::Exchanging { perm: [0, 2, 1], ratio_dimension: 1, required: 2 }
        );
    }

    #[test]
    fn swap_elements_are_special_linear() {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let g = swap_element(N, i, j).unwrap();
            assert!(g.determinant().as_constant().unwrap().is_one());
        }
    }
}
