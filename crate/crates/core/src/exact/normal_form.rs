use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, FiniteAbelianGroup, IntMatrix, LatticeQuotient};

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal, each
/// diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `s[i][i]` for `i < min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Position of the nonzero entry of least absolute value in the lower-right
/// block starting at `(t, t)`; ties go to the first one in row-major order.
fn min_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form with transformation matrices.
///
/// The pivot at each step is the entry of least absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_pivot(&s, t) else {
                return SmithForm { u, s, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = s.get(i, t) / &p;
                let neg = -q;
                s.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = s.get(t, j) / &p;
                let neg = -q;
                s.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

/// Row-style Hermite normal form: `u * a == h` with `u` unimodular, `h` in
/// row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. The nonzero rows of `h` are a canonical basis
/// of the row lattice of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

impl HermiteForm {
    /// The nonzero rows of `h`.
    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank).map(|i| self.h.row(i)).collect()
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        loop {
            let best = (row..m)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&x, &y| h.get(x, col).abs().cmp(&h.get(y, col).abs()));
            let Some(best) = best else { break };
            h.swap_rows(row, best);
            u.swap_rows(row, best);
            let p = h.get(row, col).clone();
            let mut done = true;
            for i in row + 1..m {
                let q = h.get(i, col).div_floor(&p);
                let neg = -q;
                h.add_row_multiple(i, row, &neg);
                u.add_row_multiple(i, row, &neg);
                done &= h.get(i, col).is_zero();
            }
            if done {
                break;
            }
        }
        if h.get(row, col).is_zero() {
            continue;
        }
        if h.get(row, col).is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        let p = h.get(row, col).clone();
        for r in 0..row {
            let q = h.get(r, col).div_floor(&p);
            let neg = -q;
            h.add_row_multiple(r, row, &neg);
            u.add_row_multiple(r, row, &neg);
        }
        row += 1;
    }
    HermiteForm { h, u, rank: row }
}

/// Saturated basis (as columns, in canonical Hermite form) of the integer
/// kernel `{x in Z^n : a x = 0}`.
///
/// ```
/// use kirwan_core::exact::{kernel_lattice, IntMatrix};
/// let k = kernel_lattice(&IntMatrix::from_i64(&[&[1, 1]]));
/// assert_eq!(k, IntMatrix::from_i64(&[&[1], &[-1]]));
/// ```
pub fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let hf = hermite_normal_form(&a.transpose());
    let rows: Vec<Vec<BigInt>> = (hf.rank..n).map(|i| hf.u.row(i)).collect();
    if rows.is_empty() {
        return IntMatrix::zeros(n, 0);
    }
    let k = IntMatrix::from_rows(&rows).expect("rectangular");
    let canon = hermite_normal_form(&k);
    IntMatrix::from_rows(&canon.basis_rows())
        .expect("rectangular")
        .transpose()
}

/// Whether two column bases span the same lattice.
pub fn lattice_eq(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    hermite_normal_form(&a.transpose()).basis_rows()
        == hermite_normal_form(&b.transpose()).basis_rows()
}

/// Index in `Z^n` of the lattice spanned by the rows of `b`.
pub fn sublattice_index(b: &IntMatrix) -> Result<BigInt, ExactError> {
    let snf = smith_normal_form(b);
    if snf.rank() < b.cols() {
        return Err(ExactError::InfiniteIndex);
    }
    Ok(snf.invariant_factors().iter().product())
}

/// `Z^n / (row span of m)` as a free rank plus torsion.
pub fn quotient_by_rows(m: &IntMatrix) -> LatticeQuotient {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    let free_rank = m.cols() - factors.len();
    let torsion: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
    LatticeQuotient {
        free_rank,
        torsion: FiniteAbelianGroup::new(torsion).expect("smith form gives a divisibility chain"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn check_snf(a: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(a);
        assert_eq!(&(&f.u * a) * &f.v, f.s);
        assert!(f.u.unimodular_inverse().is_some());
        assert!(f.v.unimodular_inverse().is_some());
        let d = f.invariant_factors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        f
    }

    #[test]
    fn smith_examples() {
        let f = check_snf(&IntMatrix::from_i64(&[&[-3, 3], &[-6, -3]]));
        assert_eq!(f.diagonal(), vec![b(3), b(9)]);
        let f = check_snf(&IntMatrix::identity(2));
        assert_eq!(f.diagonal(), vec![b(1), b(1)]);
        let f = check_snf(&IntMatrix::from_i64(&[&[-2, 2], &[-4, -2]]));
        assert_eq!(f.diagonal(), vec![b(2), b(6)]);
        let f = check_snf(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(f.diagonal(), vec![b(2), b(6), b(12)]);
        let f = check_snf(&IntMatrix::zeros(2, 3));
        assert!(f.invariant_factors().is_empty());
    }

    #[test]
    fn hermite_is_canonical() {
        let a = IntMatrix::from_i64(&[&[3, 1], &[1, 2]]);
        let b2 = IntMatrix::from_i64(&[&[4, 3], &[1, 2]]);
        assert_eq!(hermite_normal_form(&a).h, hermite_normal_form(&b2).h);
        let hf = hermite_normal_form(&a);
        assert_eq!(&hf.u * &a, hf.h);
    }

    #[test]
    fn kernels() {
        let k = kernel_lattice(&IntMatrix::zeros(2, 3));
        assert!(lattice_eq(&k, &IntMatrix::identity(3)));
        let a = IntMatrix::from_i64(&[&[2, 4]]);
        let k = kernel_lattice(&a);
        assert!(lattice_eq(&k, &IntMatrix::from_i64(&[&[2], &[-1]])));
        assert!(kernel_lattice(&IntMatrix::identity(2)).cols() == 0);
    }

    #[test]
    fn indices() {
        let m = IntMatrix::from_i64(&[&[0, 1, -1], &[3, -8, -1], &[-3, 7, -7]]);
        assert_eq!(sublattice_index(&m).unwrap(), b(27));
        assert_eq!(sublattice_index(&IntMatrix::identity(3)).unwrap(), b(1));
        let two = IntMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(sublattice_index(&two).unwrap(), b(8));
        let sing = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sublattice_index(&sing), Err(ExactError::InfiniteIndex));
    }

    #[test]
    fn quotients() {
        let q = quotient_by_rows(&IntMatrix::from_i64(&[&[-3, 3], &[-6, -3]]));
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion.to_string(), "Z3 x Z9");
        let q = quotient_by_rows(&IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.torsion.to_string(), "Z2");
    }
}
