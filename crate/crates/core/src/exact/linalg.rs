//! Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::Rational;

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix given by rows.
pub fn rank_q(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Unique solution of `A x = b`, or `None` if the system is inconsistent or
/// underdetermined.
pub fn solve_q(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len(), "right-hand side length");
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Basis of the right nullspace `{x : A x = 0}`.
pub fn nullspace_q(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn solve_and_rank() {
        let a = q(&[&[2, 1], &[1, 3]]);
        assert_eq!(solve_q(&a, &[int(3), int(4)]).unwrap(), vec![int(1), int(1)]);
        assert_eq!(rank_q(&q(&[&[1, 2], &[2, 4]])), 1);
        assert!(solve_q(&q(&[&[1, 2], &[2, 4]]), &[int(1), int(3)]).is_none());
        let x = solve_q(&q(&[&[3, 0], &[0, 8]]), &[int(1), int(-1)]).unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(-1, 8)]);
    }

    #[test]
    fn nullspace() {
        let ns = nullspace_q(&q(&[&[1, 1, 1]]), 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&v[0] + &v[1] + &v[2]).is_zero());
        }
        assert!(nullspace_q(&q(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }
}
