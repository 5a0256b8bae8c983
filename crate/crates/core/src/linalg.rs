//! Exact dense linear algebra over the rationals.
//!
//! Matrices are small (rank ≤ 10 for every diagram of interest), so plain
//! `Vec<Vec<Rational>>` with Gaussian elimination is all we need.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn from_integers(m: &[Vec<i64>]) -> Matrix {
    m.iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x as i128)).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

/// Diagonal of a symmetric congruence diagonalization `PᵀAP = D`.
///
/// Zero pivots are repaired by a symmetric swap with a later nonzero diagonal
/// entry, or failing that by adding a row/column with a nonzero off-diagonal
/// coupling (which makes the pivot `2·a_kj ≠ 0`).
pub fn congruence_diagonal(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                for c in 0..n {
                    let v = m[j][c];
                    m[k][c] += v;
                }
                for row in m.iter_mut() {
                    let v = row[j];
                    row[k] += v;
                }
            }
        }
        let pivot = m[k][k];
        diag.push(pivot);
        if pivot.is_zero() {
            // Row k is entirely zero below the diagonal at this point.
            continue;
        }
        for i in k + 1..n {
            let f = m[i][k] / pivot;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = m[k][c];
                m[i][c] -= f * v;
            }
            for r in k..n {
                let v = m[r][k];
                m[r][i] -= f * v;
            }
        }
    }
    diag
}

pub fn inertia(a: &[Vec<Rational>]) -> Inertia {
    let d = congruence_diagonal(a);
    Inertia {
        positive: d.iter().filter(|x| x.is_positive()).count(),
        negative: d.iter().filter(|x| x.is_negative()).count(),
        null: d.iter().filter(|x| x.is_zero()).count(),
    }
}

/// Sylvester's criterion: every leading principal minor is positive.
pub fn is_positive_definite(a: &[Vec<Rational>]) -> bool {
    // Without pivoting, the k-th elimination pivot equals minor_k / minor_{k-1}.
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    for k in 0..n {
        let pivot = m[k][k];
        if !pivot.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = m[i][k] / pivot;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = m[k][c];
                m[i][c] -= f * v;
            }
        }
    }
    true
}

pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k];
        det *= pivot;
        for i in k + 1..n {
            let f = m[i][k] / pivot;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = m[k][c];
                m[i][c] -= f * v;
            }
        }
    }
    det
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    gauss_jordan(&mut m, n)?;
    Ok(m.iter().map(|row| row[n]).collect())
}

pub fn inverse(a: &[Vec<Rational>]) -> Result<Matrix> {
    let n = a.len();
    let id = identity(n);
    let mut m: Matrix = a
        .iter()
        .zip(id)
        .map(|(row, idr)| row.iter().copied().chain(idr).collect())
        .collect();
    gauss_jordan(&mut m, n)?;
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn gauss_jordan(m: &mut Matrix, n: usize) -> Result<()> {
    let width = m.first().map_or(0, Vec::len);
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular)?;
        m.swap(p, k);
        let inv = m[k][k].recip();
        for c in k..width {
            m[k][c] *= inv;
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k];
            for c in k..width {
                let v = m[k][c];
                m[i][c] -= f * v;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn q(m: &[&[i64]]) -> Matrix {
        from_integers(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn inertia_of_small_forms() {
        let a2 = q(&[&[2, -1], &[-1, 2]]);
        assert_eq!(inertia(&a2), Inertia { positive: 2, negative: 0, null: 0 });
        let cycle = q(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(inertia(&cycle), Inertia { positive: 2, negative: 0, null: 1 });
        let hyp = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(inertia(&hyp), Inertia { positive: 1, negative: 1, null: 0 });
        let zero = q(&[&[0, 0], &[0, 0]]);
        assert_eq!(inertia(&zero), Inertia { positive: 0, negative: 0, null: 2 });
    }

    #[test]
    fn determinant_and_inverse() {
        let a2 = q(&[&[2, -1], &[-1, 2]]);
        assert_eq!(determinant(&a2), int(3));
        let inv = inverse(&a2).unwrap();
        assert_eq!(inv, vec![vec![frac(2, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 3)]]);
        let cycle = q(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(determinant(&cycle), int(0));
        assert_eq!(inverse(&cycle), Err(Error::Singular));
        let x = solve(&a2, &[int(1), int(0)]).unwrap();
        assert_eq!(x, vec![frac(2, 3), frac(1, 3)]);
    }

    #[test]
    fn sylvester_agrees_with_inertia_on_examples() {
        assert!(is_positive_definite(&q(&[&[2, -1], &[-1, 2]])));
        assert!(!is_positive_definite(&q(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])));
        assert!(!is_positive_definite(&q(&[&[0, 1], &[1, 0]])));
    }

    proptest! {
        // Inertia is a congruence invariant and positive-definiteness matches it.
        #[test]
        fn inertia_congruence_invariant(
            entries in proptest::collection::vec(-3i64..=3, 10),
            p in proptest::collection::vec(-2i64..=2, 16),
        ) {
            let mut a = vec![vec![0i64; 4]; 4];
            let mut it = entries.iter();
            for i in 0..4 {
                for j in i..4 {
                    let v = *it.next().unwrap();
                    a[i][j] = v;
                    a[j][i] = v;
                }
            }
            let a = from_integers(&a);
            let pm: Vec<Vec<i64>> = p.chunks(4).map(|c| c.to_vec()).collect();
            let pm = from_integers(&pm);
            prop_assume!(!determinant(&pm).is_zero());
            // PᵀAP
            let n = 4;
            let mut b = vec![vec![Rational::zero(); n]; n];
            for i in 0..n { for j in 0..n { for k in 0..n { for l in 0..n {
                b[i][j] += pm[k][i] * a[k][l] * pm[l][j];
            }}}}
            prop_assert_eq!(inertia(&a), inertia(&b));
            let ia = inertia(&a);
            prop_assert_eq!(is_positive_definite(&a), ia.positive == n);
        }
    }
}
