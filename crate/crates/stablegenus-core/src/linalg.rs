//! Small exact linear algebra: integer determinants (Bareiss) and rational
//! Gaussian elimination for solving and rank.

use crate::ratio::{Q, Z};
use num_traits::{One, Signed, Zero};

/// Fraction-free determinant of a square integer matrix.
pub fn det_int(m: &[Vec<Z>]) -> Z {
    let n = m.len();
    if n == 0 {
        return Z::one();
    }
    let mut a: Vec<Vec<Z>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = Z::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Z::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = Z::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Solves A x = b exactly. Returns None when the system is singular or
/// inconsistent (A square).
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=n {
                    let delta = &f * &m[col][j];
                    m[r][j] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let piv = (r..m.len()).find(|&i| !m[i][c].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, piv);
        let p = m[r][c].clone();
        for j in c..cols {
            m[r][j] = &m[r][j] / &p;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Signature (positives minus negatives) and nullity of a rational symmetric
/// matrix via congruence diagonalization.
pub fn symmetric_signature(m: &[Vec<Q>]) -> (i64, usize) {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut sig = 0i64;
    let mut zeros = 0usize;
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            // look for a later nonzero diagonal entry to swap in
            if let Some(r) = (k + 1..n).find(|&r| !a[r][r].is_zero()) {
                a.swap(k, r);
                for row in a.iter_mut() {
                    row.swap(k, r);
                }
            } else if let Some((r, c)) = (k..n)
                .flat_map(|r| (r + 1..n).map(move |c| (r, c)))
                .find(|&(r, c)| !a[r][c].is_zero())
            {
                // symmetric pair: add row/col c onto r to create a diagonal
                for j in 0..n {
                    let v = a[c][j].clone();
                    a[r][j] += v;
                }
                for i in 0..n {
                    let v = a[i][c].clone();
                    a[i][r] += v;
                }
                if r != k {
                    a.swap(k, r);
                    for row in a.iter_mut() {
                        row.swap(k, r);
                    }
                }
            } else {
                zeros += n - k;
                break;
            }
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            sig += 1;
        } else {
            sig -= 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &d;
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
            for jrow in k..n {
                let delta = &f * &a[jrow][k];
                a[jrow][i] -= delta;
            }
        }
        k += 1;
    }
    (sig, zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{q, qi};

    fn zm(rows: &[&[i64]]) -> Vec<Vec<Z>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Z::from(x)).collect())
            .collect()
    }

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_int(&zm(&[&[0, 1], &[-1, 0]])), Z::from(1));
        assert_eq!(det_int(&zm(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]])), Z::from(24));
        assert_eq!(det_int(&zm(&[&[1, 2], &[2, 4]])), Z::from(0));
    }

    #[test]
    fn solve_examples() {
        let a = qm(&[&[2, 1], &[1, -1]]);
        let b = vec![qi(3), qi(0)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![qi(1), qi(1)]);
        assert!(solve(&qm(&[&[1, 1], &[2, 2]]), &[qi(1), qi(3)]).is_none());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&qm(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&qm(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
    }

    #[test]
    fn signature_examples() {
        let (s, z) = symmetric_signature(&qm(&[&[-2, 1], &[1, -2]]));
        assert_eq!((s, z), (-2, 0));
        let (s, z) = symmetric_signature(&qm(&[&[0, 1], &[1, 0]]));
        assert_eq!((s, z), (0, 0));
        let (s, z) = symmetric_signature(&qm(&[&[1, 1], &[1, 1]]));
        assert_eq!((s, z), (1, 1));
        let m = qm(&[&[0, 0, 2], &[0, -1, 0], &[2, 0, 0]]);
        let (s, z) = symmetric_signature(&m);
        assert_eq!((s, z), (-1, 0));
        let _ = q(0, 1);
    }
}
