//! Exact rational linear programming: two-phase dense primal simplex with
//! Bland's anticycling rule. Problems here are tiny (dimension <= ~10,
//! a few dozen columns), so clarity wins over sparse cleverness.

use crate::ratio::Q;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Lp {
    Optimal { value: Q, x: Vec<Q> },
    Infeasible,
    Unbounded,
}

/// Minimizes c.x subject to a x = b with x_i >= 0, except that variables
/// flagged in `free` are unrestricted in sign.
pub fn solve(c: &[Q], a: &[Vec<Q>], b: &[Q], free: &[bool]) -> Lp {
    let n = c.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == a.len() && free.len() == n);
    // split free variables into positive and negative parts
    let mut cols: Vec<(usize, bool)> = Vec::new(); // (original index, negated)
    for (i, &f) in free.iter().enumerate() {
        cols.push((i, false));
        if f {
            cols.push((i, true));
        }
    }
    let cost: Vec<Q> = cols
        .iter()
        .map(|&(i, neg)| if neg { -c[i].clone() } else { c[i].clone() })
        .collect();
    let rows: Vec<Vec<Q>> = a
        .iter()
        .map(|row| {
            cols.iter()
                .map(|&(i, neg)| if neg { -row[i].clone() } else { row[i].clone() })
                .collect()
        })
        .collect();
    match solve_nonneg(&cost, &rows, b) {
        Inner::Infeasible => Lp::Infeasible,
        Inner::Unbounded => Lp::Unbounded,
        Inner::Optimal { value, x } => {
            let mut out = vec![Q::zero(); n];
            for (k, &(i, neg)) in cols.iter().enumerate() {
                if neg {
                    out[i] -= &x[k];
                } else {
                    out[i] += &x[k];
                }
            }
            Lp::Optimal { value, x: out }
        }
    }
}

enum Inner {
    Optimal { value: Q, x: Vec<Q> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // m rows of n variable columns plus rhs
    a: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for v in self.a[r].iter_mut() {
            *v = &*v / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for j in 0..self.a[i].len() {
                let d = &f * &self.a[r][j];
                self.a[i][j] -= d;
            }
            let d = &f * &self.rhs[r];
            self.rhs[i] -= d;
        }
        self.basis[r] = c;
    }

    /// Runs simplex on the given cost vector (Bland's rule); returns false
    /// when the objective is unbounded below.
    fn minimize(&mut self, cost: &[Q], active: usize) -> bool {
        loop {
            // reduced costs over the first `active` columns
            let mut enter = None;
            for j in 0..active {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    rc -= &cost[bi] * &self.a[i][j];
                }
                if rc.is_negative() {
                    enter = Some(j);
                    break;
                }
            }
            let j = match enter {
                Some(j) => j,
                None => return true,
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.a.len() {
                if !self.a[i][j].is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(r) => {
                        let cur = &self.rhs[r] / &self.a[r][j];
                        let cand = &self.rhs[i] / &self.a[i][j];
                        cand < cur || (cand == cur && self.basis[i] < self.basis[r])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            match leave {
                Some(r) => self.pivot(r, j),
                None => return false,
            }
        }
    }

    fn objective(&self, cost: &[Q]) -> Q {
        let mut v = Q::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            v += &cost[bi] * &self.rhs[i];
        }
        v
    }
}

fn solve_nonneg(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> Inner {
    let m = a.len();
    let n = c.len();
    // phase 1: artificial basis, rhs made nonnegative
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Q> = a[i].clone();
        let mut r = b[i].clone();
        if r.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            r = -r;
        }
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        rows.push(row);
        rhs.push(r);
    }
    let mut t = Tableau { a: rows, rhs, basis: (n..n + m).collect() };
    let mut phase1 = vec![Q::zero(); n + m];
    for v in phase1.iter_mut().skip(n) {
        *v = Q::one();
    }
    let ok = t.minimize(&phase1, n + m);
    debug_assert!(ok, "phase 1 is bounded below by zero");
    if !t.objective(&phase1).is_zero() {
        return Inner::Infeasible;
    }
    // drive leftover artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.basis.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.a[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.a.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    for row in t.a.iter_mut() {
        row.truncate(n);
    }
    // phase 2
    if !t.minimize(c, n) {
        return Inner::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        x[bi] = t.rhs[i].clone();
    }
    Inner::Optimal { value: t.objective(c), x }
}
