//! Dense linear algebra over a prime field F_p: row reduction, kernels,
//! and subspaces with membership and intersection. Entries are canonical
//! residues in 0..p.

use crate::{Error, Result};

/// x^(p-2) mod p -- the inverse of a nonzero residue.
fn inv_mod(p: u64, x: u64) -> u64 {
    debug_assert!(x % p != 0);
    let mut base = x % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn reduce(p: u64, v: &mut [u64]) {
    for x in v.iter_mut() {
        *x %= p;
    }
}

/// Reduced row echelon form; zero rows are dropped.
pub fn rref(p: u64, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    for r in rows.iter_mut() {
        reduce(p, r);
    }
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(p, rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i == rank || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c];
            for j in 0..cols {
                rows[i][j] = (rows[i][j] + (p - f) * rows[rank][j]) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Basis (in rref) of { x : m x = 0 } for an m with `cols` columns.
pub fn kernel(p: u64, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let r = rref(p, m.to_vec());
    // pivot column of each rref row
    let pivots: Vec<usize> = r
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("rref rows are nonzero"))
        .collect();
    let mut basis = Vec::new();
    for c in 0..cols {
        if pivots.contains(&c) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[c] = 1;
        for (row, &pc) in r.iter().zip(&pivots) {
            // x_pc = -sum of free entries
            v[pc] = (p - row[c] % p) % p;
        }
        basis.push(v);
    }
    rref(p, basis)
}

pub fn mat_vec(p: u64, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a % p * (b % p)) % p))
        .collect()
}

pub fn mat_mul(p: u64, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0u64, |acc, (&x, br)| (acc + x % p * (br[j] % p)) % p)
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// A subspace of F_p^b stored as an rref basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpSubspace {
    p: u64,
    ambient: usize,
    basis: Vec<Vec<u64>>,
}

impl FpSubspace {
    /// The span of the given vectors.
    pub fn span(p: u64, ambient: usize, vectors: &[Vec<u64>]) -> Result<FpSubspace> {
        if p < 2 {
            return Err(Error::Invalid("modulus must be a prime >= 2".into()));
        }
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: v.len() });
            }
        }
        Ok(FpSubspace { p, ambient, basis: rref(p, vectors.to_vec()) })
    }

    pub fn whole(p: u64, ambient: usize) -> FpSubspace {
        FpSubspace { p, ambient, basis: identity(ambient) }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// Residual of v after reduction by the basis; zero iff v lies in the
    /// subspace.
    fn residual(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut r: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for row in &self.basis {
            let c = row.iter().position(|&x| x != 0).expect("rref rows are nonzero");
            if r[c] == 0 {
                continue;
            }
            let f = r[c];
            for j in 0..self.ambient {
                r[j] = (r[j] + (p - f) * row[j]) % p;
            }
        }
        r
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        Ok(self.residual(v).iter().all(|&x| x == 0))
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect(&self, other: &FpSubspace) -> Result<FpSubspace> {
        if other.ambient != self.ambient || other.p != self.p {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        // coefficients a with sum a_i * basis_i landing in `other`: the
        // kernel of the residual matrix (residuals stacked as columns)
        let residuals: Vec<Vec<u64>> =
            self.basis.iter().map(|b| other.residual(b)).collect();
        let cols = self.basis.len();
        let transposed: Vec<Vec<u64>> = (0..self.ambient)
            .map(|j| residuals.iter().map(|r| r[j]).collect())
            .collect();
        let coeffs = kernel(self.p, &transposed, cols);
        let vectors: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|a| {
                let mut v = vec![0u64; self.ambient];
                for (ai, b) in a.iter().zip(&self.basis) {
                    for (vj, bj) in v.iter_mut().zip(b) {
                        *vj = (*vj + ai * bj) % self.p;
                    }
                }
                v
            })
            .collect();
        FpSubspace::span(self.p, self.ambient, &vectors)
    }

    /// All vectors of the subspace (p^dim of them); test helper sized for
    /// tiny dimensions.
    pub fn enumerate(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.ambient]];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for v in &out {
                for c in 0..self.p {
                    next.push(
                        v.iter().zip(b).map(|(&x, &y)| (x + c * y) % self.p).collect(),
                    );
                }
            }
            out = next;
        }
        out
    }
}
