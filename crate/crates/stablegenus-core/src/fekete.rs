//! Subadditive-sequence utilities: certified upper bounds for the stable
//! limit lim f(n)/n and the explicit threshold beyond which f(n)/n sits
//! within eps of that limit.

use crate::ratio::{format_q, Q, Z};
use crate::{Error, Result};
use num_traits::Signed;
use std::collections::BTreeMap;

/// Finite table of values of a subadditive function on positive integers.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SubadditiveTable {
    values: BTreeMap<u64, Q>,
}

/// A stored pair contradicting subadditivity.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// f(n+m) > f(n) + f(m)
    Additive { n: u64, m: u64, lhs: Q, rhs: Q },
    /// f(nm) > n f(m)
    Multiplicative { n: u64, m: u64, lhs: Q, rhs: Q },
}

impl SubadditiveTable {
    pub fn new() -> SubadditiveTable {
        SubadditiveTable::default()
    }

    pub fn insert(&mut self, n: u64, value: Q) -> Result<()> {
        if n == 0 {
            return Err(Error::Invalid("table index must be positive".into()));
        }
        if value.is_negative() {
            return Err(Error::Invalid(format!("f({}) = {} is negative", n, format_q(&value))));
        }
        self.values.insert(n, value);
        Ok(())
    }

    pub fn from_pairs(pairs: &[(u64, Q)]) -> Result<SubadditiveTable> {
        let mut t = SubadditiveTable::new();
        for (n, v) in pairs {
            t.insert(*n, v.clone())?;
        }
        Ok(t)
    }

    pub fn get(&self, n: u64) -> Option<&Q> {
        self.values.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u64, &Q)> {
        self.values.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// min f(n)/n over the stored entries -- an upper bound for the limit of
/// f(n)/n of any subadditive extension.
pub fn fekete_upper(table: &SubadditiveTable) -> Result<Q> {
    table
        .iter()
        .map(|(n, v)| v / Q::from_integer(Z::from(*n)))
        .min()
        .ok_or_else(|| Error::Invalid("empty table".into()))
}

/// Smallest integer n0 >= 2B/eps + N. For a subadditive f with
/// f(N)/N within eps/2 of the limit and f bounded by B on remainders
/// below N, every n >= n0 has f(n)/n within eps of the limit.
pub fn fekete_n0(cap_n: u64, bound_b: &Q, eps: &Q) -> Result<Z> {
    if cap_n < 1 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    if bound_b.is_negative() {
        return Err(Error::Invalid("B must be nonnegative".into()));
    }
    if !eps.is_positive() {
        return Err(Error::EpsOutOfRange(format_q(eps)));
    }
    let x = Q::from_integer(Z::from(2)) * bound_b / eps + Q::from_integer(Z::from(cap_n));
    Ok(x.ceil().to_integer())
}

/// All stored pairs violating f(n+m) <= f(n)+f(m) or f(nm) <= n f(m).
pub fn audit_subadditive(table: &SubadditiveTable) -> Vec<Violation> {
    let mut out = Vec::new();
    let entries: Vec<(u64, Q)> = table.iter().map(|(n, v)| (*n, v.clone())).collect();
    for (n, fn_) in &entries {
        for (m, fm) in &entries {
            if n > m {
                continue;
            }
            if let Some(fsum) = table.get(n + m) {
                let rhs = fn_ + fm;
                if fsum > &rhs {
                    out.push(Violation::Additive { n: *n, m: *m, lhs: fsum.clone(), rhs });
                }
            }
        }
    }
    for (n, _) in &entries {
        for (m, fm) in &entries {
            if let Some(fprod) = table.get(n * m) {
                let rhs = Q::from_integer(Z::from(*n)) * fm;
                if fprod > &rhs {
                    out.push(Violation::Multiplicative { n: *n, m: *m, lhs: fprod.clone(), rhs });
                }
            }
        }
    }
    out
}
