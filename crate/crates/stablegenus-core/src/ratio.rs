//! Rational-number helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Z = BigInt;
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Formats a rational as `a/b`, or plain `a` when integral.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a` or `a/b` (optionally signed) into a rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Z = n.trim().parse().ok()?;
        let d: Z = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: Z = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

/// Simplest rational strictly inside the open interval (lo, hi), by
/// Stern-Brocot descent. Requires lo < hi.
pub fn simplest_in(lo: &Q, hi: &Q) -> Q {
    assert!(lo < hi, "empty interval");
    if lo < &Q::zero() && hi > &Q::zero() {
        return Q::zero();
    }
    if hi <= &Q::zero() {
        return -simplest_nonneg(&-hi.clone(), &-lo.clone());
    }
    simplest_nonneg(lo, hi)
}

// 0 <= lo < hi
fn simplest_nonneg(lo: &Q, hi: &Q) -> Q {
    let fl = lo.floor();
    let next = fl.clone() + Q::one();
    if &next < hi {
        return next;
    }
    // no integer inside: both bounds within [fl, fl+1]
    if lo == &fl {
        // (fl, hi): simplest fractional part is 1/k, smallest k with 1/k < hi - fl
        let f = hi - &fl;
        let mut k = f.recip().floor() + Q::one();
        if (k.clone().recip()) >= f {
            k += Q::one();
        }
        return fl + k.recip();
    }
    fl.clone() + simplest_nonneg(&(hi - &fl).recip(), &(lo - &fl).recip()).recip()
}

/// Nonnegative absolute value.
pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

/// True when x is the square of a rational; returns the square root if so.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}
