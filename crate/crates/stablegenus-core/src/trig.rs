//! Certified rational enclosures of cos(2*pi*t) for rational t.
//!
//! pi is enclosed with Machin's formula (alternating arctangent series give
//! two-sided bounds), cos with a Taylor partial sum plus a remainder bound
//! and a Lipschitz padding for the interval argument. Everything is exact
//! rational arithmetic; `bits` controls the enclosure width (~2^-bits).

use crate::ratio::{Q, Z};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

fn pow2(bits: u32) -> Q {
    Q::new(Z::one(), Z::from(2u8).pow(bits))
}

/// Rounds outward to denominator 2^bits to keep numbers small.
fn round_down(x: &Q, bits: u32) -> Q {
    let scale = Z::from(2u8).pow(bits);
    let n = (x * Q::from_integer(scale.clone())).floor();
    n / Q::from_integer(scale)
}

fn round_up(x: &Q, bits: u32) -> Q {
    let scale = Z::from(2u8).pow(bits);
    let n = (x * Q::from_integer(scale.clone())).ceil();
    n / Q::from_integer(scale)
}

/// Two-sided bounds for arctan(1/k) from the alternating series.
fn atan_inv(k: i64, terms: usize) -> (Q, Q) {
    let x = Q::new(Z::one(), Z::from(k));
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut sum = Q::zero();
    let mut lo = Q::zero();
    let mut hi = Q::zero();
    for i in 0..terms {
        if i % 2 == 0 {
            sum += &term / Q::from_integer(Z::from(2 * i as i64 + 1));
            hi = sum.clone();
        } else {
            sum -= &term / Q::from_integer(Z::from(2 * i as i64 + 1));
            lo = sum.clone();
        }
        term = &term * &x2;
    }
    (lo, hi)
}

/// Certified enclosure of pi.
pub fn pi_interval(bits: u32) -> (Q, Q) {
    // pi = 16 atan(1/5) - 4 atan(1/239); terms chosen generously for bits
    let terms = (bits as usize) / 4 + 8;
    let (a5l, a5h) = atan_inv(5, terms);
    let (a239l, a239h) = atan_inv(239, terms);
    let sixteen = Q::from_integer(Z::from(16));
    let four = Q::from_integer(Z::from(4));
    let lo = &sixteen * &a5l - &four * &a239h;
    let hi = &sixteen * &a5h - &four * &a239l;
    (round_down(&lo, bits + 4), round_up(&hi, bits + 4))
}

/// cos on a small rational interval argument via Taylor at the midpoint.
fn cos_enclosure(xlo: &Q, xhi: &Q, bits: u32) -> (Q, Q) {
    let two = Q::from_integer(Z::from(2));
    let mid = round_down(&((xlo + xhi) / &two), bits + 8);
    let half_width = {
        let w = xhi - xlo;
        let d_lo = (&mid - xlo).abs();
        let d_hi = (xhi - &mid).abs();
        if d_lo > d_hi {
            d_lo
        } else {
            std::cmp::max(d_hi, w / &two)
        }
    };
    // Taylor sum of cos at mid until the term drops below 2^-(bits+4).
    let eps = pow2(bits + 4);
    let x2 = &mid * &mid;
    let mut term = Q::one();
    let mut sum = Q::one();
    let mut k: i64 = 0;
    let rem;
    loop {
        k += 2;
        term = &term * &x2 / Q::from_integer(Z::from(k * (k - 1)));
        let signed = if (k / 2) % 2 == 1 { -term.clone() } else { term.clone() };
        sum += signed;
        // remainder bound: next term magnitude once terms are decreasing
        let next = &term * &x2 / Q::from_integer(Z::from((k + 1) * (k + 2)));
        if next < eps && next < term {
            rem = next;
            break;
        }
        if k > 400 {
            rem = next;
            break;
        }
    }
    // |cos'(x)| <= 1 gives the padding for the interval argument
    let pad = &rem + &half_width;
    (
        round_down(&(&sum - &pad), bits + 4),
        round_up(&(&sum + &pad), bits + 4),
    )
}

/// Certified enclosure of 2*cos(2*pi*t) for t in [0, 1/2].
pub fn two_cos_2pi(t: &Q, bits: u32) -> (Q, Q) {
    debug_assert!(!t.is_negative() && t <= &Q::new(Z::one(), Z::from(2u8)));
    let (pl, ph) = pi_interval(bits + 8);
    let two = Q::from_integer(Z::from(2));
    let xlo = &two * &pl * t;
    let xhi = &two * &ph * t;
    let (cl, ch) = cos_enclosure(&xlo, &xhi, bits + 2);
    (&two * &cl, &two * &ch)
}

/// Exact value of 2cos(2*pi*t) when t (reduced, in (0,1/2]) is one of the
/// rational-cosine points.
pub fn two_cos_exact(t: &Q) -> Option<Q> {
    let half = Q::new(Z::one(), Z::from(2u8));
    let third = Q::new(Z::one(), Z::from(3u8));
    let quarter = Q::new(Z::one(), Z::from(4u8));
    let sixth = Q::new(Z::one(), Z::from(6u8));
    if t == &half {
        Some(Q::from_integer(Z::from(-2)))
    } else if t == &third {
        Some(-Q::one())
    } else if t == &quarter {
        Some(Q::zero())
    } else if t == &sixth {
        Some(Q::one())
    } else if t.is_zero() {
        Some(Q::from_integer(Z::from(2)))
    } else {
        None
    }
}

/// Compares 2cos(2*pi*t) against the rational `target` with certified
/// refinement. `t` must lie in [0, 1/2]. Errors at the precision cap only
/// when the two are provably not separable below it (which cannot happen
/// for distinct values).
pub fn cmp_two_cos(t: &Q, target: &Q, cap_bits: u32) -> Result<Ordering> {
    if let Some(exact) = two_cos_exact(t) {
        return Ok(exact.cmp(target));
    }
    let mut bits = 32;
    loop {
        let (lo, hi) = two_cos_2pi(t, bits);
        if &lo > target {
            return Ok(Ordering::Greater);
        }
        if &hi < target {
            return Ok(Ordering::Less);
        }
        if bits >= cap_bits {
            return Err(Error::PrecisionCap(cap_bits));
        }
        bits = (bits * 2).min(cap_bits);
    }
}
