//! Univariate polynomial arithmetic over the rationals, Sturm sequences and
//! real-root isolation. Degrees here are small (bounded by Seifert matrix
//! sizes), so dense representation and naive algorithms are the right tool.

use crate::ratio::{simplest_in, Q, Z};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Dense polynomial, coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn from_int_slice(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Q::from_integer(Z::from(x))).collect())
    }

    pub fn from_z(c: &[Z]) -> Self {
        Poly::new(c.iter().cloned().map(Q::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(Z::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division, returns (quotient, remainder).
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let lead = div.leading();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                let delta = &c * b;
                rem[idx] -= delta;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; returns None if the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&lead.recip())
    }

    /// Squarefree part (monic).
    pub fn squarefree(&self) -> Poly {
        if self.is_zero() || self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        let sf = self.div_exact(&g).expect("gcd divides");
        let lead = sf.leading();
        sf.scale(&lead.recip())
    }

    /// Clears denominators and makes content 1, positive leading coefficient.
    pub fn primitive_int(&self) -> Vec<Z> {
        if self.is_zero() {
            return vec![];
        }
        let mut den = Z::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut ints: Vec<Z> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = Z::zero();
        for v in &ints {
            g = num_integer::gcd(g, v.clone());
        }
        if !g.is_zero() {
            for v in &mut ints {
                *v /= &g;
            }
        }
        if ints.last().map_or(false, |c| c.is_negative()) {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
        ints
    }
}

/// Sturm chain of a squarefree polynomial.
pub struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    pub fn new(p: &Poly) -> Sturm {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            chain.push(r.neg());
        }
        chain.pop();
        Sturm { chain }
    }

    fn variations(&self, x: &Q) -> usize {
        let mut count = 0;
        let mut last: Option<Ordering> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let s = if v.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    pub fn count_roots(&self, lo: &Q, hi: &Q) -> usize {
        self.variations(lo) - self.variations(hi)
    }
}

/// Isolating intervals (lo, hi) for all real roots of a squarefree `p` in the
/// open interval (a, b). Neither returned endpoint is a root. Intervals are
/// sorted ascending and pairwise disjoint.
pub fn isolate_roots(p: &Poly, a: &Q, b: &Q) -> Vec<(Q, Q)> {
    assert!(a < b);
    let sturm = Sturm::new(p);
    // nudge endpoints off roots
    let mut lo = a.clone();
    let mut hi = b.clone();
    let mut step = (b - a) / Q::from_integer(Z::from(1024));
    while p.eval(&lo).is_zero() {
        lo += step.clone();
        step /= Q::from_integer(Z::from(2));
    }
    let mut step = (b - a) / Q::from_integer(Z::from(1024));
    while p.eval(&hi).is_zero() {
        hi -= step.clone();
        step /= Q::from_integer(Z::from(2));
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((l, h)) = stack.pop() {
        let n = sturm.count_roots(&l, &h);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((l, h));
            continue;
        }
        let mut mid = (&l + &h) / Q::from_integer(Z::from(2));
        let mut step = (&h - &l) / Q::from_integer(Z::from(1024));
        while p.eval(&mid).is_zero() {
            mid += step.clone();
            step /= Q::from_integer(Z::from(2));
        }
        stack.push((l, mid.clone()));
        stack.push((mid, h));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Shrinks an isolating interval of a squarefree polynomial root below the
/// given width by bisection. Endpoints stay off the root.
pub fn refine_root(p: &Poly, lo: &mut Q, hi: &mut Q, width: &Q) {
    let sign_lo = p.eval(lo).is_positive();
    debug_assert!(!p.eval(lo).is_zero() && !p.eval(hi).is_zero());
    while &(&*hi - &*lo) > width {
        let mid = (&*lo + &*hi) / Q::from_integer(Z::from(2));
        let v = p.eval(&mid);
        if v.is_zero() {
            // the root itself is rational: pick non-root endpoints around it
            let pad = width / Q::from_integer(Z::from(4));
            let l = if &(&mid - &pad) > lo { &mid - &pad } else { lo.clone() };
            let h = if &(&mid + &pad) < hi { &mid + &pad } else { hi.clone() };
            *lo = simplest_in(&l, &mid);
            *hi = simplest_in(&mid, &h);
            return;
        }
        if v.is_positive() == sign_lo {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }
}

/// n-th cyclotomic polynomial (integer coefficients, low degree first).
pub fn cyclotomic(n: u64) -> Poly {
    // x^n - 1 divided by the cyclotomics of proper divisors
    let mut num = vec![Q::zero(); n as usize + 1];
    num[0] = -Q::one();
    num[n as usize] = Q::one();
    let mut p = Poly::new(num);
    for d in 1..n {
        if n % d == 0 {
            let c = cyclotomic(d);
            p = p.div_exact(&c).expect("cyclotomic divides");
        }
    }
    p
}

/// Euler's totient.
pub fn phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Dickson polynomial D_k with D_k(t + 1/t) = t^k + t^(-k).
pub fn dickson(k: usize) -> Poly {
    let mut d0 = Poly::from_int_slice(&[2]);
    let mut d1 = Poly::from_int_slice(&[0, 1]);
    if k == 0 {
        return d0;
    }
    let x = Poly::from_int_slice(&[0, 1]);
    for _ in 1..k {
        let next = x.mul(&d1).sub(&d0);
        d0 = d1;
        d1 = next;
    }
    d1
}

/// For a palindromic polynomial A of even degree 2g, returns P with
/// A(t)/t^g = P(t + 1/t).
pub fn symmetrize(a: &Poly) -> Poly {
    let deg = a.degree();
    assert!(deg % 2 == 0, "palindromic polynomial must have even degree");
    let g = deg / 2;
    for i in 0..=deg {
        assert_eq!(a.coeffs[i], a.coeffs[deg - i], "polynomial is not palindromic");
    }
    let mut p = Poly::new(vec![a.coeffs[g].clone()]);
    for k in 1..=g {
        p = p.add(&dickson(k).scale(&a.coeffs[g + k]));
    }
    p
}
