//! Tristram-Levine signature step functions and the linear functionals they
//! induce on spans of knots.
//!
//! For a rational parameter t the Hermitian pencil
//! M(t) = (1-w)V + (1-conj(w))V^T, w = e^{2 pi i t}, rewrites with
//! z = 2cos(2 pi t) as M = (1 - z/2)(V+V^T) - u (V-V^T) where u = i sin(2 pi t)
//! satisfies u^2 = -(4-z^2)/4. For rational z all entries live in the
//! quadratic field Q(u), so the signature is computed by exact congruence
//! diagonalization -- no floating point anywhere. Jump locations are the
//! unit-circle Alexander roots: roots of unity give exact rational t, the
//! rest are isolated as roots of the symmetrized Alexander polynomial in the
//! z-line and carried around as refinable intervals.

use crate::knot::{alexander_poly, seifert_matrix, torus, BasisKnot, KnotExpr, SeifertMatrix};
use crate::poly::{cyclotomic, isolate_roots, phi, refine_root, symmetrize, Poly, Sturm};
use crate::ratio::{format_q, q, qi, simplest_in, Q, Z};
use crate::trig::{cmp_two_cos, two_cos_2pi, two_cos_exact};
use crate::{Error, Result, DEFAULT_PRECISION_BITS};
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Location of a signature jump, a parameter in (0, 1/2].
#[derive(Clone, Debug, PartialEq)]
pub enum JumpLocation {
    /// Jump at a rational parameter (the Alexander root is a root of unity).
    Exact(Q),
    /// Jump at an irrational parameter: `poly` has exactly one root z* in
    /// (z_lo, z_hi) under the substitution z = 2cos(2 pi t), and (t_lo, t_hi)
    /// is a rational enclosure of the parameter itself.
    Isolated { poly: Poly, z_lo: Q, z_hi: Q, t_lo: Q, t_hi: Q },
}

fn min_z_width() -> Q {
    Q::new(Z::one(), Z::from(2u8).pow(DEFAULT_PRECISION_BITS))
}

fn shrink(poly: &Poly, zl: &mut Q, zh: &mut Q) -> Result<()> {
    let w = &*zh - &*zl;
    if w < min_z_width() {
        return Err(Error::PrecisionCap(DEFAULT_PRECISION_BITS));
    }
    refine_root(poly, zl, zh, &(w / qi(4)));
    Ok(())
}

impl JumpLocation {
    /// `a/b` for exact jumps, `[a/b, c/d]` for isolated ones.
    pub fn display(&self) -> String {
        match self {
            JumpLocation::Exact(t) => format_q(t),
            JumpLocation::Isolated { t_lo, t_hi, .. } => {
                format!("[{}, {}]", format_q(t_lo), format_q(t_hi))
            }
        }
    }

    /// Ordering of this jump's parameter against a rational t. Certified:
    /// errs only at the precision cap.
    pub fn cmp_t(&self, t: &Q) -> Result<Ordering> {
        match self {
            JumpLocation::Exact(te) => Ok(te.cmp(t)),
            JumpLocation::Isolated { poly, z_lo, z_hi, t_lo, t_hi } => {
                if t <= t_lo {
                    return Ok(Ordering::Greater);
                }
                if t >= t_hi {
                    return Ok(Ordering::Less);
                }
                // z = 2cos(2 pi t) is strictly decreasing on (0, 1/2]
                let mut zl = z_lo.clone();
                let mut zh = z_hi.clone();
                loop {
                    if cmp_two_cos(t, &zh, DEFAULT_PRECISION_BITS)? == Ordering::Greater {
                        return Ok(Ordering::Greater);
                    }
                    if cmp_two_cos(t, &zl, DEFAULT_PRECISION_BITS)? == Ordering::Less {
                        return Ok(Ordering::Less);
                    }
                    shrink(poly, &mut zl, &mut zh)?;
                }
            }
        }
    }
}

/// Certified ordering of two jump locations (equality is possible when two
/// knots share an Alexander factor).
fn cmp_jumps(a: &JumpLocation, b: &JumpLocation) -> Result<Ordering> {
    use JumpLocation::*;
    match (a, b) {
        (Exact(x), Exact(y)) => Ok(x.cmp(y)),
        (Exact(x), Isolated { .. }) => Ok(b.cmp_t(x)?.reverse()),
        (Isolated { .. }, Exact(y)) => a.cmp_t(y),
        (
            Isolated { poly: pa, z_lo: al0, z_hi: ah0, .. },
            Isolated { poly: pb, z_lo: bl0, z_hi: bh0, .. },
        ) => {
            let (mut al, mut ah) = (al0.clone(), ah0.clone());
            let (mut bl, mut bh) = (bl0.clone(), bh0.clone());
            let g = pa.gcd(pb);
            loop {
                // larger z means smaller t
                if ah < bl {
                    return Ok(Ordering::Greater);
                }
                if bh < al {
                    return Ok(Ordering::Less);
                }
                if g.degree() >= 1 {
                    let lo = if al > bl { al.clone() } else { bl.clone() };
                    let hi = if ah < bh { ah.clone() } else { bh.clone() };
                    if lo < hi && Sturm::new(&g).count_roots(&lo, &hi) > 0 {
                        return Ok(Ordering::Equal);
                    }
                }
                if &ah - &al >= &bh - &bl {
                    shrink(pa, &mut al, &mut ah)?;
                } else {
                    shrink(pb, &mut bl, &mut bh)?;
                }
            }
        }
    }
}

/// Signature step function on (0, 1/2], extended to (0,1) by the symmetry
/// sigma_t = sigma_{1-t}. Value is 0 near t = 0; each jump adds an even delta.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct StepFunction {
    jumps: Vec<(JumpLocation, i64)>,
}

impl StepFunction {
    pub fn jumps(&self) -> &[(JumpLocation, i64)] {
        &self.jumps
    }

    /// sigma'_t, the two-sided average of the step value, for t in (0, 1/2].
    pub fn eval_prime(&self, t: &Q) -> Result<Q> {
        let mut acc = Q::zero();
        for (loc, d) in &self.jumps {
            match loc.cmp_t(t)? {
                Ordering::Less => acc += qi(*d),
                Ordering::Equal => acc += Q::new(Z::from(*d), Z::from(2)),
                Ordering::Greater => break,
            }
        }
        Ok(acc)
    }

    /// (location, delta) pairs with locations rendered as exact rationals or
    /// enclosing intervals.
    pub fn serialized(&self) -> Vec<(String, i64)> {
        self.jumps.iter().map(|(loc, d)| (loc.display(), *d)).collect()
    }
}

/// Closed-form step function of the (p,q) torus knot: jumps at
/// (i/p + j/q) mod 1 within (0, 1/2], delta -2 when i/p + j/q > 1 and +2
/// when < 1 (positive torus knots have non-positive signature).
pub fn torus_jumps(p: i64, q: i64) -> Result<StepFunction> {
    let (p, q) = match torus(p, q)? {
        BasisKnot::Torus { p, q } => (p as i64, q as i64),
        _ => unreachable!(),
    };
    let half = Q::new(Z::one(), Z::from(2));
    let mut acc: BTreeMap<Q, i64> = BTreeMap::new();
    for i in 1..p {
        for j in 1..q {
            let x = Q::new(Z::from(i), Z::from(p)) + Q::new(Z::from(j), Z::from(q));
            let (t, d) = if x > Q::one() { (x - Q::one(), -2) } else { (x, 2) };
            if t <= half {
                *acc.entry(t).or_insert(0) += d;
            }
        }
    }
    let jumps = acc
        .into_iter()
        .filter(|(_, d)| *d != 0)
        .map(|(t, d)| (JumpLocation::Exact(t), d))
        .collect();
    Ok(StepFunction { jumps })
}

// ---- exact Hermitian signature over Q(u), u^2 = -r ----

#[derive(Clone)]
struct Cq {
    re: Q,
    im: Q,
}

impl Cq {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn conj(&self) -> Cq {
        Cq { re: self.re.clone(), im: -self.im.clone() }
    }

    fn mul(&self, o: &Cq, r: &Q) -> Cq {
        Cq {
            re: &self.re * &o.re - r * &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn add(&self, o: &Cq) -> Cq {
        Cq { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Cq) -> Cq {
        Cq { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn div_q(&self, d: &Q) -> Cq {
        Cq { re: &self.re / d, im: &self.im / d }
    }
}

/// Signature and nullity of a Hermitian matrix over Q(u), u^2 = -r (r > 0),
/// by congruence diagonalization. Diagonal entries are fixed by conjugation,
/// hence rational, so pivot signs are exact.
fn hermitian_signature(mut a: Vec<Vec<Cq>>, r: &Q) -> (i64, usize) {
    let n = a.len();
    let mut sig = 0i64;
    let mut zeros = 0usize;
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(rr) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, rr);
                for row in a.iter_mut() {
                    row.swap(k, rr);
                }
            } else if let Some((rr, cc)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // all remaining diagonals vanish: push 2|e|^2 onto one
                let e = a[rr][cc].clone();
                for j in 0..n {
                    let v = e.mul(&a[cc][j], r);
                    a[rr][j] = a[rr][j].add(&v);
                }
                let ec = e.conj();
                for i in 0..n {
                    let v = a[i][cc].mul(&ec, r);
                    a[i][rr] = a[i][rr].add(&v);
                }
                if rr != k {
                    a.swap(k, rr);
                    for row in a.iter_mut() {
                        row.swap(k, rr);
                    }
                }
            } else {
                zeros += n - k;
                break;
            }
        }
        debug_assert!(a[k][k].im.is_zero());
        let d = a[k][k].re.clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].div_q(&d);
            for j in k..n {
                let v = f.mul(&a[k][j], r);
                a[i][j] = a[i][j].sub(&v);
            }
            let fc = f.conj();
            for jr in k..n {
                let v = a[jr][k].mul(&fc, r);
                a[jr][i] = a[jr][i].sub(&v);
            }
        }
        if d.is_positive() {
            sig += 1;
        } else {
            sig -= 1;
        }
        k += 1;
    }
    (sig, zeros)
}

/// sigma at the parameter with 2cos(2 pi t) = z, for rational z in (-2, 2).
fn sigma_at_z(v: &SeifertMatrix, z: &Q) -> i64 {
    let n = v.size();
    let alpha = Q::one() - z / qi(2);
    let r = (qi(4) - z * z) / qi(4);
    let e = v.entries();
    let m: Vec<Vec<Cq>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Cq {
                    re: &alpha * Q::from_integer(&e[i][j] + &e[j][i]),
                    im: -Q::from_integer(&e[i][j] - &e[j][i]),
                })
                .collect()
        })
        .collect();
    hermitian_signature(m, &r).0
}

/// Exact signatures at a batch of rational z samples. With the `parallel`
/// feature the samples are evaluated with rayon; results are bit-identical
/// either way.
pub fn sigma_samples(v: &SeifertMatrix, zs: &[Q]) -> Vec<i64> {
    #[cfg(feature = "parallel")]
    {
        zs.par_iter().map(|z| sigma_at_z(v, z)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        zs.iter().map(|z| sigma_at_z(v, z)).collect()
    }
}

// ---- step function construction from a Seifert matrix ----

enum RawKind {
    ExactT(Q),
    Algebraic(Poly),
}

struct Raw {
    kind: RawKind,
    z_lo: Q,
    z_hi: Q,
    bits: u32,
}

impl Raw {
    fn exact(t: Q) -> Raw {
        match two_cos_exact(&t) {
            Some(z) => Raw { kind: RawKind::ExactT(t), z_lo: z.clone(), z_hi: z, bits: 0 },
            None => {
                let (zl, zh) = two_cos_2pi(&t, 32);
                Raw { kind: RawKind::ExactT(t), z_lo: zl, z_hi: zh, bits: 32 }
            }
        }
    }

    fn is_point(&self) -> bool {
        self.z_lo == self.z_hi
    }

    fn width(&self) -> Q {
        &self.z_hi - &self.z_lo
    }

    fn refine(&mut self) -> Result<()> {
        match &self.kind {
            RawKind::ExactT(t) => {
                if self.is_point() || self.bits >= DEFAULT_PRECISION_BITS {
                    return Err(Error::PrecisionCap(DEFAULT_PRECISION_BITS));
                }
                self.bits = (self.bits * 2).min(DEFAULT_PRECISION_BITS);
                let (zl, zh) = two_cos_2pi(t, self.bits);
                self.z_lo = zl;
                self.z_hi = zh;
                Ok(())
            }
            RawKind::Algebraic(p) => {
                let w = &self.z_hi - &self.z_lo;
                if w < min_z_width() {
                    return Err(Error::PrecisionCap(DEFAULT_PRECISION_BITS));
                }
                let target = w / qi(4);
                refine_root(p, &mut self.z_lo, &mut self.z_hi, &target);
                Ok(())
            }
        }
    }
}

/// Rational enclosure of the parameter t with 2cos(2 pi t) equal to the root
/// of `p` isolated by (z_lo, z_hi).
fn t_enclosure(p: &Poly, z_lo: &Q, z_hi: &Q) -> Result<(Q, Q)> {
    let mut zl = z_lo.clone();
    let mut zh = z_hi.clone();
    let mut lo = Q::zero();
    let mut hi = q(1, 2);
    let target = q(1, 4096);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / qi(2);
        if cmp_two_cos(&mid, &zh, DEFAULT_PRECISION_BITS)? == Ordering::Greater {
            lo = mid;
        } else if cmp_two_cos(&mid, &zl, DEFAULT_PRECISION_BITS)? == Ordering::Less {
            hi = mid;
        } else {
            shrink(p, &mut zl, &mut zh)?;
        }
    }
    Ok((lo, hi))
}

/// Step function of the knot with Seifert matrix `v`.
///
/// Jump candidates are the unit-circle Alexander roots: cyclotomic factors
/// give exact rational parameters, the remaining (palindromic) factor is
/// pushed down to the z-line and its roots in (-2, 2) are isolated with Sturm
/// sequences. Interval values are exact Hermitian signatures at rational
/// sample points in each gap; candidates whose delta is zero are dropped.
pub fn stepfun_from_seifert(v: &SeifertMatrix) -> Result<StepFunction> {
    let mut rem = alexander_poly(v).squarefree();
    let deg = rem.degree() as u64;
    let mut raws: Vec<Raw> = Vec::new();
    if deg >= 1 {
        // phi(n) >= sqrt(n/2), so phi(n) <= deg forces n <= 2 deg^2
        for n in 3..=(2 * deg * deg + 2) {
            if phi(n) > deg {
                continue;
            }
            if let Some(quo) = rem.div_exact(&cyclotomic(n)) {
                rem = quo;
                for k in 1..n {
                    if 2 * k < n && num_integer::gcd(k, n) == 1 {
                        raws.push(Raw::exact(Q::new(Z::from(k), Z::from(n))));
                    }
                }
            }
        }
    }
    if rem.degree() >= 1 {
        let d = rem.degree();
        let pal = d % 2 == 0 && (0..=d).all(|i| rem.coeffs[i] == rem.coeffs[d - i]);
        if !pal {
            return Err(Error::Invalid(
                "non-cyclotomic Alexander factor is not palindromic".into(),
            ));
        }
        let pz = symmetrize(&rem).squarefree();
        for (zl, zh) in isolate_roots(&pz, &qi(-2), &qi(2)) {
            raws.push(Raw { kind: RawKind::Algebraic(pz.clone()), z_lo: zl, z_hi: zh, bits: 0 });
        }
    }
    if raws.is_empty() {
        return Ok(StepFunction::default());
    }

    // refine enclosures until all lie strictly inside (-2, 2) and are
    // pairwise strictly separated; sort by decreasing z = increasing t
    let two = qi(2);
    let minus_two = qi(-2);
    loop {
        raws.sort_by(|a, b| b.z_lo.cmp(&a.z_lo));
        let mut refine_idx = None;
        for (i, rw) in raws.iter().enumerate() {
            if rw.z_hi >= two || rw.z_lo <= minus_two {
                refine_idx = Some(i);
                break;
            }
        }
        if refine_idx.is_none() {
            for i in 1..raws.len() {
                if raws[i].z_hi >= raws[i - 1].z_lo {
                    let pick = if raws[i - 1].is_point()
                        || (!raws[i].is_point() && raws[i].width() >= raws[i - 1].width())
                    {
                        i
                    } else {
                        i - 1
                    };
                    refine_idx = Some(pick);
                    break;
                }
            }
        }
        match refine_idx {
            Some(i) => raws[i].refine()?,
            None => break,
        }
    }

    // one rational z sample in each gap, ends included
    let mut samples = Vec::with_capacity(raws.len() + 1);
    samples.push(simplest_in(&raws[0].z_hi, &two));
    for i in 1..raws.len() {
        samples.push(simplest_in(&raws[i].z_hi, &raws[i - 1].z_lo));
    }
    samples.push(simplest_in(&minus_two, &raws.last().unwrap().z_lo));
    let vals = sigma_samples(v, &samples);
    if vals[0] != 0 {
        return Err(Error::Invalid(format!(
            "signature {} below the first jump candidate; expected 0",
            vals[0]
        )));
    }

    let mut jumps = Vec::new();
    for (i, rw) in raws.into_iter().enumerate() {
        let d = vals[i + 1] - vals[i];
        if d == 0 {
            continue;
        }
        let loc = match rw.kind {
            RawKind::ExactT(t) => JumpLocation::Exact(t),
            RawKind::Algebraic(p) => {
                let (t_lo, t_hi) = t_enclosure(&p, &rw.z_lo, &rw.z_hi)?;
                JumpLocation::Isolated { poly: p, z_lo: rw.z_lo, z_hi: rw.z_hi, t_lo, t_hi }
            }
        };
        jumps.push((loc, d));
    }
    Ok(StepFunction { jumps })
}

// ---- per-knot step function cache ----

static STEP_CACHE: Lazy<Mutex<HashMap<BasisKnot, Arc<StepFunction>>>> =
    Lazy::new(Default::default);

/// Step function of a basis knot (cached): closed form for torus knots,
/// Seifert-matrix computation for catalog knots.
pub fn step(k: &BasisKnot) -> Result<Arc<StepFunction>> {
    if let Some(sf) = STEP_CACHE.lock().unwrap().get(k) {
        return Ok(sf.clone());
    }
    let sf = match k {
        BasisKnot::Torus { p, q } => torus_jumps(*p as i64, *q as i64)?,
        BasisKnot::Catalog { .. } => stepfun_from_seifert(&seifert_matrix(k))?,
    };
    let arc = Arc::new(sf);
    let mut cache = STEP_CACHE.lock().unwrap();
    Ok(cache.entry(k.clone()).or_insert(arc).clone())
}

/// sigma'_t of a formal combination: coefficient-weighted sum of the basis
/// knots' averaged signatures, with sigma_t = sigma_{1-t} symmetry and
/// periodicity applied first.
pub fn evaluate(expr: &KnotExpr, t: &Q) -> Result<Q> {
    let mut tt = t - t.floor();
    if tt.is_zero() {
        return Ok(Q::zero());
    }
    if tt > q(1, 2) {
        tt = Q::one() - tt;
    }
    let mut acc = Q::zero();
    for (k, c) in expr.terms() {
        acc += c * step(k)?.eval_prime(&tt)?;
    }
    Ok(acc)
}

/// Jumps of several step functions merged into parameter order; coincident
/// locations are grouped. Each group lists (knot index, delta).
fn merge_jumps(per: &[Arc<StepFunction>]) -> Result<Vec<Vec<(usize, i64)>>> {
    let mut groups: Vec<(JumpLocation, Vec<(usize, i64)>)> = Vec::new();
    for (idx, sf) in per.iter().enumerate() {
        for (loc, d) in sf.jumps() {
            let mut insert_at = groups.len();
            let mut merged = false;
            for gi in 0..groups.len() {
                match cmp_jumps(loc, &groups[gi].0)? {
                    Ordering::Less => {
                        insert_at = gi;
                        break;
                    }
                    Ordering::Equal => {
                        groups[gi].1.push((idx, *d));
                        merged = true;
                        break;
                    }
                    Ordering::Greater => {}
                }
            }
            if !merged {
                groups.insert(insert_at, (loc.clone(), vec![(idx, *d)]));
            }
        }
    }
    Ok(groups.into_iter().map(|g| g.1).collect())
}

/// Maximum of (1/2)|sum_i x_i sigma_t(K_i)| over the maximal constant
/// intervals of the combined step function -- the signature lower bound for
/// the stable genus.
pub fn max_half_abs(expr: &KnotExpr) -> Result<Q> {
    let basis = expr.support();
    if basis.is_empty() {
        return Ok(Q::zero());
    }
    let coeffs: Vec<Q> = basis.iter().map(|k| expr.coeff(k)).collect();
    let mut per = Vec::new();
    for k in &basis {
        per.push(step(k)?);
    }
    let groups = merge_jumps(&per)?;
    let mut vals = vec![0i64; basis.len()];
    let mut best = Q::zero();
    for g in groups {
        for (i, d) in g {
            vals[i] += d;
        }
        let mut v = Q::zero();
        for (val, c) in vals.iter().zip(&coeffs) {
            v += c * qi(*val);
        }
        let h = v.abs() / qi(2);
        if h > best {
            best = h;
        }
    }
    Ok(best)
}

/// Linear functional on a knot basis: half-signature coefficients sampled on
/// one maximal constant interval (or a tau/s row).
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub label: String,
    pub coefficients: Vec<Q>,
}

/// One functional per maximal open interval of the union of the basis jump
/// sets in (0, 1/2], coefficients (1/2) sigma_t(K_i) sampled in the interval.
/// The zero vector below the first jump is omitted; duplicates up to overall
/// sign are removed (representative: first nonzero coefficient positive);
/// output is ordered by interval left endpoint.
pub fn interval_functionals(basis: &[BasisKnot]) -> Result<Vec<Functional>> {
    if basis.is_empty() {
        return Err(Error::Invalid("interval functionals need a nonempty basis".into()));
    }
    let mut per = Vec::new();
    for k in basis {
        per.push(step(k)?);
    }
    let groups = merge_jumps(&per)?;
    let mut vals = vec![0i64; basis.len()];
    let mut seen: Vec<Vec<Q>> = Vec::new();
    let mut out = Vec::new();
    for g in groups {
        for (i, d) in g {
            vals[i] += d;
        }
        let mut v: Vec<Q> = vals.iter().map(|x| Q::new(Z::from(*x), Z::from(2))).collect();
        match v.iter().find(|c| !c.is_zero()) {
            Some(first) if first.is_negative() => {
                for c in v.iter_mut() {
                    *c = -c.clone();
                }
            }
            Some(_) => {}
            None => continue,
        }
        if seen.contains(&v) {
            continue;
        }
        seen.push(v.clone());
        out.push(Functional { label: format!("interval {}", out.len() + 1), coefficients: v });
    }
    Ok(out)
}

/// Ozsvath-Szabo tau of the positive (p,q) torus knot: (p-1)(q-1)/2.
pub fn tau_torus(p: i64, q: i64) -> Result<i64> {
    torus(p, q)?;
    Ok((p - 1) * (q - 1) / 2)
}

/// Rasmussen s of the positive (p,q) torus knot: 2 tau.
pub fn s_torus(p: i64, q: i64) -> Result<i64> {
    Ok(2 * tau_torus(p, q)?)
}

/// (sigma'_{1/7}, sigma'_{2/7}, sigma'_{3/7}) of a combination; by symmetry
/// sigma'_{4/7} equals the last component.
pub fn sigma_sevenths(j: &KnotExpr) -> Result<(Q, Q, Q)> {
    Ok((evaluate(j, &q(1, 7))?, evaluate(j, &q(2, 7))?, evaluate(j, &q(3, 7))?))
}
