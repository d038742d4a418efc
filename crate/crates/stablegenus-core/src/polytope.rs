//! Exact convex geometry for centrally symmetric polytopes: halfspace
//! intersections, vertex enumeration by d-subset solving, containment,
//! hull reduction, and the Minkowski gauge via exact LP.

use crate::linalg::{rank, solve};
use crate::lp::{self, Lp};
use crate::ratio::{format_q, Q, Z};
use crate::signatures::Functional;
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Symmetric halfspace pair {x : |normal.x| <= bound}, stored with a
/// primitive integer normal whose first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    normal: Vec<Z>,
    bound: Q,
}

impl Halfspace {
    pub fn new(normal: &[Q], bound: Q) -> Result<Halfspace> {
        if normal.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("halfspace normal must be nonzero".into()));
        }
        if !bound.is_positive() {
            return Err(Error::Invalid("halfspace bound must be positive".into()));
        }
        let mut den = Z::from(1);
        for c in normal {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut ints: Vec<Z> = normal.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut g = Z::zero();
        for v in &ints {
            g = num_integer::gcd(g, v.clone());
        }
        let mut scale = Q::new(den, g.clone());
        for v in &mut ints {
            *v /= &g;
        }
        if ints.iter().find(|v| !v.is_zero()).map_or(false, |v| v.is_negative()) {
            for v in &mut ints {
                *v = -v.clone();
            }
            scale = -scale;
        }
        // |n.x| <= b is invariant under scaling n by |s| when b scales along
        Ok(Halfspace { normal: ints, bound: bound * scale.abs() })
    }

    pub fn normal(&self) -> &[Z] {
        &self.normal
    }

    pub fn bound(&self) -> &Q {
        &self.bound
    }

    fn dot(&self, x: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (n, v) in self.normal.iter().zip(x) {
            acc += Q::from_integer(n.clone()) * v;
        }
        acc
    }
}

/// Intersection of symmetric halfspaces in dimension d.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolytope {
    pub dimension: usize,
    halfspaces: Vec<Halfspace>,
}

/// Classification of a point against an H-polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Interior,
    Boundary,
    Outside,
}

impl HPolytope {
    pub fn new(dimension: usize, halfspaces: Vec<Halfspace>) -> Result<HPolytope> {
        for h in &halfspaces {
            if h.normal.len() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, got: h.normal.len() });
            }
        }
        Ok(HPolytope { dimension, halfspaces })
    }

    /// Builds the body {x : |f(x)| <= bound for all functionals}.
    pub fn from_functionals(fs: &[Functional], bound: Q) -> Result<HPolytope> {
        if fs.is_empty() {
            return Err(Error::Invalid("no functionals given".into()));
        }
        let d = fs[0].coefficients.len();
        let mut hs = Vec::new();
        for f in fs {
            if f.coefficients.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: f.coefficients.len() });
            }
            if f.coefficients.iter().all(|c| c.is_zero()) {
                continue;
            }
            hs.push(Halfspace::new(&f.coefficients, bound.clone())?);
        }
        HPolytope::new(d, hs)
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// True when the normals span the ambient space; for a symmetric body
    /// this is exactly boundedness.
    pub fn is_bounded(&self) -> bool {
        let rows: Vec<Vec<Q>> = self
            .halfspaces
            .iter()
            .map(|h| h.normal.iter().map(|n| Q::from_integer(n.clone())).collect())
            .collect();
        rank(&rows) == self.dimension
    }

    pub fn contains(&self, x: &[Q]) -> Result<Containment> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, got: x.len() });
        }
        let mut on_boundary = false;
        for h in &self.halfspaces {
            let v = h.dot(x).abs();
            if v > h.bound {
                return Ok(Containment::Outside);
            }
            if v == h.bound {
                on_boundary = true;
            }
        }
        Ok(if on_boundary { Containment::Boundary } else { Containment::Interior })
    }

    /// True iff x lies in the body and d linearly independent constraints
    /// are active there.
    pub fn is_vertex(&self, x: &[Q]) -> Result<bool> {
        if self.contains(x)? == Containment::Outside {
            return Ok(false);
        }
        let active: Vec<Vec<Q>> = self
            .halfspaces
            .iter()
            .filter(|h| h.dot(x).abs() == h.bound)
            .map(|h| h.normal.iter().map(|n| Q::from_integer(n.clone())).collect())
            .collect();
        Ok(rank(&active) == self.dimension)
    }

    fn candidate(&self, subset: &[usize], signs: u32) -> Option<Vec<Q>> {
        let d = self.dimension;
        let mut a = Vec::with_capacity(d);
        let mut b = Vec::with_capacity(d);
        for (pos, &i) in subset.iter().enumerate() {
            let h = &self.halfspaces[i];
            a.push(h.normal.iter().map(|n| Q::from_integer(n.clone())).collect::<Vec<Q>>());
            let s = if signs >> pos & 1 == 1 { -h.bound.clone() } else { h.bound.clone() };
            b.push(s);
        }
        let x = solve(&a, &b)?;
        for h in &self.halfspaces {
            if h.dot(&x).abs() > h.bound {
                return None;
            }
        }
        Some(x)
    }

    fn subsets(&self) -> Vec<Vec<usize>> {
        let n = self.halfspaces.len();
        let d = self.dimension;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == d {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, d, cur, out);
                cur.pop();
            }
        }
        rec(0, n, d, &mut cur, &mut out);
        out
    }

    fn collect_vertices(&self, subsets: &[Vec<usize>]) -> Vec<Vec<Q>> {
        let gather = |s: &Vec<usize>| -> Vec<Vec<Q>> {
            (0..1u32 << self.dimension)
                .filter_map(|signs| self.candidate(s, signs))
                .collect()
        };
        #[cfg(feature = "parallel")]
        let nested: Vec<Vec<Vec<Q>>> = subsets.par_iter().map(gather).collect();
        #[cfg(not(feature = "parallel"))]
        let nested: Vec<Vec<Vec<Q>>> = subsets.iter().map(gather).collect();
        let mut pts: Vec<Vec<Q>> = nested.into_iter().flatten().collect();
        pts.sort();
        pts.dedup();
        pts.retain(|x| self.is_vertex(x).unwrap_or(false));
        pts
    }

    /// Exact vertex enumeration. Every d-subset of constraints is solved with
    /// all sign choices; solutions inside the body that activate d
    /// independent constraints are the extreme points, sorted
    /// lexicographically.
    pub fn vertices(&self) -> Result<VPolytope> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let subsets = self.subsets();
        let pts = self.collect_vertices(&subsets);
        Ok(VPolytope { dimension: self.dimension, vertices: pts })
    }

    /// Sequential vertex enumeration regardless of the `parallel` feature
    /// (reference path for benchmarks and determinism checks).
    pub fn vertices_seq(&self) -> Result<VPolytope> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let subsets = self.subsets();
        let mut pts: Vec<Vec<Q>> = Vec::new();
        for s in &subsets {
            for signs in 0..1u32 << self.dimension {
                if let Some(x) = self.candidate(s, signs) {
                    pts.push(x);
                }
            }
        }
        pts.sort();
        pts.dedup();
        pts.retain(|x| self.is_vertex(x).unwrap_or(false));
        Ok(VPolytope { dimension: self.dimension, vertices: pts })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension,
            "halfspaces": self.halfspaces.iter().map(|h| json!({
                "normal": h.normal.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
                "bound": format_q(&h.bound),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Convex hull given by a vertex list.
#[derive(Clone, Debug, PartialEq)]
pub struct VPolytope {
    pub dimension: usize,
    vertices: Vec<Vec<Q>>,
}

impl VPolytope {
    pub fn new(dimension: usize, mut vertices: Vec<Vec<Q>>) -> Result<VPolytope> {
        for v in &vertices {
            if v.len() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, got: v.len() });
            }
        }
        vertices.sort();
        vertices.dedup();
        Ok(VPolytope { dimension, vertices })
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    /// Removes points that are convex combinations of the others.
    pub fn reduce(&self) -> VPolytope {
        let mut keep = self.vertices.clone();
        let mut i = 0;
        while i < keep.len() {
            let others: Vec<&Vec<Q>> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v)
                .collect();
            if !others.is_empty() && in_hull(&keep[i], &others) {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
        VPolytope { dimension: self.dimension, vertices: keep }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension,
            "vertices": self.vertices.iter().map(|v| {
                v.iter().map(format_q).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

fn in_hull(x: &[Q], pts: &[&Vec<Q>]) -> bool {
    // feasibility: sum a_i p_i = x, sum a_i = 1, a >= 0
    let d = x.len();
    let n = pts.len();
    let c = vec![Q::zero(); n];
    let mut a = Vec::with_capacity(d + 1);
    for row in 0..d {
        a.push(pts.iter().map(|p| p[row].clone()).collect());
    }
    a.push(vec![Q::one(); n]);
    let mut b: Vec<Q> = x.to_vec();
    b.push(Q::one());
    matches!(lp::solve(&c, &a, &b, &vec![false; n]), Lp::Optimal { .. })
}

/// Best lower bound from a functional family: max |f(x)|.
pub fn gauge_outer(x: &[Q], fs: &[Functional]) -> Q {
    let mut best = Q::zero();
    for f in fs {
        let mut v = Q::zero();
        for (c, xi) in f.coefficients.iter().zip(x) {
            v += c * xi;
        }
        let v = v.abs();
        if v > best {
            best = v;
        }
    }
    best
}

/// Convex-combination certificate for a gauge value: vertex weights plus
/// weights on cost-free lineality directions.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeCertificate {
    pub value: Q,
    pub vertex_weights: Vec<(usize, Q)>,
    pub line_weights: Vec<(usize, Q)>,
}

/// Minkowski gauge inf{lambda >= 0 : x in lambda conv(V) + span(lines)},
/// by exact LP: minimize sum of vertex weights mu_i with
/// sum mu_i v_i + sum t_j l_j = x, mu >= 0, t free. None means +infinity.
pub fn gauge_inner_cert(
    x: &[Q],
    v: &VPolytope,
    lines: &[Vec<Q>],
) -> Result<Option<GaugeCertificate>> {
    let d = v.dimension;
    if x.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: x.len() });
    }
    for l in lines {
        if l.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: l.len() });
        }
    }
    let nv = v.vertices.len();
    let nl = lines.len();
    if nv + nl == 0 {
        return Ok(if x.iter().all(|c| c.is_zero()) {
            Some(GaugeCertificate { value: Q::zero(), vertex_weights: vec![], line_weights: vec![] })
        } else {
            None
        });
    }
    let mut cost = vec![Q::zero(); nv + nl];
    for c in cost.iter_mut().take(nv) {
        *c = Q::one();
    }
    let mut a = Vec::with_capacity(d);
    for row in 0..d {
        let mut r: Vec<Q> = v.vertices.iter().map(|p| p[row].clone()).collect();
        r.extend(lines.iter().map(|l| l[row].clone()));
        a.push(r);
    }
    let mut free = vec![false; nv + nl];
    for f in free.iter_mut().skip(nv) {
        *f = true;
    }
    match lp::solve(&cost, &a, x, &free) {
        Lp::Infeasible => Ok(None),
        Lp::Unbounded => unreachable!("gauge objective is bounded below by zero"),
        Lp::Optimal { value, x: w } => {
            let vertex_weights = (0..nv)
                .filter(|&i| !w[i].is_zero())
                .map(|i| (i, w[i].clone()))
                .collect();
            let line_weights = (nv..nv + nl)
                .filter(|&i| !w[i].is_zero())
                .map(|i| (i - nv, w[i].clone()))
                .collect();
            Ok(Some(GaugeCertificate { value, vertex_weights, line_weights }))
        }
    }
}

/// Minkowski gauge of x with respect to conv(V); None encodes +infinity.
pub fn gauge_inner(x: &[Q], v: &VPolytope) -> Result<Option<Q>> {
    Ok(gauge_inner_cert(x, v, &[])?.map(|c| c.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{q, qi};

    fn hs(n: &[i64], b: Q) -> Halfspace {
        let nq: Vec<Q> = n.iter().map(|&v| qi(v)).collect();
        Halfspace::new(&nq, b).unwrap()
    }

    fn square() -> HPolytope {
        HPolytope::new(2, vec![hs(&[1, 0], qi(1)), hs(&[0, 1], qi(1))]).unwrap()
    }

    #[test]
    fn canonical_form() {
        let h = Halfspace::new(&[q(-2, 3), q(4, 3)], qi(2)).unwrap();
        assert_eq!(h.normal(), &[Z::from(1), Z::from(-2)]);
        assert_eq!(h.bound(), &qi(3));
        assert!(Halfspace::new(&[qi(0)], qi(1)).is_err());
        assert!(Halfspace::new(&[qi(1)], qi(0)).is_err());
    }

    #[test]
    fn unit_square_vertices() {
        let v = square().vertices().unwrap();
        assert_eq!(
            v.vertices(),
            &[
                vec![qi(-1), qi(-1)],
                vec![qi(-1), qi(1)],
                vec![qi(1), qi(-1)],
                vec![qi(1), qi(1)],
            ]
        );
        assert_eq!(square().vertices_seq().unwrap(), v);
    }

    #[test]
    fn unbounded_detected() {
        let p = HPolytope::new(2, vec![hs(&[1, 0], qi(1))]).unwrap();
        assert!(matches!(p.vertices(), Err(Error::Unbounded)));
    }

    #[test]
    fn containment() {
        let p = square();
        assert_eq!(p.contains(&[qi(0), qi(0)]).unwrap(), Containment::Interior);
        assert_eq!(p.contains(&[qi(1), q(1, 2)]).unwrap(), Containment::Boundary);
        assert_eq!(p.contains(&[qi(2), qi(0)]).unwrap(), Containment::Outside);
        assert!(p.contains(&[qi(0)]).is_err());
    }

    #[test]
    fn vertex_test() {
        let p = square();
        assert!(p.is_vertex(&[qi(1), qi(1)]).unwrap());
        assert!(!p.is_vertex(&[qi(1), q(1, 2)]).unwrap());
        assert!(!p.is_vertex(&[qi(0), qi(0)]).unwrap());
    }

    #[test]
    fn reduce_hull() {
        let v = VPolytope::new(2, vec![
            vec![qi(0), qi(0)],
            vec![qi(1), qi(0)],
            vec![qi(-1), qi(0)],
        ])
        .unwrap();
        let r = v.reduce();
        assert_eq!(r.vertices(), &[vec![qi(-1), qi(0)], vec![qi(1), qi(0)]]);

        let sq = VPolytope::new(2, vec![
            vec![qi(1), qi(1)],
            vec![qi(1), qi(-1)],
            vec![qi(-1), qi(1)],
            vec![qi(-1), qi(-1)],
            vec![qi(0), qi(0)],
        ])
        .unwrap();
        assert_eq!(sq.reduce().vertices().len(), 4);

        let line = VPolytope::new(2, vec![
            vec![qi(0), qi(0)],
            vec![qi(1), qi(1)],
            vec![qi(2), qi(2)],
        ])
        .unwrap();
        assert_eq!(
            line.reduce().vertices(),
            &[vec![qi(0), qi(0)], vec![qi(2), qi(2)]]
        );
    }

    #[test]
    fn outer_gauge() {
        let fs = vec![
            Functional { label: "a".into(), coefficients: vec![qi(0), qi(1)] },
            Functional { label: "b".into(), coefficients: vec![qi(3), qi(5)] },
        ];
        assert_eq!(gauge_outer(&[qi(0), qi(0)], &fs), qi(0));
        assert_eq!(gauge_outer(&[qi(3), qi(-2)], &fs), qi(2));
        assert_eq!(gauge_outer(&[qi(1), qi(0)], &fs), qi(3));
    }

    #[test]
    fn inner_gauge() {
        let sqv = square().vertices().unwrap();
        assert_eq!(gauge_inner(&[qi(1), qi(0)], &sqv).unwrap(), Some(qi(1)));
        assert_eq!(gauge_inner(&[qi(0), qi(0)], &sqv).unwrap(), Some(qi(0)));

        let mut pts = Vec::new();
        for (a, b) in [(q(1, 3), qi(0)), (q(1, 2), q(-1, 2)), (q(3, 2), qi(-1)), (qi(1), q(-1, 2))] {
            pts.push(vec![a.clone(), b.clone()]);
            pts.push(vec![-a, -b]);
        }
        let v = VPolytope::new(2, pts).unwrap();
        assert_eq!(gauge_inner(&[qi(1), qi(0)], &v).unwrap(), Some(qi(3)));

        let degenerate = VPolytope::new(2, vec![vec![qi(1), qi(1)], vec![qi(-1), qi(-1)]]).unwrap();
        assert_eq!(gauge_inner(&[qi(1), qi(0)], &degenerate).unwrap(), None);
    }

    #[test]
    fn inner_gauge_with_lineality() {
        let v = VPolytope::new(2, vec![vec![qi(1), qi(0)], vec![qi(-1), qi(0)]]).unwrap();
        let lines = vec![vec![qi(0), qi(1)]];
        let c = gauge_inner_cert(&[qi(2), qi(7)], &v, &lines).unwrap().unwrap();
        assert_eq!(c.value, qi(2));
        assert_eq!(c.line_weights, vec![(0, qi(7))]);
    }

    #[test]
    fn antipodal_vertices() {
        let p = HPolytope::new(2, vec![
            hs(&[1, 1], qi(2)),
            hs(&[1, -1], qi(1)),
            hs(&[0, 1], qi(1)),
        ])
        .unwrap();
        let v = p.vertices().unwrap();
        for vert in v.vertices() {
            let neg: Vec<Q> = vert.iter().map(|c| -c.clone()).collect();
            assert!(v.vertices().contains(&neg));
        }
    }

    #[test]
    fn json_shapes() {
        let p = square();
        let j = p.to_json();
        assert_eq!(j["dimension"], 2);
        assert_eq!(j["halfspaces"][0]["bound"], "1");
        let v = p.vertices().unwrap().to_json();
        assert_eq!(v["vertices"][0][0], "-1");
    }
}
