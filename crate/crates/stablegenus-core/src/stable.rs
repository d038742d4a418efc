//! Stable 4-genus bounds: signature (and tau/s) lower bounds with
//! functional witnesses, upper bounds from a registry of known 4-genus
//! facts via the exact Minkowski gauge, and unit-ball reports per category.

use crate::knot::{parse_basis_knot, BasisKnot, KnotExpr};
use crate::polytope::{gauge_inner_cert, HPolytope, VPolytope};
use crate::ratio::{format_q, parse_q, Q, Z};
use crate::signatures::{interval_functionals, tau_torus, Functional};
use crate::{Error, Result};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Genus category: smooth admits the tau and s/2 functionals on torus spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Smooth,
    Topological,
}

impl Category {
    pub fn as_str(&self) -> &'static str {
        match self {
            Category::Smooth => "smooth",
            Category::Topological => "topological",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactKind {
    G4Exact,
    G4Upper,
}

/// A known 4-genus statement about an integer combination of basis knots.
#[derive(Clone, Debug, PartialEq)]
pub struct Fact {
    pub combination: KnotExpr,
    pub kind: FactKind,
    pub value: Q,
    pub provenance: String,
}

impl Fact {
    pub fn new(combination: KnotExpr, kind: FactKind, value: Q, provenance: &str) -> Result<Fact> {
        if value.is_negative() {
            return Err(Error::Invalid("a 4-genus value cannot be negative".into()));
        }
        if combination.is_zero() {
            return Err(Error::Invalid("fact combination must be nonzero".into()));
        }
        if value.is_zero() && kind != FactKind::G4Exact {
            return Err(Error::Invalid("a zero (slice) fact must be exact".into()));
        }
        if combination.terms().any(|(_, c)| !c.is_integer()) {
            return Err(Error::Invalid("fact coefficients must be integers".into()));
        }
        Ok(Fact { combination, kind, value, provenance: provenance.to_string() })
    }
}

#[derive(Serialize, Deserialize)]
struct FactRecord {
    knots: Vec<String>,
    coeffs: Vec<i64>,
    kind: String,
    value: String,
    provenance: String,
}

/// Parses a JSON array of fact records.
pub fn load_registry(text: &str) -> Result<Vec<Fact>> {
    let records: Vec<FactRecord> =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("registry: {}", e)))?;
    let mut out = Vec::new();
    for r in records {
        if r.knots.len() != r.coeffs.len() {
            return Err(Error::Invalid("registry record: knots/coeffs length mismatch".into()));
        }
        let mut combo = KnotExpr::zero();
        for (name, c) in r.knots.iter().zip(&r.coeffs) {
            combo.add_term(parse_basis_knot(name)?, Q::from_integer(Z::from(*c)));
        }
        let kind = match r.kind.as_str() {
            "g4_exact" => FactKind::G4Exact,
            "g4_upper" => FactKind::G4Upper,
            other => return Err(Error::Invalid(format!("unknown fact kind {:?}", other))),
        };
        let value = parse_q(&r.value)
            .ok_or_else(|| Error::Invalid(format!("bad fact value {:?}", r.value)))?;
        out.push(Fact::new(combo, kind, value, &r.provenance)?);
    }
    Ok(out)
}

pub fn registry_to_json(facts: &[Fact]) -> Value {
    let records: Vec<Value> = facts
        .iter()
        .map(|f| {
            let knots: Vec<String> = f.combination.terms().map(|(k, _)| k.to_string()).collect();
            let coeffs: Vec<i64> = f
                .combination
                .terms()
                .map(|(_, c)| c.numer().to_i64().expect("fact coefficients fit in i64"))
                .collect();
            json!({
                "knots": knots,
                "coeffs": coeffs,
                "kind": match f.kind { FactKind::G4Exact => "g4_exact", FactKind::G4Upper => "g4_upper" },
                "value": format_q(&f.value),
                "provenance": f.provenance,
            })
        })
        .collect();
    Value::Array(records)
}

/// The built-in facts registry.
pub fn default_registry() -> Vec<Fact> {
    load_registry(include_str!("../data/facts.json")).expect("embedded registry is valid")
}

fn all_torus(basis: &[BasisKnot]) -> bool {
    basis.iter().all(|k| matches!(k, BasisKnot::Torus { .. }))
}

/// Signature interval functionals for the span, extended by tau and s/2 rows
/// in the smooth category when every basis knot is a torus knot (the only
/// case with tau data available here).
pub fn span_functionals(basis: &[BasisKnot], category: Category) -> Result<Vec<Functional>> {
    let mut fs = interval_functionals(basis)?;
    if category == Category::Smooth && all_torus(basis) {
        let mut tau_row = Vec::with_capacity(basis.len());
        for k in basis {
            let (p, q) = match k {
                BasisKnot::Torus { p, q } => (*p as i64, *q as i64),
                _ => unreachable!(),
            };
            tau_row.push(Q::from_integer(Z::from(tau_torus(p, q)?)));
        }
        fs.push(Functional { label: "tau".into(), coefficients: tau_row.clone() });
        // s = 2 tau for torus knots, so s/2 contributes the same row
        fs.push(Functional { label: "s/2".into(), coefficients: tau_row });
    }
    Ok(fs)
}

/// Best lower bound for the stable genus of `expr` with the witnessing
/// functional.
pub fn lower_bound(expr: &KnotExpr, category: Category) -> Result<(Q, Functional)> {
    let basis = expr.support();
    if basis.is_empty() {
        return Ok((Q::zero(), Functional { label: "zero".into(), coefficients: vec![] }));
    }
    let x = expr.coordinates(&basis)?;
    let fs = span_functionals(&basis, category)?;
    let mut best = Q::zero();
    let mut witness = Functional {
        label: "zero".into(),
        coefficients: vec![Q::zero(); basis.len()],
    };
    for f in fs {
        let mut v = Q::zero();
        for (c, xi) in f.coefficients.iter().zip(&x) {
            v += c * xi;
        }
        let v = v.abs();
        if v > best {
            best = v;
            witness = f;
        }
    }
    Ok((best, witness))
}

/// Convex-combination certificate behind an upper bound; verifies offline
/// against the expression it was issued for.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperWitness {
    pub basis: Vec<BasisKnot>,
    pub value: Q,
    /// (hull point derived from a fact, weight); weights sum to `value`
    pub vertex_terms: Vec<(Vec<Q>, Q)>,
    /// (slice direction, free multiplier)
    pub line_terms: Vec<(Vec<Q>, Q)>,
}

impl UpperWitness {
    /// Re-checks the certificate: the weighted points and slice directions
    /// reconstruct the expression and the weights add up to the bound.
    pub fn verify(&self, expr: &KnotExpr) -> bool {
        let x = match expr.coordinates(&self.basis) {
            Ok(x) => x,
            Err(_) => return false,
        };
        let d = self.basis.len();
        let mut acc = vec![Q::zero(); d];
        let mut total = Q::zero();
        for (p, w) in &self.vertex_terms {
            if p.len() != d || w.is_negative() {
                return false;
            }
            for (a, c) in acc.iter_mut().zip(p) {
                *a += c * w;
            }
            total += w;
        }
        for (l, t) in &self.line_terms {
            if l.len() != d {
                return false;
            }
            for (a, c) in acc.iter_mut().zip(l) {
                *a += c * t;
            }
        }
        acc == x && total == self.value
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "value": format_q(&self.value),
            "vertex_terms": self.vertex_terms.iter().map(|(p, w)| json!({
                "point": p.iter().map(format_q).collect::<Vec<_>>(),
                "weight": format_q(w),
            })).collect::<Vec<_>>(),
            "line_terms": self.line_terms.iter().map(|(l, t)| json!({
                "direction": l.iter().map(format_q).collect::<Vec<_>>(),
                "multiplier": format_q(t),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Hull data distilled from a registry over a fixed basis: points +-v/g for
/// positive facts, lineality directions for slice facts.
fn fact_hull(basis: &[BasisKnot], registry: &[Fact]) -> Result<(VPolytope, Vec<Vec<Q>>)> {
    let mut pts = Vec::new();
    let mut lines = Vec::new();
    for f in registry {
        let v = match f.combination.coordinates(basis) {
            Ok(v) => v,
            // facts touching knots outside the basis do not apply
            Err(_) => continue,
        };
        if f.value.is_zero() {
            lines.push(v);
        } else {
            let p: Vec<Q> = v.iter().map(|c| c / &f.value).collect();
            let n: Vec<Q> = p.iter().map(|c| -c.clone()).collect();
            pts.push(p);
            pts.push(n);
        }
    }
    Ok((VPolytope::new(basis.len(), pts)?, lines))
}

/// Best convexity upper bound from the registry; None encodes +infinity.
pub fn upper_bound(expr: &KnotExpr, registry: &[Fact]) -> Result<Option<UpperWitness>> {
    let mut basis = expr.support();
    if basis.is_empty() {
        return Ok(Some(UpperWitness {
            basis,
            value: Q::zero(),
            vertex_terms: vec![],
            line_terms: vec![],
        }));
    }
    // widen the basis with fact-only knots so combinations through them count
    for f in registry {
        for (k, _) in f.combination.terms() {
            if !basis.contains(k) {
                basis.push(k.clone());
            }
        }
    }
    basis.sort();
    let x = expr.coordinates(&basis)?;
    let (hull, lines) = fact_hull(&basis, registry)?;
    let cert = match gauge_inner_cert(&x, &hull, &lines)? {
        Some(c) => c,
        None => return Ok(None),
    };
    let vertex_terms = cert
        .vertex_weights
        .into_iter()
        .map(|(i, w)| (hull.vertices()[i].clone(), w))
        .collect();
    let line_terms = cert
        .line_weights
        .into_iter()
        .map(|(i, t)| (lines[i].clone(), t))
        .collect();
    Ok(Some(UpperWitness { basis, value: cert.value, vertex_terms, line_terms }))
}

/// Two-sided bound report for one expression.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub expr: KnotExpr,
    pub category: Category,
    pub lower: Q,
    pub lower_witness: Functional,
    pub upper: Option<Q>,
    pub upper_witness: Option<UpperWitness>,
    pub determined: bool,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "expr": self.expr.to_string(),
            "category": self.category.as_str(),
            "lower": format_q(&self.lower),
            "lower_witness": {
                "label": self.lower_witness.label,
                "coefficients": self.lower_witness.coefficients.iter().map(format_q).collect::<Vec<_>>(),
            },
            "upper": self.upper.as_ref().map(format_q),
            "upper_witness": self.upper_witness.as_ref().map(|w| w.to_json()),
            "determined": self.determined,
        })
    }
}

/// Combines the lower and upper machinery into one report.
pub fn g_st_interval(
    expr: &KnotExpr,
    category: Category,
    registry: &[Fact],
) -> Result<BoundReport> {
    let (lower, lower_witness) = lower_bound(expr, category)?;
    let upper_witness = upper_bound(expr, registry)?;
    let upper = upper_witness.as_ref().map(|w| w.value.clone());
    if let Some(u) = &upper {
        if &lower > u {
            return Err(Error::Invalid(format!(
                "inconsistent data: lower bound {} exceeds upper bound {} for {}",
                format_q(&lower),
                format_q(u),
                expr
            )));
        }
    }
    let determined = upper.as_ref() == Some(&lower);
    Ok(BoundReport {
        expr: expr.clone(),
        category,
        lower,
        lower_witness,
        upper,
        upper_witness,
        determined,
    })
}

/// Outer (functional) and inner (fact hull) approximations of the stable
/// unit ball on a span.
#[derive(Clone, Debug)]
pub struct UnitBallReport {
    pub basis: Vec<BasisKnot>,
    pub category: Category,
    pub functionals: Vec<Functional>,
    pub outer: HPolytope,
    /// None when the outer body is unbounded (degenerate signature data).
    pub outer_vertices: Option<VPolytope>,
    pub inner: VPolytope,
    pub inner_lines: Vec<Vec<Q>>,
}

impl UnitBallReport {
    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "category": self.category.as_str(),
            "outer": self.outer.to_json(),
            "outer_vertices": self.outer_vertices.as_ref().map(|v| v.to_json()),
            "bounded": self.outer_vertices.is_some(),
            "inner": self.inner.to_json(),
            "inner_lines": self.inner_lines.iter().map(|l| {
                l.iter().map(format_q).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// Unit-ball computation on a span: H-polytope from the category functionals
/// with bound 1, its vertices (when bounded), and the inner hull from facts.
pub fn unit_ball(
    basis: &[BasisKnot],
    category: Category,
    registry: &[Fact],
) -> Result<UnitBallReport> {
    if basis.is_empty() {
        return Err(Error::Invalid("unit ball needs a nonempty basis".into()));
    }
    let functionals = span_functionals(basis, category)?;
    let outer = HPolytope::from_functionals(&functionals, Q::from_integer(Z::from(1)))?;
    let outer_vertices = match outer.vertices() {
        Ok(v) => Some(v),
        Err(Error::Unbounded) => None,
        Err(e) => return Err(e),
    };
    let (inner_raw, inner_lines) = fact_hull(basis, registry)?;
    let inner = inner_raw.reduce();
    Ok(UnitBallReport {
        basis: basis.to_vec(),
        category,
        functionals,
        outer,
        outer_vertices,
        inner,
        inner_lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{catalog, torus};
    use crate::polytope::{gauge_outer, Containment};
    use crate::ratio::{q, qi};

    fn texpr(terms: &[(i64, i64, i64)]) -> KnotExpr {
        let mut e = KnotExpr::zero();
        for &(c, p, qq) in terms {
            e.add_term(torus(p, qq).unwrap(), qi(c));
        }
        e
    }

    #[test]
    fn registry_roundtrip_and_defaults() {
        let facts = default_registry();
        assert!(facts.len() >= 10);
        let json = registry_to_json(&facts).to_string();
        let back = load_registry(&json).unwrap();
        assert_eq!(facts, back);
        // every fact carries provenance
        assert!(facts.iter().all(|f| !f.provenance.is_empty()));
    }

    #[test]
    fn fact_validation() {
        let e = KnotExpr::knot(torus(2, 3).unwrap());
        assert!(Fact::new(e.clone(), FactKind::G4Upper, qi(-1), "x").is_err());
        assert!(Fact::new(KnotExpr::zero(), FactKind::G4Exact, qi(0), "x").is_err());
        assert!(Fact::new(e.clone(), FactKind::G4Upper, qi(0), "x").is_err());
        assert!(Fact::new(e.scale(&q(1, 2)), FactKind::G4Exact, qi(1), "x").is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let e = texpr(&[(3, 2, 7), (-2, 2, 11)]);
        let (v, w) = lower_bound(&e, Category::Topological).unwrap();
        assert_eq!(v, qi(2));
        // witness re-check
        let x = e.coordinates(&e.support()).unwrap();
        assert_eq!(gauge_outer(&x, &[w]), qi(2));

        let t37 = texpr(&[(1, 3, 7)]);
        let (v, _) = lower_bound(&t37, Category::Topological).unwrap();
        assert_eq!(v, qi(5));
        let (v, w) = lower_bound(&t37, Category::Smooth).unwrap();
        assert_eq!(v, qi(6));
        assert_eq!(w.label, "tau");
    }

    #[test]
    fn upper_bound_examples() {
        let reg = default_registry();
        let e = texpr(&[(3, 2, 7), (-2, 2, 11)]);
        let w = upper_bound(&e, &reg).unwrap().unwrap();
        assert_eq!(w.value, qi(2));
        assert!(w.verify(&e));

        let f8 = KnotExpr::knot(catalog("4_1").unwrap());
        let w = upper_bound(&f8, &reg).unwrap().unwrap();
        assert_eq!(w.value, qi(0));
        assert!(w.verify(&f8));

        // 5_1 - 2 * 6_2: half of a genus-2 double
        let mut e = KnotExpr::knot(catalog("5_1").unwrap());
        e.add_term(catalog("6_2").unwrap(), qi(-2));
        let w = upper_bound(&e, &reg).unwrap().unwrap();
        assert_eq!(w.value, qi(1));
        assert!(w.verify(&e));

        // no facts at all: infinity
        assert_eq!(upper_bound(&e, &[]).unwrap(), None);
    }

    #[test]
    fn interval_examples() {
        let reg = default_registry();
        let e = texpr(&[(3, 2, 7), (-2, 2, 11)]);
        let r = g_st_interval(&e, Category::Topological, &reg).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone()), (qi(2), Some(qi(2))));
        assert!(r.determined);

        let tre = KnotExpr::knot(catalog("3_1").unwrap());
        let r = g_st_interval(&tre, Category::Topological, &reg).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone()), (qi(1), Some(qi(1))));
        assert!(r.determined);

        let t37 = texpr(&[(1, 3, 7)]);
        let r = g_st_interval(&t37, Category::Topological, &reg).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone()), (qi(5), Some(qi(6))));
        assert!(!r.determined);
        let r = g_st_interval(&t37, Category::Smooth, &reg).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone()), (qi(6), Some(qi(6))));
        assert!(r.determined);
    }

    #[test]
    fn ball_on_torus_pair() {
        let reg = default_registry();
        let basis = vec![torus(2, 7).unwrap(), torus(2, 11).unwrap()];
        let ball = unit_ball(&basis, Category::Topological, &reg).unwrap();
        let verts = ball.outer_vertices.as_ref().unwrap();
        assert!(verts.vertices().contains(&vec![q(3, 2), qi(-1)]));
        assert!(verts.vertices().contains(&vec![q(-3, 2), qi(1)]));
        assert_eq!(ball.outer.contains(&[qi(0), q(1, 5)]).unwrap(), Containment::Boundary);
        assert!(!ball.outer.is_vertex(&[qi(0), q(1, 5)]).unwrap());
        // inner hull sits inside the outer ball
        for v in ball.inner.vertices() {
            assert_ne!(ball.outer.contains(v).unwrap(), Containment::Outside);
        }
    }

    #[test]
    fn smooth_ball_strictly_smaller() {
        let reg = default_registry();
        let basis = vec![torus(3, 7).unwrap(), torus(2, 5).unwrap()];
        let top = unit_ball(&basis, Category::Topological, &reg).unwrap();
        let smooth = unit_ball(&basis, Category::Smooth, &reg).unwrap();
        let pt = [q(1, 5), qi(0)];
        assert_ne!(top.outer.contains(&pt).unwrap(), Containment::Outside);
        assert_eq!(smooth.outer.contains(&pt).unwrap(), Containment::Outside);
    }

    #[test]
    fn mirror_symmetry_of_bounds() {
        let reg = default_registry();
        let e = texpr(&[(2, 2, 7), (-1, 2, 11)]);
        let a = g_st_interval(&e, Category::Topological, &reg).unwrap();
        let b = g_st_interval(&e.mirror(), Category::Topological, &reg).unwrap();
        assert_eq!(a.lower, b.lower);
        assert_eq!(a.upper, b.upper);
    }
}
