//! Knots and formal rational combinations: torus-knot Seifert matrices, a
//! small verified catalog of table knots, and the vector-space operations on
//! formal sums that model elements of the rationalized concordance group.

use crate::linalg::{det_int, symmetric_signature};
use crate::poly::Poly;
use crate::ratio::{Q, Z};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;

/// Square integer matrix of even size with unimodular V - V^T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<Z>>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<Z>>) -> Result<SeifertMatrix> {
        let n = entries.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::BadSeifertMatrix(format!("size {} is not even positive", n)));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::BadSeifertMatrix("matrix is not square".into()));
        }
        let mut skew = vec![vec![Z::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                skew[i][j] = &entries[i][j] - &entries[j][i];
            }
        }
        let d = det_int(&skew);
        if d.clone().abs() != Z::one() {
            return Err(Error::BadSeifertMatrix(format!(
                "det(V - V^T) = {} is not a unit",
                d
            )));
        }
        Ok(SeifertMatrix { entries })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<SeifertMatrix> {
        SeifertMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Z::from(x)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Vec<Vec<Z>> {
        &self.entries
    }

    /// Mirror image: -V^T.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.size();
        let mut out = vec![vec![Z::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = -self.entries[j][i].clone();
            }
        }
        SeifertMatrix { entries: out }
    }

    /// Classical signature: signature of V + V^T.
    pub fn classical_signature(&self) -> i64 {
        let n = self.size();
        let mut s = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                s[i][j] = Q::from_integer(&self.entries[i][j] + &self.entries[j][i]);
            }
        }
        symmetric_signature(&s).0
    }
}

/// A basis knot: a (canonical, positive) torus knot or a catalog knot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKnot {
    Torus { p: u32, q: u32 },
    Catalog { name: String },
}

impl fmt::Display for BasisKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKnot::Torus { p, q } => write!(f, "T({},{})", p, q),
            BasisKnot::Catalog { name } => write!(f, "{}", name),
        }
    }
}

/// Canonical torus knot constructor: p, q >= 2 coprime, stored with p < q.
pub fn torus(p: i64, q: i64) -> Result<BasisKnot> {
    if p < 2 || q < 2 {
        return Err(Error::TorusRange(p, q));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let (p, q) = if p < q { (p, q) } else { (q, p) };
    Ok(BasisKnot::Torus { p: p as u32, q: q as u32 })
}

/// Seifert matrix of the positive (p,q) torus knot from the fiber surface of
/// the standard positive braid: generators are indexed by (column i, brick j)
/// for 1 <= i <= p-1, 1 <= j <= q-1; linking follows the brick adjacency.
pub fn seifert_matrix_torus(p: i64, q: i64) -> Result<SeifertMatrix> {
    let k = torus(p, q)?;
    let (p, q) = match k {
        BasisKnot::Torus { p, q } => (p as usize, q as usize),
        _ => unreachable!(),
    };
    let n = (p - 1) * (q - 1);
    let idx = |i: usize, j: usize| (i - 1) * (q - 1) + (j - 1);
    let mut v = vec![vec![Z::zero(); n]; n];
    for i in 1..p {
        for j in 1..q {
            let r = idx(i, j);
            v[r][r] = Z::from(-1);
            if j + 1 < q {
                v[r][idx(i, j + 1)] = Z::one();
            }
            if i + 1 < p {
                v[idx(i + 1, j)][r] = Z::one();
                if j + 1 < q {
                    v[idx(i + 1, j)][idx(i, j + 1)] = Z::from(-1);
                }
            }
        }
    }
    SeifertMatrix::new(v)
}

/// det(V - t V^T), normalized: powers of t stripped, lowest coefficient
/// positive. The result is palindromic for a genuine Seifert matrix.
pub fn alexander_poly(v: &SeifertMatrix) -> Poly {
    let n = v.size();
    // interpolate the degree <= n polynomial from n+1 integer evaluations
    let mut points = Vec::with_capacity(n + 1);
    for t in 0..=n as i64 {
        let tz = Z::from(t);
        let mut m = vec![vec![Z::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = &v.entries[i][j] - &tz * &v.entries[j][i];
            }
        }
        points.push((Q::from_integer(Z::from(t)), Q::from_integer(det_int(&m))));
    }
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::new(vec![Q::one()]);
        let mut denom = Q::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::new(vec![-xj.clone(), Q::one()]));
            denom *= xi - xj;
        }
        acc = acc.add(&basis.scale(&(yi / &denom)));
    }
    normalize_alexander(acc)
}

fn normalize_alexander(p: Poly) -> Poly {
    let mut coeffs = p.coeffs;
    while coeffs.first().map_or(false, |c| c.is_zero()) {
        coeffs.remove(0);
    }
    if coeffs.first().map_or(false, |c| c.is_negative()) {
        for c in &mut coeffs {
            *c = -c.clone();
        }
    }
    Poly::new(coeffs)
}

/// Classical torus-knot Alexander polynomial
/// (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)).
pub fn torus_alexander(p: u32, q: u32) -> Poly {
    let cyc = |n: u32| {
        let mut c = vec![Q::zero(); n as usize + 1];
        c[0] = -Q::one();
        c[n as usize] = Q::one();
        Poly::new(c)
    };
    let num = cyc(p * q).mul(&cyc(1));
    let den = cyc(p).mul(&cyc(q));
    normalize_alexander(num.div_exact(&den).expect("torus Alexander division is exact"))
}

#[derive(Deserialize)]
struct CatalogFile {
    #[serde(default)]
    alias: Vec<CatalogAlias>,
    #[serde(default)]
    knot: Vec<CatalogEntry>,
}

#[derive(Deserialize)]
struct CatalogAlias {
    name: String,
    torus: [i64; 2],
}

#[derive(Deserialize)]
struct CatalogEntry {
    name: String,
    seifert: Vec<Vec<i64>>,
    alexander: Vec<i64>,
    abs_sigma: i64,
}

pub struct Catalog {
    aliases: BTreeMap<String, BasisKnot>,
    matrices: BTreeMap<String, SeifertMatrix>,
}

static CATALOG: Lazy<Catalog> = Lazy::new(|| {
    Catalog::parse(include_str!("../data/catalog.toml")).expect("embedded catalog is valid")
});

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let file: CatalogFile =
            toml::from_str(text).map_err(|e| Error::Invalid(format!("catalog: {}", e)))?;
        let mut aliases = BTreeMap::new();
        let mut matrices = BTreeMap::new();
        for a in file.alias {
            aliases.insert(a.name.clone(), torus(a.torus[0], a.torus[1])?);
        }
        for e in file.knot {
            let m = SeifertMatrix::from_i64(&e.seifert)
                .map_err(|err| Error::CatalogVerification(e.name.clone(), err.to_string()))?;
            let alex = alexander_poly(&m);
            let expected = Poly::from_int_slice(&e.alexander);
            if alex != expected {
                return Err(Error::CatalogVerification(
                    e.name.clone(),
                    format!("Alexander polynomial mismatch: got {:?}", alex.coeffs),
                ));
            }
            let sig = m.classical_signature().abs();
            if sig != e.abs_sigma {
                return Err(Error::CatalogVerification(
                    e.name.clone(),
                    format!("|signature| mismatch: got {}", sig),
                ));
            }
            matrices.insert(e.name, m);
        }
        Ok(Catalog { aliases, matrices })
    }

    fn lookup(&self, name: &str) -> Result<BasisKnot> {
        if let Some(k) = self.aliases.get(name) {
            return Ok(k.clone());
        }
        if self.matrices.contains_key(name) {
            return Ok(BasisKnot::Catalog { name: name.to_string() });
        }
        Err(Error::UnknownKnot(name.to_string()))
    }

    fn matrix(&self, name: &str) -> Option<&SeifertMatrix> {
        self.matrices.get(name)
    }
}

/// Resolves a table-knot name (3_1, 4_1, 5_1, 5_2, 6_2) to a basis knot.
/// 3_1 and 5_1 resolve to the torus knots backing them.
pub fn catalog(name: &str) -> Result<BasisKnot> {
    CATALOG.lookup(name)
}

/// Parses a basis-knot name: `T(p,q)` or a catalog name like `4_1`.
pub fn parse_basis_knot(s: &str) -> Result<BasisKnot> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("T(").and_then(|r| r.strip_suffix(')')) {
        let (p, q) = rest
            .split_once(',')
            .ok_or_else(|| Error::UnknownKnot(s.to_string()))?;
        let p: i64 = p.trim().parse().map_err(|_| Error::UnknownKnot(s.to_string()))?;
        let q: i64 = q.trim().parse().map_err(|_| Error::UnknownKnot(s.to_string()))?;
        return torus(p, q);
    }
    catalog(s)
}

/// Seifert matrix for any basis knot.
pub fn seifert_matrix(k: &BasisKnot) -> SeifertMatrix {
    match k {
        BasisKnot::Torus { p, q } => {
            seifert_matrix_torus(*p as i64, *q as i64).expect("canonical torus knot")
        }
        BasisKnot::Catalog { name } => CATALOG
            .matrix(name)
            .expect("catalog knots always carry a matrix")
            .clone(),
    }
}

/// Formal rational linear combination of basis knots. Mirrors fold into
/// coefficient signs (mirror = inverse in the concordance group).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KnotExpr {
    terms: BTreeMap<BasisKnot, Q>,
}

impl KnotExpr {
    pub fn zero() -> KnotExpr {
        KnotExpr::default()
    }

    pub fn single(k: BasisKnot, coeff: Q) -> KnotExpr {
        let mut e = KnotExpr::zero();
        e.add_term(k, coeff);
        e
    }

    pub fn knot(k: BasisKnot) -> KnotExpr {
        KnotExpr::single(k, Q::one())
    }

    pub fn add_term(&mut self, k: BasisKnot, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            let keys: Vec<_> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in keys {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &KnotExpr) -> KnotExpr {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Q) -> KnotExpr {
        if k.is_zero() {
            return KnotExpr::zero();
        }
        KnotExpr {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c * k)).collect(),
        }
    }

    pub fn mirror(&self) -> KnotExpr {
        self.scale(&-Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKnot, &Q)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<BasisKnot> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, k: &BasisKnot) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// Coordinates with respect to an ordered basis; fails if the expression
    /// has support outside the basis.
    pub fn coordinates(&self, basis: &[BasisKnot]) -> Result<Vec<Q>> {
        let mut out = vec![Q::zero(); basis.len()];
        for (k, c) in &self.terms {
            match basis.iter().position(|b| b == k) {
                Some(i) => out[i] = c.clone(),
                None => {
                    return Err(Error::Invalid(format!(
                        "expression involves {} outside the basis",
                        k
                    )))
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{}", k)?;
            } else {
                write!(f, "{}*{}", crate::ratio::format_q(&mag), k)?;
            }
        }
        Ok(())
    }
}

struct ExprParser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { offset: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse { offset: start, msg: "number too large".into() })
    }

    /// [rational '*'] with backtracking: digits not followed by '*' or '/'
    /// belong to a knot name instead.
    fn coefficient(&mut self) -> Result<Q> {
        self.skip_ws();
        let save = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(Q::one());
        }
        let n = self.uint()?;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let d = self.uint()?;
            if d == 0 {
                return Err(Error::Parse { offset: at, msg: "zero denominator".into() });
            }
            self.skip_ws();
            if !self.eat(b'*') {
                return Err(self.err("expected '*' after a coefficient"));
            }
            return Ok(crate::ratio::q(n, d));
        }
        if self.eat(b'*') {
            return Ok(Q::from_integer(Z::from(n)));
        }
        self.pos = save;
        Ok(Q::one())
    }

    fn knot(&mut self) -> Result<BasisKnot> {
        self.skip_ws();
        let save = self.pos;
        if self.eat(b'T') {
            self.skip_ws();
            if self.eat(b'(') {
                self.skip_ws();
                let p = self.uint()?;
                self.skip_ws();
                if !self.eat(b',') {
                    return Err(self.err("expected ',' in torus knot"));
                }
                self.skip_ws();
                let q = self.uint()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')' in torus knot"));
                }
                return torus(p, q);
            }
            self.pos = save;
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a knot"));
        }
        catalog(&self.text[start..self.pos])
    }
}

/// Parses "3*T(2,7) - 2*T(2,11)"-style expressions: signed terms with
/// optional rational coefficients over torus and catalog knots. "0" is the
/// empty class.
pub fn parse_expr(text: &str) -> Result<KnotExpr> {
    let mut p = ExprParser { text, bytes: text.as_bytes(), pos: 0 };
    let mut out = KnotExpr::zero();
    p.skip_ws();
    if p.peek() == Some(b'0') {
        let at = p.pos;
        p.pos += 1;
        p.skip_ws();
        if p.peek().is_none() {
            return Ok(out);
        }
        p.pos = at;
    }
    let mut first = true;
    loop {
        p.skip_ws();
        let negative = if p.eat(b'-') {
            true
        } else if p.eat(b'+') {
            false
        } else if first {
            false
        } else if p.peek().is_none() {
            break;
        } else {
            return Err(p.err("expected '+' or '-' between terms"));
        };
        if !first || negative || p.peek().is_some() {
            let coeff = p.coefficient()?;
            let k = p.knot()?;
            out.add_term(k, if negative { -coeff } else { coeff });
        }
        first = false;
        p.skip_ws();
        if p.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{q, qi};

    #[test]
    fn torus_canonicalization() {
        assert_eq!(torus(2, 7).unwrap(), BasisKnot::Torus { p: 2, q: 7 });
        assert_eq!(torus(7, 2).unwrap(), BasisKnot::Torus { p: 2, q: 7 });
        assert!(matches!(torus(2, 4), Err(Error::NotCoprime(2, 4))));
        assert!(matches!(torus(1, 5), Err(Error::TorusRange(1, 5))));
    }

    #[test]
    fn expression_parsing() {
        let e = parse_expr("3*T(2,7) - 2*T(2,11)").unwrap();
        assert_eq!(e.coeff(&torus(2, 7).unwrap()), qi(3));
        assert_eq!(e.coeff(&torus(2, 11).unwrap()), qi(-2));
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);

        let e = parse_expr("3/2*T(2,7) - T(2,11)").unwrap();
        assert_eq!(e.coeff(&torus(2, 7).unwrap()), q(3, 2));
        assert_eq!(e.coeff(&torus(2, 11).unwrap()), qi(-1));

        // catalog names that start with digits are not coefficients
        let e = parse_expr("2*3_1 + 5_2 - 6_2").unwrap();
        assert_eq!(e.coeff(&catalog("3_1").unwrap()), qi(2));
        assert_eq!(e.coeff(&catalog("5_2").unwrap()), qi(1));
        assert_eq!(e.coeff(&catalog("6_2").unwrap()), qi(-1));
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);

        // whitespace-insensitive; leading minus; cancellation
        assert_eq!(
            parse_expr(" - 3 * T( 2 , 7 ) ").unwrap(),
            parse_expr("-3*T(2,7)").unwrap()
        );
        assert!(parse_expr("T(2,7) - T(2,7)").unwrap().is_zero());
        assert!(parse_expr("0").unwrap().is_zero());

        assert!(matches!(parse_expr("T(2,4)"), Err(Error::NotCoprime(2, 4))));
        assert!(matches!(parse_expr("9_99"), Err(Error::UnknownKnot(_))));
        assert!(matches!(parse_expr("3*T(2,7) 2*T(2,11)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("3/0*T(2,7)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn torus_seifert_size_and_units() {
        for (p, q) in [(2, 3), (2, 5), (2, 7), (2, 11), (3, 5), (3, 7)] {
            let v = seifert_matrix_torus(p, q).unwrap();
            assert_eq!(v.size(), ((p - 1) * (q - 1)) as usize);
        }
    }

    #[test]
    fn alexander_matches_torus_formula() {
        for (p, q) in [(2u32, 3u32), (2, 5), (2, 7), (2, 11), (3, 5), (3, 7)] {
            let v = seifert_matrix_torus(p as i64, q as i64).unwrap();
            assert_eq!(alexander_poly(&v), torus_alexander(p, q), "T({},{})", p, q);
        }
    }

    #[test]
    fn trefoil_alexander() {
        let v = seifert_matrix_torus(2, 3).unwrap();
        assert_eq!(alexander_poly(&v), Poly::from_int_slice(&[1, -1, 1]));
        assert_eq!(v.classical_signature(), -2);
    }

    #[test]
    fn catalog_entries() {
        assert_eq!(catalog("3_1").unwrap(), BasisKnot::Torus { p: 2, q: 3 });
        assert_eq!(catalog("5_1").unwrap(), BasisKnot::Torus { p: 2, q: 5 });
        let k = catalog("5_2").unwrap();
        let m = seifert_matrix(&k);
        assert_eq!(alexander_poly(&m), Poly::from_int_slice(&[2, -3, 2]));
        assert!(matches!(catalog("9_99"), Err(Error::UnknownKnot(_))));
        let f8 = catalog("4_1").unwrap();
        assert_eq!(seifert_matrix(&f8).classical_signature(), 0);
    }

    #[test]
    fn expr_arithmetic() {
        let t27 = torus(2, 7).unwrap();
        let t211 = torus(2, 11).unwrap();
        let e = KnotExpr::single(t27.clone(), qi(3)).add(&KnotExpr::single(t211.clone(), qi(-2)));
        assert_eq!(e.coeff(&t27), qi(3));
        assert_eq!(e.coeff(&t211), qi(-2));
        assert!(e.scale(&qi(0)).is_zero());
        assert_eq!(e.mirror().mirror(), e);
        let sum = e.add(&e.mirror());
        assert!(sum.is_zero());
        assert_eq!(e.to_string(), "3*T(2,7) - 2*T(2,11)");
        let half = KnotExpr::single(t27, q(3, 2)).add(&KnotExpr::single(t211, qi(-1)));
        assert_eq!(half.to_string(), "3/2*T(2,7) - T(2,11)");
    }

    #[test]
    fn mirror_matrix_signature() {
        let v = seifert_matrix_torus(2, 3).unwrap();
        assert_eq!(v.mirror().classical_signature(), 2);
        assert_eq!(alexander_poly(&v.mirror()), alexander_poly(&v));
    }
}
