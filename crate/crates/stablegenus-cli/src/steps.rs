//! Step-function rendering: constant pieces of sigma'_t on (0, 1/2] with
//! exact rational endpoints, emitted as CSV, JSON, or SVG.

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use stablegenus_core::knot::KnotExpr;
use stablegenus_core::ratio::{format_q, q, Q};
use stablegenus_core::signatures::{evaluate, step, JumpLocation};
use stablegenus_core::Error;

/// A maximal parameter interval on which the combination's signature is
/// constant, plus the label of the jump that ends it (if any).
pub struct Piece {
    pub t_lo: Q,
    pub t_hi: Q,
    pub value: Q,
    /// rational abscissa or enclosure of the jump at `t_hi`, except for the
    /// final piece ending at 1/2
    pub jump: Option<String>,
}

/// Enclosures of every jump of every summand, merged where they touch.
fn jump_spans(e: &KnotExpr) -> Result<Vec<(Q, Q)>, Error> {
    let mut spans: Vec<(Q, Q)> = Vec::new();
    for (k, _) in e.terms() {
        for (loc, _) in step(k)?.jumps() {
            spans.push(match loc {
                JumpLocation::Exact(t) => (t.clone(), t.clone()),
                JumpLocation::Isolated { t_lo, t_hi, .. } => (t_lo.clone(), t_hi.clone()),
            });
        }
    }
    spans.sort();
    let mut merged: Vec<(Q, Q)> = Vec::new();
    for (lo, hi) in spans {
        match merged.last_mut() {
            Some((_, mhi)) if lo <= *mhi => {
                if hi > *mhi {
                    *mhi = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    Ok(merged)
}

fn span_label(lo: &Q, hi: &Q) -> String {
    if lo == hi {
        format_q(lo)
    } else {
        format!("[{}, {}]", format_q(lo), format_q(hi))
    }
}

/// The constant pieces of sigma'_t for t in (0, 1/2]. Pieces on both sides
/// of a non-jump (cancelled delta) are merged.
pub fn step_pieces(e: &KnotExpr) -> Result<Vec<Piece>, Error> {
    let spans = jump_spans(e)?;
    let half = q(1, 2);
    let two = Q::from_integer(2.into());
    let mut pieces: Vec<Piece> = Vec::new();
    let mut cursor = Q::zero();
    for (lo, hi) in &spans {
        let sample = (&cursor + lo) / &two;
        pieces.push(Piece {
            t_lo: cursor.clone(),
            t_hi: lo.clone(),
            value: evaluate(e, &sample)?,
            jump: Some(span_label(lo, hi)),
        });
        cursor = hi.clone();
    }
    let sample = (&cursor + &half) / &two;
    pieces.push(Piece {
        t_lo: cursor,
        t_hi: half,
        value: evaluate(e, &sample)?,
        jump: None,
    });
    // drop separators whose net delta cancels
    let mut out: Vec<Piece> = Vec::new();
    for p in pieces {
        match out.last_mut() {
            Some(prev) if prev.value == p.value => {
                prev.t_hi = p.t_hi;
                prev.jump = p.jump;
            }
            _ => out.push(p),
        }
    }
    Ok(out)
}

pub fn to_csv(pieces: &[Piece]) -> String {
    let mut s = String::from("t_lo,t_hi,value\n");
    for p in pieces {
        s.push_str(&format!(
            "{},{},{}\n",
            format_q(&p.t_lo),
            format_q(&p.t_hi),
            format_q(&p.value)
        ));
    }
    s.pop();
    s
}

pub fn to_json(e: &KnotExpr, pieces: &[Piece]) -> Value {
    json!({
        "schema": "stablegenus/1",
        "expr": e.to_string(),
        "pieces": pieces.iter().map(|p| json!({
            "t_lo": format_q(&p.t_lo),
            "t_hi": format_q(&p.t_hi),
            "value": format_q(&p.value),
            "jump": p.jump,
        })).collect::<Vec<_>>(),
        "max_half_abs": format_q(
            &pieces.iter().map(|p| p.value.abs() / Q::from_integer(2.into())).max().unwrap()
        ),
    })
}

fn approx(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(0.0) / x.denom().to_f64().unwrap_or(1.0)
}

/// Plots half the absolute signature over [0, 1/2]; each jump carries its
/// exact abscissa in a data-t attribute.
pub fn to_svg(e: &KnotExpr, pieces: &[Piece]) -> String {
    let w = 600.0;
    let h = 300.0;
    let pad = 40.0;
    let two = Q::from_integer(2.into());
    let ymax = pieces
        .iter()
        .map(|p| p.value.abs() / &two)
        .max()
        .unwrap_or_else(Q::zero)
        .max(Q::from_integer(1.into()));
    let xs = |t: &Q| pad + approx(t) * 2.0 * (w - 2.0 * pad);
    let ys = |v: &Q| h - pad - approx(&(v.abs() / &two)) / approx(&ymax) * (h - 2.0 * pad);
    let mut body = String::new();
    body.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        pad,
        pad,
        w - 2.0 * pad,
        h - 2.0 * pad
    ));
    for p in pieces {
        body.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"blue\" stroke-width=\"2\"/>\n",
            xs(&p.t_lo),
            ys(&p.value),
            xs(&p.t_hi),
            ys(&p.value)
        ));
        if let Some(jump) = &p.jump {
            body.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{}\" x2=\"{:.2}\" y2=\"{}\" stroke=\"gray\" stroke-dasharray=\"3 3\" data-t=\"{}\"/>\n",
                xs(&p.t_hi),
                pad,
                xs(&p.t_hi),
                h - pad,
                jump
            ));
        }
    }
    // exact tick labels on the parameter axis
    for tick in [q(0, 1), q(1, 4), q(1, 2)] {
        body.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            xs(&tick),
            h - pad + 18.0,
            format_q(&tick)
        ));
    }
    body.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        w / 2.0,
        pad - 14.0,
        xml_escape(&e.to_string())
    ));
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">\n{}</svg>",
        w, h, body
    )
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
