//! Golden reproduction targets: recompute a published artifact and compare
//! it with the expected data embedded below. A mismatch exits with code 3.

use crate::{output, steps};
use num_traits::Signed;
use serde_json::{json, Value};
use stablegenus_core::knot::{catalog, parse_expr, torus};
use stablegenus_core::polytope::Containment;
use stablegenus_core::ratio::{format_q, q, qi, Q};
use stablegenus_core::signatures::interval_functionals;
use stablegenus_core::stable::{default_registry, g_st_interval, unit_ball, Category};
use stablegenus_core::Error;
use std::path::PathBuf;

pub fn run(target: &str, out: &Option<PathBuf>) -> Result<i32, Error> {
    let (artifact, mismatches) = match target {
        "figure-1" => figure_1()?,
        "figure-3" => figure_3()?,
        "figure-4" => figure_4()?,
        "table-4d" => table_4d()?,
        other => {
            return Err(Error::Invalid(format!(
                "unknown target {:?}; expected figure-1, figure-3, figure-4, or table-4d",
                other
            )))
        }
    };
    let mut json = artifact;
    json["schema"] = json!("stablegenus/1");
    json["target"] = json!(target);
    json["mismatches"] = json!(mismatches);
    output::emit(&json.to_string(), out)?;
    if mismatches.is_empty() {
        Ok(0)
    } else {
        eprintln!("reproduction mismatch for {}: {:?}", target, mismatches);
        Ok(3)
    }
}

/// Signature step function of 3 T(2,7) - 2 T(2,11): jump abscissas and
/// the extremal half-signature.
fn figure_1() -> Result<(Value, Vec<String>), Error> {
    let e = parse_expr("3*T(2,7) - 2*T(2,11)")?;
    let pieces = steps::step_pieces(&e)?;
    let mut mism = Vec::new();
    let expected_jumps = [
        q(1, 22),
        q(1, 14),
        q(3, 22),
        q(3, 14),
        q(5, 22),
        q(7, 22),
        q(5, 14),
        q(9, 22),
    ];
    let got: Vec<Q> = pieces.iter().filter(|p| p.jump.is_some()).map(|p| p.t_hi.clone()).collect();
    if got != expected_jumps {
        mism.push(format!(
            "jump set {:?}",
            got.iter().map(format_q).collect::<Vec<_>>()
        ));
    }
    let max_half = pieces
        .iter()
        .map(|p| p.value.abs() / qi(2))
        .max()
        .expect("pieces are nonempty");
    if max_half != qi(2) {
        mism.push(format!("max half-signature {}", format_q(&max_half)));
    }
    Ok((steps::to_json(&e, &pieces), mism))
}

/// Unit-ball data on the T(2,7), T(2,11) span: the eight supporting
/// functionals, the vertex pair (3/2, -1), and the determined class.
fn figure_3() -> Result<(Value, Vec<String>), Error> {
    let basis = vec![torus(2, 7)?, torus(2, 11)?];
    let reg = default_registry();
    let ball = unit_ball(&basis, Category::Topological, &reg)?;
    let mut mism = Vec::new();

    let fs = interval_functionals(&basis)?;
    let expected: Vec<Vec<Q>> = [(0, 1), (1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (3, 4), (3, 5)]
        .iter()
        .map(|&(a, b)| vec![qi(a), qi(b)])
        .collect();
    let got: Vec<Vec<Q>> = fs.iter().map(|f| f.coefficients.clone()).collect();
    if got != expected {
        mism.push("functional coefficients".into());
    }

    match &ball.outer_vertices {
        Some(v) => {
            if !v.vertices().contains(&vec![q(3, 2), qi(-1)])
                || !v.vertices().contains(&vec![q(-3, 2), qi(1)])
            {
                mism.push("vertex pair (3/2, -1)".into());
            }
        }
        None => mism.push("outer ball unbounded".into()),
    }
    if ball.outer.contains(&[qi(0), q(1, 5)])? != Containment::Boundary {
        mism.push("(0, 1/5) boundary point".into());
    }

    let r = g_st_interval(&parse_expr("3*T(2,7) - 2*T(2,11)")?, Category::Topological, &reg)?;
    if !(r.lower == qi(2) && r.upper == Some(qi(2))) {
        mism.push("interval of 3*T(2,7) - 2*T(2,11)".into());
    }
    Ok((ball.to_json(), mism))
}

/// Smooth-versus-topological outer balls on the T(3,7), T(2,5) span.
fn figure_4() -> Result<(Value, Vec<String>), Error> {
    let basis = vec![torus(3, 7)?, torus(2, 5)?];
    let reg = default_registry();
    let top = unit_ball(&basis, Category::Topological, &reg)?;
    let smooth = unit_ball(&basis, Category::Smooth, &reg)?;
    let mut mism = Vec::new();
    let pt = [q(1, 5), qi(0)];
    if top.outer.contains(&pt)? == Containment::Outside {
        mism.push("(1/5, 0) escapes the topological ball".into());
    }
    if smooth.outer.contains(&pt)? != Containment::Outside {
        mism.push("(1/5, 0) inside the smooth ball".into());
    }
    if !smooth
        .functionals
        .iter()
        .any(|f| f.label == "tau" && f.coefficients == [qi(6), qi(2)])
    {
        mism.push("tau functional (6, 2)".into());
    }
    let artifact = json!({
        "topological": top.to_json(),
        "smooth": smooth.to_json(),
    });
    Ok((artifact, mism))
}

/// The 24 outer-ball vertices on the 3_1, 5_1, 5_2, 6_2 span, compared up
/// to one sign choice per coordinate.
fn table_4d() -> Result<(Value, Vec<String>), Error> {
    let basis = vec![
        catalog("3_1")?,
        catalog("5_1")?,
        catalog("5_2")?,
        catalog("6_2")?,
    ];
    let ball = unit_ball(&basis, Category::Topological, &default_registry())?;
    let mut mism = Vec::new();
    let listed: [[i64; 4]; 12] = [
        [2, -1, 0, 0],
        [0, 1, -2, 0],
        [0, 1, 0, -1],
        [2, -1, 0, -1],
        [0, 0, 1, 0],
        [2, 0, -1, 0],
        [0, 1, 0, -2],
        [2, 1, -2, -2],
        [2, 1, -2, -1],
        [0, 1, -2, 1],
        [0, 0, 1, -2],
        [2, 0, -1, -2],
    ];
    match &ball.outer_vertices {
        None => mism.push("outer ball unbounded".into()),
        Some(v) => {
            if v.vertices().len() != 24 {
                mism.push(format!("vertex count {}", v.vertices().len()));
            } else {
                let mut got = v.vertices().to_vec();
                got.sort();
                let matched = (0..16u32).any(|mask| {
                    let sgn = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
                    let mut expected: Vec<Vec<Q>> = Vec::new();
                    for row in &listed {
                        let w: Vec<Q> =
                            row.iter().enumerate().map(|(i, &c)| qi(c * sgn(i))).collect();
                        expected.push(w.iter().map(|c| -c.clone()).collect());
                        expected.push(w);
                    }
                    expected.sort();
                    got == expected
                });
                if !matched {
                    mism.push("vertex coordinates".into());
                }
            }
        }
    }
    Ok((ball.to_json(), mism))
}
