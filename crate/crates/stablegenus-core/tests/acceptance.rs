//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stablegenus_core::cg::{
    cg_sigma, cg_threshold, certify, construct_j, CGFamily, Character, SearchSpace, Verdict,
};
use stablegenus_core::fekete::{
    audit_subadditive, fekete_n0, fekete_upper, SubadditiveTable, Violation,
};
use stablegenus_core::knot::{
    alexander_poly, catalog, parse_expr, seifert_matrix_torus, torus, torus_alexander, BasisKnot,
    KnotExpr,
};
use stablegenus_core::polytope::Containment;
use stablegenus_core::ratio::{q, qi, Q, Z};
use stablegenus_core::signatures::{
    evaluate, interval_functionals, max_half_abs, sigma_sevenths, stepfun_from_seifert,
    torus_jumps,
};
use stablegenus_core::stable::{
    default_registry, g_st_interval, lower_bound, unit_ball, upper_bound, Category,
};

fn pass(n: usize, what: &str) {
    println!("criterion {} ({}): pass", n, what);
}

fn pair_basis() -> Vec<BasisKnot> {
    vec![torus(2, 7).unwrap(), torus(2, 11).unwrap()]
}

fn quad_basis() -> Vec<BasisKnot> {
    vec![
        catalog("3_1").unwrap(),
        catalog("5_1").unwrap(),
        catalog("5_2").unwrap(),
        catalog("6_2").unwrap(),
    ]
}

#[test]
fn criterion_1_interval_functionals() {
    let fs = interval_functionals(&pair_basis()).unwrap();
    let got: Vec<Vec<Q>> = fs.iter().map(|f| f.coefficients.clone()).collect();
    let expected: Vec<Vec<Q>> = [
        (0, 1),
        (1, 1),
        (1, 2),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 4),
        (3, 5),
    ]
    .iter()
    .map(|&(a, b)| vec![qi(a), qi(b)])
    .collect();
    // up to overall sign per functional, in interval order
    assert_eq!(got.len(), expected.len());
    for (g, e) in got.iter().zip(&expected) {
        let neg: Vec<Q> = e.iter().map(|c| -c.clone()).collect();
        assert!(g == e || g == &neg, "got {:?}, expected {:?}", g, e);
    }
    pass(1, "eight interval functionals on the T(2,7), T(2,11) span");
}

#[test]
fn criterion_2_two_torus_ball_and_interval() {
    let reg = default_registry();
    let ball = unit_ball(&pair_basis(), Category::Topological, &reg).unwrap();
    let verts = ball.outer_vertices.as_ref().expect("outer ball is bounded");
    assert!(verts.vertices().contains(&vec![q(3, 2), qi(-1)]));
    assert!(verts.vertices().contains(&vec![q(-3, 2), qi(1)]));
    let pt = [qi(0), q(1, 5)];
    assert_eq!(ball.outer.contains(&pt).unwrap(), Containment::Boundary);
    assert!(!ball.outer.is_vertex(&pt).unwrap());

    let e = parse_expr("3*T(2,7) - 2*T(2,11)").unwrap();
    let r = g_st_interval(&e, Category::Topological, &reg).unwrap();
    assert_eq!(r.lower, qi(2));
    assert_eq!(r.upper, Some(qi(2)));
    assert!(r.determined);
    pass(2, "T(2,7), T(2,11) outer ball vertices and the [2,2] interval");
}

#[test]
fn criterion_3_four_dimensional_ball() {
    let ball = unit_ball(&quad_basis(), Category::Topological, &default_registry()).unwrap();
    let verts = ball.outer_vertices.as_ref().expect("outer ball is bounded");
    assert_eq!(verts.vertices().len(), 24);
    let listed: Vec<Vec<i64>> = vec![
        vec![2, -1, 0, 0],
        vec![0, 1, -2, 0],
        vec![0, 1, 0, -1],
        vec![2, -1, 0, -1],
        vec![0, 0, 1, 0],
        vec![2, 0, -1, 0],
        vec![0, 1, 0, -2],
        vec![2, 1, -2, -2],
        vec![2, 1, -2, -1],
        vec![0, 1, -2, 1],
        vec![0, 0, 1, -2],
        vec![2, 0, -1, -2],
    ];
    // match up to one global sign choice per basis knot
    let mut matched = false;
    'signs: for mask in 0..16u32 {
        let sign = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
        let mut expected: Vec<Vec<Q>> = Vec::new();
        for v in &listed {
            let w: Vec<Q> = v.iter().enumerate().map(|(i, &c)| qi(c * sign(i))).collect();
            expected.push(w.iter().map(|c| -c.clone()).collect());
            expected.push(w);
        }
        expected.sort();
        let mut got = verts.vertices().to_vec();
        got.sort();
        if got == expected {
            matched = true;
            break 'signs;
        }
    }
    assert!(matched, "vertex set differs from the 12 listed antipodal pairs");
    pass(3, "24 outer-ball vertices on the 3_1, 5_1, 5_2, 6_2 span");
}

#[test]
fn criterion_4_smooth_versus_topological() {
    let t37 = KnotExpr::knot(torus(3, 7).unwrap());
    assert_eq!(max_half_abs(&t37).unwrap(), qi(5));
    assert_eq!(evaluate(&t37, &q(1, 2)).unwrap().abs() / qi(2), qi(4));
    let (smooth_lower, witness) = lower_bound(&t37, Category::Smooth).unwrap();
    assert_eq!(smooth_lower, qi(6));
    assert_eq!(witness.label, "tau");

    let basis = vec![torus(3, 7).unwrap(), torus(2, 5).unwrap()];
    let reg = default_registry();
    let top = unit_ball(&basis, Category::Topological, &reg).unwrap();
    let smooth = unit_ball(&basis, Category::Smooth, &reg).unwrap();
    let pt = [q(1, 5), qi(0)];
    assert_ne!(top.outer.contains(&pt).unwrap(), Containment::Outside);
    assert_eq!(smooth.outer.contains(&pt).unwrap(), Containment::Outside);
    pass(4, "smooth bounds exceed signature bounds on the T(3,7), T(2,5) span");
}

#[test]
fn criterion_5_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, qq) in [(2i64, 3i64), (2, 5), (2, 7), (2, 11), (3, 5), (3, 7)] {
        let v = seifert_matrix_torus(p, qq).unwrap();
        assert_eq!(
            alexander_poly(&v),
            torus_alexander(p as u32, qq as u32),
            "Alexander polynomial of T({},{})",
            p,
            qq
        );
        let from_seifert = stepfun_from_seifert(&v).unwrap();
        let closed_form = torus_jumps(p, qq).unwrap();
        for _ in 0..100 {
            let den = rng.gen_range(2..500i64);
            let num = rng.gen_range(1..=den / 2);
            let t = q(num, den);
            assert_eq!(
                from_seifert.eval_prime(&t).unwrap(),
                closed_form.eval_prime(&t).unwrap(),
                "T({},{}) at t = {}/{}",
                p,
                qq,
                num,
                den
            );
        }
    }
    pass(5, "Seifert-matrix and closed-form signatures agree at random t");
}

#[test]
fn criterion_6_branched_cover_certificates() {
    assert_eq!(cg_threshold(&q(1, 2)).unwrap(), qi(6));
    let j = construct_j(&q(1, 2), SearchSpace::default()).unwrap();
    let (s1, s2, s3) = sigma_sevenths(&j).unwrap();
    assert!(s1 >= qi(6) && s2 >= qi(6) && s3 >= qi(6), "sevenths {:?}", (s1, s2, s3));
    let cert = certify(&q(1, 2), &j).unwrap();
    assert_eq!(cert.verdict, Verdict::Valid);
    let reparsed =
        stablegenus_core::cg::verify_certificate(&cert.to_json(), parse_expr).unwrap();
    assert_eq!(reparsed.verdict, Verdict::Valid);
    let fam = CGFamily::twisted(&j, 1);
    assert_eq!(cg_sigma(&fam, Character { a: 0, b: 0 }).unwrap(), qi(0));
    pass(6, "threshold, companion search, and certificate verification");
}

#[test]
fn criterion_7_subadditive_limits() {
    let half = SubadditiveTable::from_pairs(
        &(1..=50u64).map(|n| (n, qi(n.div_ceil(2) as i64))).collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(fekete_upper(&half).unwrap(), q(1, 2));

    // threshold contract on synthetic tables f(n) = ceil(n/2) + c up to 200
    for c in 0..3i64 {
        let table = SubadditiveTable::from_pairs(
            &(1..=200u64)
                .map(|n| (n, qi(n.div_ceil(2) as i64) + qi(c)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(audit_subadditive(&table).is_empty());
        let limit = q(1, 2);
        for eps in [q(1, 2), q(1, 4)] {
            let f = |n: u64| table.get(n).unwrap().clone();
            let cap_n = (1..=200u64)
                .find(|&n| f(n) / qi(n as i64) <= &limit + &eps / qi(2))
                .unwrap();
            let bound_b = (1..=cap_n).map(f).max().unwrap();
            let n0 = fekete_n0(cap_n, &bound_b, &eps).unwrap();
            let mut checked = 0;
            for (n, v) in table.iter() {
                if Z::from(*n) >= n0 {
                    assert!(v / qi(*n as i64) <= &limit + &eps, "c={} eps={:?} n={}", c, eps, n);
                    checked += 1;
                }
            }
            assert!(checked > 0, "contract must be exercised (c={}, n0={})", c, n0);
        }
    }

    // planted violation is flagged
    let mut bad = half.clone();
    bad.insert(4, qi(9)).unwrap();
    assert!(audit_subadditive(&bad)
        .iter()
        .any(|v| matches!(v, Violation::Additive { .. } | Violation::Multiplicative { .. })));
    pass(7, "subadditive limit bound, threshold contract, and audit");
}

#[test]
fn criterion_8_seminorm_properties() {
    let reg = default_registry();
    let bases = [pair_basis(), vec![torus(3, 7).unwrap(), torus(2, 5).unwrap()], quad_basis()];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let random_expr = |rng: &mut ChaCha8Rng, basis: &[BasisKnot]| {
        let mut e = KnotExpr::zero();
        for k in basis {
            let num = rng.gen_range(-4..=4i64);
            let den = rng.gen_range(1..=3i64);
            e.add_term(k.clone(), q(num, den));
        }
        e
    };
    let low = |e: &KnotExpr| lower_bound(e, Category::Topological).unwrap().0;
    let up = |e: &KnotExpr| upper_bound(e, &reg).unwrap().map(|w| w.value);
    for trial in 0..500 {
        let basis = &bases[trial % bases.len()];
        let x = random_expr(&mut rng, basis);
        let y = random_expr(&mut rng, basis);
        let c = q(rng.gen_range(-3..=3i64), rng.gen_range(1..=2i64));

        // homogeneity
        assert_eq!(low(&x.scale(&c)), c.abs() * low(&x));
        // subadditivity
        assert!(low(&x.add(&y)) <= low(&x) + low(&y));
        // mirror symmetry
        assert_eq!(low(&x.mirror()), low(&x));
        assert_eq!(up(&x.mirror()), up(&x));
        // lower bound never exceeds an available upper bound
        if let Some(u) = up(&x) {
            assert!(low(&x) <= u, "trial {}: {} > {:?}", trial, low(&x), u);
            if !c.is_zero() {
                assert_eq!(up(&x.scale(&c)), Some(c.abs() * &u));
            }
            if let Some(uy) = up(&y) {
                let uxy = up(&x.add(&y)).expect("sum stays in the facts span");
                assert!(uxy <= u + uy);
            }
        }
    }
    pass(8, "homogeneity, subadditivity, mirror symmetry on 500 random classes");
}
