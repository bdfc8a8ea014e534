mod common;

use dequant::curve::{Ambient, Side};
use dequant::geom::{q, q_ratio, Point};
use dequant::patchwork::{
    affine_extension, combinatorial_patchwork, ellipse, line, polynomial_patchwork, projective_glue, ComponentKind,
    PatchworkInput, QUADRANTS,
};
use dequant::semiring::Deform;
use dequant::tracer::{compare_topology, exact_sign, scaled_window, stabilize_plane, stabilize_t, trace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

fn endpoint_degrees(input: &PatchworkInput) -> HashMap<Point, usize> {
    let curve = combinatorial_patchwork(input);
    let mut degree = HashMap::new();
    for path in &curve.paths {
        let n = path.points.len();
        for (i, p) in path.points.iter().enumerate() {
            let d = if path.closed || (i > 0 && i + 1 < n) { 2 } else { 1 };
            *degree.entry(p.clone()).or_insert(0) += d;
        }
    }
    degree
}

#[test]
fn midline_curves_are_one_manifolds() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..40 {
        let m = rng.gen_range(1..=5);
        let input = common::random_convex_input(&mut rng, m, 3 * m);
        for (p, d) in endpoint_degrees(&input) {
            assert!(d == 1 || d == 2);
            let on_boundary = p.x == q(0) || p.y == q(0) || &p.x + &p.y == q(m);
            assert_eq!(d == 1, on_boundary, "{p}");
        }
        let affine = affine_extension(&input).unwrap();
        let glued = projective_glue(&combinatorial_patchwork(&affine)).unwrap();
        let s = glued.summary();
        // a plane curve of degree m has at most one pseudoline, exactly one when m is odd
        assert_eq!(s.pseudolines, (m % 2) as usize);
    }
}

#[test]
fn affine_extension_commutes_with_reflection_of_b_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let m = rng.gen_range(1..=4);
        let input = common::random_convex_input(&mut rng, m, 2 * m);
        let affine = affine_extension(&input).unwrap();
        let b = polynomial_patchwork(&input, 0.5).unwrap();
        for (sx, sy) in QUADRANTS {
            let reflected = b.reflected(sx, sy);
            for ((k, l), sign, _) in reflected.signed_log_terms() {
                let v = &affine.vertices()[affine.index_of(sx * k, sy * l).unwrap()];
                assert_eq!(v.sign, sign);
            }
        }
    }
}

#[test]
fn log_domain_signs_agree_with_exact_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..20 {
        let m = rng.gen_range(1..=4);
        let input = common::random_convex_input(&mut rng, m, 2 * m);
        let b = polynomial_patchwork(&input, 0.5).unwrap();
        for _ in 0..50 {
            let (a, c) = (rng.gen_range(1..=64), rng.gen_range(1..=64));
            let (x, y) = (q_ratio(a, 16), q_ratio(c, 16));
            let exact = exact_sign(&input, 1, &x, &y).unwrap();
            let f = b.log_difference((a as f64 / 16.0).ln(), (c as f64 / 16.0).ln());
            if f.abs() > 1e-9 {
                assert_eq!(f > 0.0, exact == std::cmp::Ordering::Greater);
            }
        }
    }
}

#[test]
fn coefficients_form_a_dequantizing_family() {
    let input = ellipse();
    let t: f64 = 1e-3;
    let d = Deform::from_patchwork_t(t).unwrap();
    let b = polynomial_patchwork(&input, t).unwrap();
    for ((k, l), _, log_coeff) in b.signed_log_terms() {
        let v = &input.vertices()[input.index_of(k, l).unwrap()];
        // a = e^{−ν}, raised to 1/h
        let ln_a = -dequant::geom::to_f64(&v.nu);
        assert!((ln_a / d.h() - log_coeff).abs() < 1e-12);
    }
}

#[test]
fn random_inputs_trace_like_their_midlines() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..4 {
        let m = rng.gen_range(1..=3);
        let input = common::random_convex_input(&mut rng, m, 2 * m);
        let quadrant = stabilize_t(&input, 192).unwrap();
        let c = compare_topology(&combinatorial_patchwork(&input), &quadrant.report.summary());
        assert!(c.matches, "{c:?}");
        let plane = stabilize_plane(&input, 192).unwrap();
        let predicted = combinatorial_patchwork(&affine_extension(&input).unwrap());
        let c = compare_topology(&predicted, &plane.report.summary());
        assert!(c.matches, "{c:?}");
        assert_eq!(c.traced_projective, c.predicted_projective);
    }
}

#[test]
fn finer_grids_keep_every_component() {
    let input = ellipse();
    let s = stabilize_t(&input, 128).unwrap();
    let b = dequant::patchwork::polynomial_patchwork_ln(&input, s.ln_t);
    let mut last = 0;
    for res in [128, 256, 512] {
        let r = trace(&b, &scaled_window(&input, s.ln_t, res).unwrap()).unwrap();
        assert!(r.components >= last);
        last = r.components;
    }
    assert_eq!(last, 2);
}

#[test]
fn line_and_ellipse_in_the_projective_plane() {
    let l = projective_glue(&combinatorial_patchwork(&affine_extension(&line()).unwrap())).unwrap();
    assert_eq!(l.components.len(), 1);
    assert_eq!(l.components[0].kind, ComponentKind::Pseudoline);
    let e = projective_glue(&combinatorial_patchwork(&affine_extension(&ellipse()).unwrap())).unwrap();
    assert_eq!(e.components.len(), 1);
    assert_eq!(e.components[0].kind, ComponentKind::Oval);
    assert_eq!(e.components[0].boundary_crossings, 0);
    assert!(matches!(e.affine.ambient, Ambient::Square { degree: 2 }));
    let ends = combinatorial_patchwork(&ellipse()).summary();
    assert_eq!(ends.count_on(Side::Hypotenuse), 0);
}
