use dequant::logpaper::{positive_roots_bracket, PosPolynomial1, RootKind, SignedPolynomial1};
use dequant::semiring::Deform;
use proptest::prelude::*;

fn polynomial() -> impl Strategy<Value = PosPolynomial1> {
    prop::collection::btree_map(0u32..12, -10.0f64..10.0, 1..=8)
        .prop_map(|m| PosPolynomial1::from_log_coefficients(&m.into_iter().collect::<Vec<_>>()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_graph_is_sandwiched(p in polynomial(), u in -20.0f64..20.0) {
        let (l, m) = (p.eval_log(u), p.eval_max(u));
        prop_assert!(m <= l + 1e-12);
        prop_assert!(l <= m + (p.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn scaled_gap_shrinks_with_h(p in polynomial(), u in -20.0f64..20.0) {
        let mut last = f64::INFINITY;
        for h in [1.0, 0.5, 0.25, 0.125] {
            let gap = p.eval_scaled(u, Deform::new(h).unwrap()).unwrap() - p.eval_max(u);
            prop_assert!(gap >= -1e-12);
            prop_assert!(gap <= h * (p.len() as f64).ln() + 1e-12);
            prop_assert!(gap <= last + 1e-12);
            last = gap;
        }
    }
}

fn expand(roots: &[i64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r as f64;
        }
        c = next;
    }
    c
}

#[test]
fn recovers_roots_of_expanded_products() {
    for roots in [vec![1, 2], vec![3, 7, 20], vec![1, 5, 9, 33, 50], vec![49, 50]] {
        let c = expand(&roots);
        let terms: Vec<(u32, f64)> = c
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(k, &a)| (k as u32, a))
            .collect();
        let q = SignedPolynomial1::from_coefficients(&terms).unwrap();
        let found = positive_roots_bracket(&q, (-1.0, 4.5), 4096).unwrap();
        assert_eq!(found.len(), roots.len(), "{roots:?}");
        for (b, &r) in found.iter().zip(&roots) {
            assert_eq!(b.kind, RootKind::SignChange);
            assert!((b.x() - r as f64).abs() / r as f64 <= 1e-9, "{} vs {r}", b.x());
        }
    }
}

#[test]
fn reflection_finds_negative_roots() {
    // (x + 2)(x − 3) = x² − x − 6
    let q = SignedPolynomial1::from_coefficients(&[(0, -6.0), (1, -1.0), (2, 1.0)]).unwrap();
    let neg = positive_roots_bracket(&q.reflected(), (-3.0, 3.0), 512).unwrap();
    assert_eq!(neg.len(), 1);
    assert!((neg[0].x() - 2.0).abs() < 1e-10);
}
