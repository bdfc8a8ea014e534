mod common;

use dequant::envelope::{check_genericity, dual_subdivision, separating_line};
use dequant::patchwork::{check_convexity, combinatorial_patchwork};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_liftings_are_dual_to_their_envelopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..40 {
        let m = 1 + round % 5;
        let input = common::random_convex_input(&mut rng, m, 4 * m);
        assert!(check_convexity(&input).is_convex());
        let env = input.envelope();
        assert!(env.hidden().is_empty());
        assert!(check_genericity(&env).is_generic());
        assert_eq!(
            dual_subdivision(&env).cell_sets(),
            input.triangle_sets(),
            "round {round}"
        );
    }
}

#[test]
fn separating_line_agrees_with_midlines() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for round in 0..30 {
        let m = 1 + round % 4;
        let input = common::random_convex_input(&mut rng, m, 3 * m);
        let env = input.envelope();
        let sep = separating_line(&env, &input.plus_mask()).unwrap();
        let mid = combinatorial_patchwork(&input);
        assert_eq!(sep.loops(), mid.loops());
        assert_eq!(sep.arcs(), mid.arcs());
        assert!(sep.summary().matches(&mid.summary()), "round {round}");
    }
}

#[test]
fn envelope_is_a_maximum_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let input = common::random_convex_input(&mut rng, 3, 9);
    let env = input.envelope();
    for v in env.vertices() {
        let best = env.planes().iter().map(|p| p.value(&v.point)).max().unwrap();
        assert_eq!(env.value_at(&v.point), best);
        assert_eq!(v.planes.len(), 3);
    }
}
