#![allow(dead_code)]

use dequant::geom::q;
use dequant::patchwork::{regular_triangulation, PatchworkInput, Sign};
use rand::Rng;

/// Lattice points of Δ_m.
pub fn lattice(m: i64) -> Vec<(i64, i64)> {
    (0..=m).flat_map(|k| (0..=m - k).map(move |l| (k, l))).collect()
}

/// A random regular triangulation of Δ_m with integer heights in
/// `0..=max_height` and random signs; heights are redrawn until no four
/// lifted points share a lower face.
pub fn random_convex_input<R: Rng>(rng: &mut R, m: i64, max_height: i64) -> PatchworkInput {
    loop {
        let pts: Vec<_> = lattice(m)
            .into_iter()
            .map(|(k, l)| {
                let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                (k, l, sign, q(rng.gen_range(0..=max_height)))
            })
            .collect();
        if let Ok(input) = regular_triangulation(m, &pts) {
            return input;
        }
    }
}
