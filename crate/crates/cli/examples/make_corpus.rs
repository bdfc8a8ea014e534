//! Regenerates the bundled corpus in `crates/cli/corpus/`.
//!
//! ```text
//! cargo run -p dequant-cli --example make_corpus
//! ```

use dequant::envelope::check_genericity;
use dequant::geom::q;
use dequant::patchwork::{check_convexity, ellipse, line, regular_triangulation, PatchworkInput, Sign};
use dequant_cli::input::InputDocument;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;

const SEED: u64 = 20_240_601;
const RANDOM_INSTANCES: usize = 12;

fn random_input(rng: &mut ChaCha8Rng, m: i64) -> PatchworkInput {
    loop {
        let pts: Vec<_> = (0..=m)
            .flat_map(|k| (0..=m - k).map(move |l| (k, l)))
            .map(|(k, l)| {
                let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                (k, l, sign, q(rng.gen_range(0..=2 * m * m)))
            })
            .collect();
        let Ok(input) = regular_triangulation(m, &pts) else {
            continue;
        };
        if check_convexity(&input).is_convex() && check_genericity(&input.envelope()).is_generic() {
            return input;
        }
    }
}

fn write(dir: &Path, name: &str, input: &PatchworkInput) {
    let doc = InputDocument::from_patchwork(input);
    let text = serde_json::to_string_pretty(&doc).expect("documents serialize");
    std::fs::write(dir.join(format!("{name}.json")), text + "\n").expect("corpus directory is writable");
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    std::fs::create_dir_all(&dir).expect("corpus directory can be created");
    write(&dir, "line", &line());
    write(&dir, "ellipse", &ellipse());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..RANDOM_INSTANCES {
        let m = 2 + (i % 3) as i64;
        write(&dir, &format!("random-{:02}", i + 1), &random_input(&mut rng, m));
    }
    println!("wrote {} files to {}", RANDOM_INSTANCES + 2, dir.display());
}
