//! The verification suites, and what a broken sort looks like to them.

use emo_lab::harness::verify::{check_sorting, run_suite, Suite, VerifyOptions};
use emo_lab::model::FitnessVector;
use emo_lab::ranking::LayerPartition;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> emo_lab::Result<()> {
    let opts = VerifyOptions {
        cases: 2_000,
        ..VerifyOptions::default()
    };
    for suite in Suite::ALL {
        println!("{}", run_suite(suite, &opts)?);
    }

    // Puts every point in one layer.
    let broken = |p: &[FitnessVector]| LayerPartition::from_layers(vec![(0..p.len()).collect()]);
    println!(
        "{}",
        check_sorting(broken, 100, 4, &mut ChaCha8Rng::seed_from_u64(0))
    );
    Ok(())
}
