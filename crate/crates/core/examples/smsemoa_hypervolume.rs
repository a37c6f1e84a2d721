//! Hypervolume contributions in an OneTrapZeroTrap layer.
//!
//! With the default reference point the two extremes of a layer contribute
//! the most, so SMS-EMOA never ejects them.

use emo_lab::hypervolume::{contributions, hypervolume_2d, smsemoa_eject, HypervolumeConfig};
use emo_lab::model::FitnessVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> emo_lab::Result<()> {
    let n = 16usize;
    let layer: Vec<FitnessVector> = [2, 5, 9, 13]
        .iter()
        .map(|&k| FitnessVector::pair(k, n as i64 - k))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for h in [
        HypervolumeConfig::new(0, 0),
        HypervolumeConfig::default_for(n),
    ] {
        let volume = hypervolume_2d(&layer, h.reference)?;
        let delta = contributions(&layer, h.reference)?;
        let out = smsemoa_eject(&layer, h.reference, &mut rng)?;
        println!(
            "h = {:?}: volume {volume}, contributions {delta:?}, ejects {}",
            h.reference, layer[out]
        );
        println!("  separates extremes: {}", h.separates_extremes(n));
    }
    Ok(())
}
