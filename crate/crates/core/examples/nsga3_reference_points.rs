//! NSGA-III selection step by step on one critical layer.

use emo_lab::model::FitnessVector;
use emo_lab::nsga3::{
    associate, compute_context, das_dennis, nsga3_select, ReferencePointSet, DEFAULT_EPS_NADIR,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> emo_lab::Result<()> {
    let n = 20;
    // Interior OneTrapZeroTrap points with 3, 8, 11 and 17 ones.
    let layer: Vec<FitnessVector> = [3, 8, 11, 17]
        .iter()
        .map(|&k| FitnessVector::pair(k, n - k))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    for refs in [ReferencePointSet::units(2), das_dennis(2, 4)?] {
        println!("reference points {refs}: {:?}", refs.points());
        let ctx = compute_context(&layer, DEFAULT_EPS_NADIR)?;
        let normalized: Vec<Vec<f64>> = layer.iter().map(|f| ctx.normalize(f)).collect();
        for (f, a) in layer.iter().zip(associate(&normalized, &refs, &mut rng)?) {
            println!("  {f:<8} -> ray {} at distance {:.3}", a.point, a.distance);
        }
        // Two slots for five rays: the extremes are no longer guaranteed a place.
        let chosen = nsga3_select(&[], &layer, &refs, 2, DEFAULT_EPS_NADIR, &mut rng)?;
        let kept: Vec<String> = chosen.iter().map(|&i| layer[i].to_string()).collect();
        println!("  two survivors: {}", kept.join(" "));
    }
    Ok(())
}
