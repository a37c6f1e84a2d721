//! Fitness landscape of OneTrapZeroTrap and of a masked variant.
//!
//! cargo run --example otzt_landscape -- 10

use emo_lab::model::Bitstring;
use emo_lab::problems::ProblemInstance;

fn main() -> emo_lab::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(Ok(10), |s| s.parse())
        .expect("n must be an integer");
    let problem = ProblemInstance::otzt(n);

    println!("{problem}: Pareto front {:?}", problem.front_fitness());
    for k in 0..=n {
        let x = Bitstring::zeros(n).with_flipped(0..k);
        let f = problem.evaluate(&x)?;
        let tag = if problem.is_pareto_optimal(&x) {
            "optimal"
        } else {
            ""
        };
        println!("{k:>3} ones  {f:<10} {tag}");
    }

    // A mask moves the optima to `mask` and its complement.
    let mask: Bitstring = "1010".repeat(n.div_ceil(4))[..n].parse()?;
    let masked = ProblemInstance::otzt_masked(n, mask.clone())?;
    println!("\n{masked}");
    for x in [mask.clone(), mask.complement(), Bitstring::zeros(n)] {
        println!(
            "{x}  {}  optimal = {}",
            masked.evaluate(&x)?,
            masked.is_pareto_optimal(&x)
        );
    }
    Ok(())
}
