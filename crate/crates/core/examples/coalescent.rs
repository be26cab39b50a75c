//! Lambda-coalescents as random ultrametric measure spaces: merger rates,
//! a Gillespie run, the induced space and the thin-ball fraction.
//!
//! `cargo run --release --example coalescent`

use mmspace::coalescent::{
    coalescent_to_mmspace, empirical_ball_mass_curve, lambda_rate, simulate, total_merge_rate,
    LambdaMeasure,
};
use mmspace::functional::distance_distribution;
use mmspace::rng::seeded;

fn main() -> mmspace::Result<()> {
    let beta = LambdaMeasure::beta(1.5, 0.5, 1.0);
    println!("merger rates for {beta}, b = 5:");
    for k in 2..=5 {
        println!("  lambda(5, {k}) = {:.6}", lambda_rate(&beta, 5, k));
    }
    println!("  total = {:.6}", total_merge_rate(&beta, 5));

    let run = simulate(&beta, 10, &mut seeded(1, 0), None)?;
    println!("\nrun with 10 individuals:");
    for e in run.events() {
        println!("  t = {:.4}: blocks {:?} merge", e.time, e.blocks);
    }
    let x = coalescent_to_mmspace(&run)?;
    println!("ultrametric: {}", x.is_ultrametric(1e-12));
    println!(
        "mean pairwise coalescence time: {:.4}",
        distance_distribution(&x).mean()
    );

    // mass in thin balls at time 0.05: Kingman comes down from infinity,
    // Beta(1.5, 0.5) keeps dust
    for l in [LambdaMeasure::kingman(), beta] {
        let curve =
            empirical_ball_mass_curve(&l, 500, 0.05, &[0.01, 0.002], 20, &mut seeded(7, 0))?;
        for p in curve {
            println!(
                "{:<14} delta {:<6} thin fraction {:.4} +/- {:.4}",
                l.to_string(),
                p.delta,
                p.mean,
                p.stderr
            );
        }
    }
    Ok(())
}
