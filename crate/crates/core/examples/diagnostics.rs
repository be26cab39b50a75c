//! Precompactness diagnostics for families of spaces and for a random
//! sampler, plus the convergence cross-check on the simplex sequence.
//!
//! `cargo run --release --example diagnostics`

use mmspace::coalescent::{coalescent_to_mmspace, simulate, LambdaMeasure};
use mmspace::diagnostics::{
    convergence_crosscheck, exp212i, exp212ii, precompactness_report, tightness_report, Thresholds,
};
use mmspace::rng::{seeded, StdRng};
use mmspace::sampling::Polynomial;
use mmspace::MmSpace;

fn main() -> mmspace::Result<()> {
    let deltas: Vec<f64> = (0..=8).map(|j| 0.5f64.powi(j)).collect();
    let cs = [1.0, 2.0, 5.0];
    let th = Thresholds::default();

    for (name, family) in [
        (
            "two points drifting apart",
            (1..=8).map(exp212i).collect::<Vec<MmSpace>>(),
        ),
        ("simplices with 2^n points", (1..=8).map(exp212ii).collect()),
    ] {
        let r = precompactness_report(&family, &deltas, &cs, th)?;
        println!("{name}: (i) {}, (ii) {}", r.condition_i, r.condition_ii);
    }

    let kingman = LambdaMeasure::kingman();
    let mut sampler = |rng: &mut StdRng| coalescent_to_mmspace(&simulate(&kingman, 40, rng, None)?);
    let r = tightness_report(
        &mut sampler,
        20,
        &deltas,
        &[0.05],
        &cs,
        th,
        &mut seeded(3, 0),
    )?;
    println!(
        "Kingman trees, 40 leaves: (i) {}, (ii) {}",
        r.condition_i, r.condition_ii
    );

    let seq: Vec<MmSpace> = (1..=4).map(exp212ii).collect();
    let polys = vec![Polynomial::new(2, |d| d[0])];
    let table = convergence_crosscheck(&seq, &polys, 0.3)?;
    for row in &table.rows {
        println!(
            "  X_{} vs X_{}: GPr <= {:.4}, Eurandom <= {:.4}, polynomial gap {:.4}",
            row.index + 1,
            row.index + 2,
            row.gpr_upper,
            row.eurandom_upper,
            row.gaps[0]
        );
    }
    println!("Cauchy on the probed polynomials: {}", table.cauchy);
    Ok(())
}
