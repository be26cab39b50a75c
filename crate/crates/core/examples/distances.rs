//! Distances between spaces, each returned as a certified interval with
//! witnesses. Small instances are solved exactly; larger ones get bounds.
//!
//! `cargo run --release --example distances`

use mmspace::diagnostics::{exp212ii, exp25_x, exp25_y, exp62_x, exp62_y};
use mmspace::metrics::{
    eurandom, gromov_hausdorff, gromov_prohorov, gromov_wasserstein, mod_eurandom,
    CertifiedInterval,
};
use mmspace::MmSpace;

type Metric = fn(&MmSpace, &MmSpace) -> CertifiedInterval;

fn main() {
    let metrics: [(&str, Metric); 5] = [
        ("Gromov-Prohorov", gromov_prohorov),
        ("Gromov-Wasserstein", gromov_wasserstein),
        ("Gromov-Hausdorff", gromov_hausdorff),
        ("Eurandom", eurandom),
        ("modified Eurandom", mod_eurandom),
    ];
    let pairs = [
        ("exp25_x", exp25_x(), "exp25_y", exp25_y()),
        ("exp62_x", exp62_x(), "exp62_y", exp62_y()),
        ("exp212ii:2", exp212ii(2), "exp212ii:3", exp212ii(3)),
    ];
    for (a, x, b, y) in &pairs {
        println!("{a} vs {b}");
        for (name, f) in metrics {
            let c = f(x, y);
            println!(
                "  {name:<20} [{:.6}, {:.6}] {}",
                c.lower,
                c.upper,
                c.method()
            );
        }
    }

    // the upper witness of an exact Gromov-Prohorov value is a relation
    let c = gromov_prohorov(&exp25_x(), &exp25_y());
    println!("\nwitness: {}", c.upper_witness.describe());
}
