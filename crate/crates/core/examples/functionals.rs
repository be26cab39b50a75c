//! Sampling functionals of one space: the distance distribution `w`, the
//! random distance distribution, moment measures, the modulus of mass
//! distribution `v_delta` and an epsilon-net.
//!
//! `cargo run --example functionals`

use mmspace::diagnostics::{exp212ii, exp25_x, exp25_y, exp62_x};
use mmspace::functional::{
    distance_distribution, epsilon_net, modulus_of_mass_distribution, moment_measure,
    random_distance_distribution,
};

fn main() -> mmspace::Result<()> {
    // two spaces with the same distance distribution
    for (name, x) in [("exp25_x", exp25_x()), ("exp25_y", exp25_y())] {
        println!("w({name}) = {:?}", distance_distribution(&x).atoms());
    }

    let x = exp62_x();
    println!("\nrandom distance distribution of exp62_x:");
    for (law, mass) in random_distance_distribution(&x).atoms() {
        println!("  {mass:.2} x {:?}", law.atoms());
    }

    let m2 = moment_measure(&x, 2)?;
    println!(
        "\nsecond moment measure of exp62_x has {} atoms",
        m2.atoms().len()
    );
    println!("  mass at (2, 3): {:.4}", m2.mass_of(&[2.0, 3.0]));

    println!("\nv_delta on the uniform 8-point simplex:");
    let s = exp212ii(3);
    for delta in [0.5, 0.2, 0.125, 0.1] {
        println!(
            "  delta = {delta:<5} v = {}",
            modulus_of_mass_distribution(&s, delta)
        );
    }

    let net = epsilon_net(&exp62_x(), 0.05, 0.5)?;
    println!("\nepsilon-net of exp62_x (delta 0.05, eps 0.5): {net:?}");
    Ok(())
}
