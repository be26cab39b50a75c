//! Polynomials: integrals of a function of the distance matrix of `k` sampled
//! points. Degree-2 polynomials see only `w`, so they cannot tell exp25_x and
//! exp25_y apart; a degree-3 polynomial can.
//!
//! `cargo run --example polynomials`

use mmspace::diagnostics::{exp25_x, exp25_y};
use mmspace::rng::seeded;
use mmspace::sampling::{
    evaluate_polynomial_exact, evaluate_polynomial_mc, sample_distance_matrix, Polynomial,
};

fn main() -> mmspace::Result<()> {
    let (x, y) = (exp25_x(), exp25_y());

    let mean_distance = Polynomial::new(2, |d| d[0]);
    println!(
        "E r(x1, x2):        {:.6} vs {:.6}",
        evaluate_polynomial_exact(&x, &mean_distance)?,
        evaluate_polynomial_exact(&y, &mean_distance)?
    );

    // three samples land on one point
    let all_zero = Polynomial::new(3, |d| f64::from(u8::from(d.iter().all(|&v| v == 0.0))));
    println!(
        "P(all three equal): {:.6} vs {:.6}",
        evaluate_polynomial_exact(&x, &all_zero)?,
        evaluate_polynomial_exact(&y, &all_zero)?
    );

    let mut rng = seeded(1, 0);
    let (mean, se) = evaluate_polynomial_mc(&y, &all_zero, 100_000, &mut rng)?;
    println!("Monte Carlo on exp25_y: {mean:.4} +/- {se:.4}");

    let sample = sample_distance_matrix(&y, 4, &mut rng)?;
    println!("a sampled 4 x 4 distance matrix: {:?}", sample.entries());
    Ok(())
}
