//! Dust classification of Lambda measures: the closed-form classifier
//! against the numerical probe of the integral of x^-1 Lambda(dx).
//!
//! `cargo run --example dust`

use mmspace::coalescent::{dust_classifier, dust_probe, LambdaMeasure};

fn main() {
    let catalog = [
        LambdaMeasure::kingman(),
        LambdaMeasure::bolthausen_sznitman(),
        LambdaMeasure::beta(1.5, 0.5, 1.0),
        LambdaMeasure::beta(0.5, 1.5, 1.0),
        LambdaMeasure::atom(0.5, 1.0),
        LambdaMeasure::kingman().plus(LambdaMeasure::beta(1.75, 0.25, 1.0)),
    ];
    for l in &catalog {
        let probe = dust_probe(l, 40);
        println!(
            "{:<24} classifier {:<9} probe {:<9} ratio {:.4}",
            l.to_string(),
            dust_classifier(l).to_string(),
            probe.verdict.to_string(),
            probe.ratio
        );
    }
}
