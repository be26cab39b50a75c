mod common;

use common::*;
use mmspace::coalescent::{coalescent_to_mmspace, simulate, LambdaMeasure};
use mmspace::functional::{
    distance_distribution, modulus_from_random_distance_distribution, modulus_of_mass_distribution,
    moment_measure, random_distance_distribution, thin_mass,
};
use mmspace::io::{space_from_json, space_to_json};
use mmspace::metrics::{
    eurandom, glue, gromov_hausdorff, gromov_prohorov, gromov_wasserstein, mod_eurandom, Relation,
};
use mmspace::rng::seeded;
use mmspace::sampling::sample_distance_matrix;
use mmspace::MmSpace;
use proptest::prelude::*;

/// Shortest-path metrics over random edge lengths; weights from small integers.
fn space(max_n: usize) -> impl Strategy<Value = MmSpace> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(1u32..=8, n * n),
                prop::collection::vec(1u32..=6, n),
            )
        })
        .prop_map(|(edges, raw)| {
            let n = raw.len();
            let mut d: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                0.0
                            } else {
                                edges[i.min(j) * n + i.max(j)] as f64 / 8.0
                            }
                        })
                        .collect()
                })
                .collect();
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                    }
                }
            }
            let s: u32 = raw.iter().sum();
            MmSpace::from_matrix(d, raw.iter().map(|&w| w as f64 / s as f64).collect()).unwrap()
        })
}

/// `v_delta` straight from the definition: the thin mass is constant on each
/// interval between consecutive distances, evaluated by direct ball sums.
fn modulus_oracle(x: &MmSpace, delta: f64) -> f64 {
    let n = x.len();
    let thin = |eps: f64| -> f64 {
        (0..n)
            .filter(|&i| {
                (0..n)
                    .filter(|&j| x.d(i, j) < eps)
                    .map(|j| x.weight(j))
                    .sum::<f64>()
                    <= delta + 1e-12
            })
            .map(|i| x.weight(i))
            .sum()
    };
    let mut levels = x.distinct_distances();
    levels.push(f64::INFINITY);
    for w in levels.windows(2) {
        let g = thin(w[1].min(w[0] + 1e-9));
        if g <= w[1] + 1e-12 {
            return g.max(w[0]);
        }
    }
    unreachable!()
}

const DELTAS: [f64; 7] = [0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.9];

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn modulus_is_monotone_bounded_and_vanishes(x in space(6)) {
        let mut prev = 0.0;
        for &d in &DELTAS {
            let v = modulus_of_mass_distribution(&x, d);
            prop_assert!(v >= prev && v <= 1.0);
            prev = v;
        }
        let lightest = x.weights().iter().copied().fold(1.0, f64::min);
        prop_assert_eq!(modulus_of_mass_distribution(&x, lightest * 0.5), 0.0);
    }

    #[test]
    fn modulus_matches_definition(x in space(6), d in 0.0f64..1.0) {
        prop_assert!((modulus_of_mass_distribution(&x, d) - modulus_oracle(&x, d)).abs() < 1e-12);
    }

    #[test]
    fn small_modulus_bounds_thin_mass(x in space(6)) {
        for &d in &DELTAS {
            let v = modulus_of_mass_distribution(&x, d);
            for eps in [0.05, 0.1, 0.25, 0.5, 1.0] {
                if v < eps {
                    prop_assert!(thin_mass(&x, eps, d) < eps + 1e-12);
                }
            }
        }
    }

    #[test]
    fn first_moment_is_distance_distribution(x in space(6)) {
        let m = moment_measure(&x, 1).unwrap();
        let w = distance_distribution(&x);
        prop_assert_eq!(m.atoms().len(), w.atoms().len());
        for ((p, a), (v, b)) in m.atoms().iter().zip(w.atoms()) {
            prop_assert_eq!(p[0], *v);
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn modulus_through_random_distance_distribution(x in space(6)) {
        let rdd = random_distance_distribution(&x);
        for &d in &DELTAS {
            prop_assert!((modulus_from_random_distance_distribution(&rdd, d) - modulus_of_mass_distribution(&x, d)).abs() < 1e-12);
        }
    }

    #[test]
    fn moment_marginals_are_consistent(x in space(6), k in 1usize..=3) {
        let first = moment_measure(&x, 1).unwrap().marginal(0);
        let mk = moment_measure(&x, k).unwrap();
        for c in 0..k {
            prop_assert!(mk.marginal(c).approx_eq(&first, 1e-12));
        }
    }

    #[test]
    fn sampled_distance_matrices_are_metric(x in space(6), seed in any::<u64>(), m in 2usize..12) {
        let s = sample_distance_matrix(&x, m, &mut seeded(seed, 0)).unwrap();
        prop_assert!(s.is_metric(1e-12));
    }

    #[test]
    fn gluing_keeps_blocks_and_puts_related_pairs_at_half_distortion(
        x in space(4), y in space(4), bits in any::<u64>()
    ) {
        let (n, m) = (x.len(), y.len());
        let mut pairs: Vec<(usize, usize)> = (0..n * m).filter(|c| bits >> c & 1 == 1).map(|c| (c / m, c % m)).collect();
        if pairs.is_empty() { pairs.push((0, 0)); }
        let r = Relation::from_pairs(n, m, &pairs).unwrap();
        let g = glue(&x, &y, &r);
        prop_assert!(g.validate().is_ok());
        for i in 0..n { for k in 0..n { prop_assert_eq!(g.d(i, k).to_bits(), x.d(i, k).to_bits()); } }
        for j in 0..m { for l in 0..m { prop_assert_eq!(g.d(n + j, n + l).to_bits(), y.d(j, l).to_bits()); } }
        for &(i, j) in &pairs {
            prop_assert!((g.cross(i, j) - g.half_distortion()).abs() < 1e-12);
        }
        let oracle = glue_cross(&x, &y, &pairs);
        for (a, b) in g.cross_matrix().iter().zip(&oracle) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn intervals_are_ordered_and_symmetric(x in space(4), y in space(4)) {
        for f in [gromov_prohorov, gromov_wasserstein, gromov_hausdorff, eurandom, mod_eurandom] {
            let (a, b) = (f(&x, &y), f(&y, &x));
            prop_assert!(a.lower <= a.upper + 1e-9);
            prop_assert_eq!((a.lower, a.upper), (b.lower, b.upper));
        }
    }

    #[test]
    fn self_distances_vanish(x in space(4)) {
        for f in [gromov_prohorov, gromov_wasserstein, gromov_hausdorff, eurandom, mod_eurandom] {
            let c = f(&x, &x);
            prop_assert!(c.upper <= 1e-12, "{:?}", c);
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact(x in space(6)) {
        let text = space_to_json(&x, None);
        let y = space_from_json(&text, "mem").unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(text, space_to_json(&y, None));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coalescent_trees_are_ultrametric(seed in any::<u64>(), n in 2usize..40, which in 0usize..4) {
        let l = [
            LambdaMeasure::kingman(),
            LambdaMeasure::bolthausen_sznitman(),
            LambdaMeasure::beta(1.5, 0.5, 1.0),
            LambdaMeasure::atom(0.5, 1.0),
        ][which].clone();
        let run = simulate(&l, n, &mut seeded(seed, 0), None).unwrap();
        let x = coalescent_to_mmspace(&run).unwrap();
        for i in 0..n { for j in 0..n { for k in 0..n {
            prop_assert!(x.d(i, j) <= x.d(i, k).max(x.d(k, j)));
        }}}
    }
}

#[test]
fn brute_isometry_helper_sanity() {
    let x = random_space(&mut seeded(1, 0), 3);
    assert!(brute_isometric(&x, &x, 0.0));
}
