use mmspace::coalescent::{
    coalescence_times, coalescent_to_mmspace, dust_classifier, dust_probe,
    empirical_ball_mass_curve, k_merger_rate, lambda_rate, simulate, simulate_with,
    singleton_frequency, thin_fraction, total_merge_rate, DustClass, LambdaMeasure, RateTable,
};
use mmspace::functional::distance_distribution;
use mmspace::rng::seeded;
use mmspace::Error;
use statrs::distribution::{ContinuousCDF, Exp};

fn ks_exponential(mut xs: Vec<f64>, rate: f64) -> f64 {
    let law = Exp::new(rate).unwrap();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = law.cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

fn catalog() -> Vec<LambdaMeasure> {
    let mut v = vec![
        LambdaMeasure::kingman(),
        LambdaMeasure::bolthausen_sznitman(),
    ];
    for alpha in [0.25, 0.5, 1.0, 1.5, 1.75] {
        v.push(LambdaMeasure::beta(2.0 - alpha, alpha, 1.0));
    }
    v.push(LambdaMeasure::atom(0.5, 1.0));
    v
}

#[test]
fn two_individuals_merge_at_rate_one() {
    let l = LambdaMeasure::kingman();
    let times: Vec<f64> = (0..10_000)
        .map(|i| {
            let run = simulate(&l, 2, &mut seeded(7, i), None).unwrap();
            run.events()[0].time
        })
        .collect();
    assert!(ks_exponential(times, lambda_rate(&l, 2, 2)) < 0.02);
}

#[test]
fn two_point_distance_distribution_is_exponential() {
    // the off-diagonal atom of w carries the merge time
    for l in [LambdaMeasure::kingman(), LambdaMeasure::beta(1.5, 0.5, 1.0)] {
        let table = RateTable::new(&l, 2).unwrap();
        let times: Vec<f64> = (0..10_000)
            .map(|i| {
                let x = coalescent_to_mmspace(
                    &simulate_with(&table, 2, &mut seeded(8, i), None).unwrap(),
                )
                .unwrap();
                let w = distance_distribution(&x);
                assert_eq!(w.atoms()[0], (0.0, 0.5));
                w.atoms()[1].0
            })
            .collect();
        assert!(ks_exponential(times, lambda_rate(&l, 2, 2)) < 0.05);
    }
}

#[test]
fn restriction_is_a_smaller_coalescent() {
    // first merge among the first m of n individuals is Exp(total rate at m);
    // 1.628 / sqrt(N) is the two-sided KS critical value at level 0.01
    let runs = 10_000;
    let critical = 1.628 / (runs as f64).sqrt();
    for (l, n, m) in [
        (LambdaMeasure::kingman(), 8, 3),
        (LambdaMeasure::bolthausen_sznitman(), 10, 4),
        (LambdaMeasure::beta(1.5, 0.5, 1.0), 9, 2),
        (LambdaMeasure::atom(0.5, 1.0), 6, 3),
    ] {
        let table = RateTable::new(&l, n).unwrap();
        let firsts: Vec<f64> = (0..runs)
            .map(|i| {
                let d =
                    coalescence_times(&simulate_with(&table, n, &mut seeded(9, i), None).unwrap())
                        .unwrap();
                (0..m)
                    .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
                    .map(|(a, b)| d[a * n + b])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let ks = ks_exponential(firsts, total_merge_rate(&l, m));
        assert!(ks < critical, "{l}: KS {ks} vs {critical}");
    }
}

#[test]
fn rates_satisfy_the_consistency_recursion() {
    for l in catalog() {
        for b in 2..=10 {
            for k in 2..=b {
                let lhs = lambda_rate(&l, b, k);
                let rhs = lambda_rate(&l, b + 1, k) + lambda_rate(&l, b + 1, k + 1);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0),
                    "{l} b={b} k={k}: {lhs} vs {rhs}"
                );
                assert!(lhs > 0.0 || matches!(l.to_string().as_str(), "kingman"));
                assert!(lhs <= lambda_rate(&l, k, k) * (1.0 + 1e-12));
            }
            let total: f64 = (2..=b).map(|k| k_merger_rate(&l, b, k)).sum();
            assert!((total - total_merge_rate(&l, b)).abs() <= 1e-12 * total);
        }
    }
}

#[test]
fn kingman_rates_are_binomial() {
    let l = LambdaMeasure::kingman();
    for b in 3..=20usize {
        let pairs = (b * (b - 1) / 2) as f64;
        assert!((total_merge_rate(&l, b) - pairs).abs() <= 1e-13 * pairs);
        assert_eq!(lambda_rate(&l, b, 3), 0.0);
    }
}

#[test]
fn dust_classifier_agrees_with_quadrature() {
    let expected = [
        DustClass::DustFree,
        DustClass::DustFree,
        DustClass::Dust,
        DustClass::Dust,
        DustClass::DustFree,
        DustClass::DustFree,
        DustClass::DustFree,
        DustClass::Dust,
    ];
    for (l, want) in catalog().iter().zip(expected) {
        assert_eq!(dust_classifier(l), want, "{l}");
        assert_eq!(dust_probe(l, 40).verdict, want, "{l}");
    }
}

#[test]
fn simulated_trees_are_ultrametric() {
    let cat = catalog();
    for i in 0..500u64 {
        let l = &cat[i as usize % cat.len()];
        let n = 2 + (i as usize * 7) % 49;
        let x = coalescent_to_mmspace(&simulate(l, n, &mut seeded(10, i), None).unwrap()).unwrap();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert!(x.d(a, b) <= x.d(a, c).max(x.d(c, b)));
                }
            }
        }
    }
}

#[test]
fn truncated_runs_are_rejected() {
    let run = simulate(&LambdaMeasure::kingman(), 30, &mut seeded(1, 0), Some(1e-3)).unwrap();
    assert!(!run.is_complete());
    assert!(matches!(
        coalescent_to_mmspace(&run),
        Err(Error::NotFullyCoalesced)
    ));
    assert!(coalescence_times(&run).is_none());
}

#[test]
fn same_seed_same_run() {
    let l = LambdaMeasure::beta(1.0, 1.0, 1.0);
    let a = simulate(&l, 40, &mut seeded(3, 5), None).unwrap();
    let b = simulate(&l, 40, &mut seeded(3, 5), None).unwrap();
    let c = simulate(&l, 40, &mut seeded(3, 6), None).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn whole_ball_is_never_thin_above_one() {
    for l in catalog() {
        let curve =
            empirical_ball_mass_curve(&l, 50, 0.2, &[1.0, 2.0], 5, &mut seeded(4, 0)).unwrap();
        assert!(curve.iter().all(|p| p.mean == 1.0));
    }
}

#[test]
fn kingman_thin_fraction_falls_with_delta() {
    let curve = empirical_ball_mass_curve(
        &LambdaMeasure::kingman(),
        500,
        0.5,
        &[0.1, 0.01, 0.003],
        50,
        &mut seeded(5, 0),
    )
    .unwrap();
    assert!(curve[0].mean > curve[1].mean && curve[1].mean > curve[2].mean);
    assert!(curve[2].mean < 1e-3);
}

#[test]
fn beta_dust_keeps_thin_mass() {
    // Beta(1.5, 0.5) has dust: a positive fraction of singletons survives to
    // small times, so thin points keep mass even for small delta
    let curve = empirical_ball_mass_curve(
        &LambdaMeasure::beta(1.5, 0.5, 1.0),
        1000,
        0.05,
        &[1e-3],
        50,
        &mut seeded(6, 0),
    )
    .unwrap();
    assert!(curve[0].mean > 0.2, "{:?}", curve[0]);
    let kingman = empirical_ball_mass_curve(
        &LambdaMeasure::kingman(),
        1000,
        0.05,
        &[1e-3],
        50,
        &mut seeded(6, 0),
    )
    .unwrap();
    assert!(kingman[0].mean < 0.05, "{:?}", kingman[0]);
}

#[test]
fn blocks_and_frequencies_are_consistent() {
    let run = simulate(
        &LambdaMeasure::bolthausen_sznitman(),
        25,
        &mut seeded(2, 0),
        None,
    )
    .unwrap();
    let t = run.events()[3].time;
    let s = run.state_at(t);
    assert_eq!(
        s.len(),
        run.state_before(t).len() - run.events()[3].blocks.len() + 1
    );
    let total: f64 = s
        .blocks()
        .iter()
        .map(|b| singleton_frequency(&run, t, b[0]))
        .sum();
    assert!((total - 1.0).abs() < 1e-12);
    let covered: usize = s.blocks().iter().map(Vec::len).sum();
    assert_eq!(covered, 25);
    assert_eq!(thin_fraction(&run, t, 1.0), 1.0);
}
