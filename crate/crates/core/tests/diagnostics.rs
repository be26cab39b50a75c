mod common;

use common::brute_isometric;
use mmspace::coalescent::{coalescent_to_mmspace, simulate, LambdaMeasure};
use mmspace::diagnostics::{
    convergence_crosscheck, exp212i, exp212ii, exp25_x, exp25_y, exp62_x, exp62_y, fixture,
    fixtures, precompactness_report, tightness_report, Thresholds, Verdict,
};
use mmspace::functional::{
    distance_distribution, epsilon_net, modulus_of_mass_distribution, random_distance_distribution,
    BallProfile,
};
use mmspace::rng::{seeded, StdRng};
use mmspace::sampling::{evaluate_polynomial_exact, evaluate_polynomial_mc, Polynomial};
use mmspace::{Error, MmSpace};
use std::sync::Arc;

const DELTAS: [f64; 9] = [
    1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625,
];

#[test]
fn exp62_has_equal_random_distance_distributions_but_no_isometry() {
    let (x, y) = (exp62_x(), exp62_y());
    let (hx, hy) = (
        random_distance_distribution(&x),
        random_distance_distribution(&y),
    );
    assert!(hx.approx_eq(&hy, 1e-12));
    let masses: Vec<f64> = hx.atoms().iter().map(|a| a.1).collect();
    for (m, want) in masses.iter().zip([0.1, 0.2, 0.3, 0.4]) {
        assert!((m - want).abs() < 1e-12, "{masses:?}");
    }
    assert!(!brute_isometric(&x, &y, 1e-12));
    assert!(x.isometry_to(&y, 1e-12).is_none());
    assert!(x.isometry_to(&x, 1e-12).is_some());
}

type Probe = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Probe functions of a single distance.
fn probes() -> Vec<Probe> {
    let mut v: Vec<Probe> = Vec::new();
    for c in [0.25, 0.5, 1.0, 1.5, 3.0] {
        v.push(Arc::new(move |d| f64::from(u8::from(d < c))));
    }
    for p in 1..=5 {
        v.push(Arc::new(move |d: f64| d.powi(p)));
    }
    for s in [0.5, 1.0, 2.0] {
        v.push(Arc::new(move |d: f64| (-s * d).exp()));
    }
    v.push(Arc::new(f64::sin));
    v.push(Arc::new(f64::cos));
    v.push(Arc::new(|d: f64| d.min(1.0)));
    v.push(Arc::new(|d: f64| 1.0 / (1.0 + d * d)));
    v.push(Arc::new(|d: f64| (d - 0.5).abs()));
    v.push(Arc::new(|d: f64| d.atan()));
    v.push(Arc::new(|_| 1.0));
    assert_eq!(v.len(), 20);
    v
}

fn direct_degree_two(x: &MmSpace, phi: &dyn Fn(f64) -> f64) -> f64 {
    let n = x.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| x.weight(i) * x.weight(j) * phi(x.d(i, j)))
        .sum()
}

#[test]
fn exp25_degree_two_polynomials_agree_and_degree_three_separates() {
    let (x, y) = (exp25_x(), exp25_y());
    for phi in probes() {
        let p = {
            let phi = phi.clone();
            Polynomial::new(2, move |d| phi(d[0]))
        };
        let (a, b) = (
            evaluate_polynomial_exact(&x, &p).unwrap(),
            evaluate_polynomial_exact(&y, &p).unwrap(),
        );
        assert!((a - b).abs() < 1e-12);
        assert!((a - direct_degree_two(&x, &*phi)).abs() < 1e-12);
    }
    let all_zero = Polynomial::new(3, |d| f64::from(u8::from(d.iter().all(|&v| v == 0.0))));
    let cube_sum = |s: &MmSpace| s.weights().iter().map(|w| w * w * w).sum::<f64>();
    let (a, b) = (
        evaluate_polynomial_exact(&x, &all_zero).unwrap(),
        evaluate_polynomial_exact(&y, &all_zero).unwrap(),
    );
    assert!((a - 0.25).abs() < 1e-12 && (a - cube_sum(&x)).abs() < 1e-12);
    assert!((b - 5.0 / 18.0).abs() < 1e-12 && (b - cube_sum(&y)).abs() < 1e-12);
    assert!(b - a > 0.02);
}

#[test]
fn monte_carlo_polynomials_match_enumeration() {
    let x = exp62_x();
    let p = Polynomial::new(3, |d| d.iter().sum::<f64>());
    let exact = evaluate_polynomial_exact(&x, &p).unwrap();
    let (mean, se) = evaluate_polynomial_mc(&x, &p, 200_000, &mut seeded(3, 0)).unwrap();
    assert!((mean - exact).abs() < 5.0 * se, "{mean} ± {se} vs {exact}");
}

#[test]
fn simplex_modulus_is_a_step() {
    let grid: Vec<f64> = (0..8)
        .flat_map(|j| [0.5f64.powi(j), 0.75 * 0.5f64.powi(j)])
        .collect();
    assert_eq!(grid.len(), 16);
    for n in 1..=8u32 {
        let x = exp212ii(n);
        let p = BallProfile::new(&x);
        for &d in &grid {
            let want = if d >= 0.5f64.powi(n as i32) { 1.0 } else { 0.0 };
            assert_eq!(p.modulus(d), want, "n={n} delta={d}");
        }
    }
}

#[test]
fn reports_separate_the_two_failure_modes() {
    let th = Thresholds::default();
    let cs = [1.0, 2.0, 5.0];
    let far: Vec<MmSpace> = (1..=8).map(exp212i).collect();
    let fine: Vec<MmSpace> = (1..=8).map(exp212ii).collect();
    let r = precompactness_report(&far, &DELTAS, &cs, th).unwrap();
    assert_eq!(
        (r.condition_i, r.condition_ii),
        (Verdict::Fail, Verdict::Pass)
    );
    let r = precompactness_report(&fine, &DELTAS, &cs, th).unwrap();
    assert_eq!(
        (r.condition_i, r.condition_ii),
        (Verdict::Pass, Verdict::Fail)
    );
    for w in r.sup_v.windows(2) {
        assert!(w[0].value <= w[1].value);
    }
    let constant = vec![exp62_x(); 5];
    let r = precompactness_report(&constant, &DELTAS, &cs, th).unwrap();
    assert_eq!(
        (r.condition_i, r.condition_ii),
        (Verdict::Pass, Verdict::Pass)
    );
    let csv = r.to_csv().unwrap();
    assert!(csv.starts_with("delta,sup_v,stderr\n"));
    assert_eq!(csv.lines().count(), DELTAS.len() + 1);
}

#[test]
fn kingman_trees_look_tight() {
    let l = LambdaMeasure::kingman();
    let mut sampler = |rng: &mut StdRng| coalescent_to_mmspace(&simulate(&l, 40, rng, None)?);
    let r = tightness_report(
        &mut sampler,
        30,
        &DELTAS,
        &[0.05],
        &[5.0, 10.0],
        Thresholds::default(),
        &mut seeded(1, 0),
    )
    .unwrap();
    assert_eq!(r.runs, 30);
    assert_eq!(r.condition_i, Verdict::Pass);
    assert!(r.to_json()["mean_v"].is_array());
}

#[test]
fn crosscheck_on_the_simplex_sequence() {
    let seq: Vec<MmSpace> = (1..=4).map(exp212ii).collect();
    let polys = vec![
        Polynomial::new(2, |d| d[0]),
        Polynomial::new(3, |d| d.iter().product()),
    ];
    let t = convergence_crosscheck(&seq, &polys, 0.3).unwrap();
    assert_eq!(t.rows.len(), 3);
    for (row, n) in t.rows.iter().zip(1..) {
        assert!(row.eurandom_upper <= 0.5f64.powi(n - 1) + 1e-9);
        // degree-2 gap is exactly 2^-(n+1)
        assert!((row.gaps[0] - 0.5f64.powi(n + 1)).abs() < 1e-12);
    }
    assert!(t.cauchy);
}

#[test]
fn fixture_catalog() {
    let all = fixtures();
    let w = distance_distribution(&all["exp25_y"]);
    assert!((w.atoms()[0].1 - 0.5).abs() < 1e-12 && (w.atoms()[1].1 - 0.5).abs() < 1e-12);
    let x = &all["exp212ii:3"];
    assert_eq!(x.len(), 8);
    assert!(x.weights().iter().all(|&v| v == 0.125));
    assert!((0..8).all(|i| (0..8).all(|j| x.d(i, j) == if i == j { 0.0 } else { 1.0 })));
    assert!(matches!(fixture("exp99"), Err(Error::UnknownFixture(_))));
}

#[test]
fn epsilon_nets() {
    assert_eq!(
        epsilon_net(&MmSpace::one_point(), 0.5, 0.1).unwrap(),
        vec![0]
    );
    // the lightest point of exp25_y weighs (2 - sqrt 3)/6 = 0.0447 <= 0.05,
    // so its ball is thin and it cannot be a center
    let y = exp25_y();
    assert!(y.weight(0) < 0.05);
    let mut net = epsilon_net(&y, 0.05, 0.5).unwrap();
    net.sort();
    assert_eq!(net, vec![1, 2]);
    assert_eq!(epsilon_net(&y, 0.04, 0.5).unwrap().len(), 3);
    // 4 points, every ball of radius 0.5 has mass 1/4 > 0.1
    let x = exp212ii(2);
    let delta = 0.1;
    let eps = 0.5;
    let net = epsilon_net(&x, delta, eps).unwrap();
    assert!(net.len() as f64 <= 1.0 / delta);
    let p = BallProfile::new(&x);
    assert!(net.iter().all(|&c| p.open_ball_mass(c, eps) > delta));
    let covered: f64 = (0..x.len())
        .filter(|&i| net.iter().any(|&c| x.d(i, c) < 2.0 * eps))
        .map(|i| x.weight(i))
        .sum();
    assert!(covered > 1.0 - eps);
    // the precondition v_delta < eps
    assert!(modulus_of_mass_distribution(&x, 0.3) >= 0.5);
    assert!(matches!(
        epsilon_net(&x, 0.3, 0.5),
        Err(Error::PreconditionFailed(_))
    ));
}
