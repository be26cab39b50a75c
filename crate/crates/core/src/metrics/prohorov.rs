//! Prohorov distance on a common finite space.
//!
//! With `pi` ranging over couplings, `d_Pr = inf { eps : pi{r >= eps} <= eps }`.
//! The map `eps -> min_pi pi{r >= eps}` is a step function that only moves
//! at distance values, so one transport problem per distance level decides
//! the whole infimum.

use super::coupling::Coupling;
use super::transport::transport_lp;
use crate::functional::Empirical1D;
use crate::space::sort_dedup;

/// Exact Prohorov distance between `mu` and `nu` on the metric `dist`
/// (row-major `k x k`). Zero entries in `mu` or `nu` are allowed.
pub fn prohorov(dist: &[f64], mu: &[f64], nu: &[f64]) -> f64 {
    prohorov_with_coupling(dist, mu, nu).0
}

/// Prohorov distance together with a coupling attaining it.
///
/// The coupling lives on the full `k x k` index set.
pub fn prohorov_with_coupling(dist: &[f64], mu: &[f64], nu: &[f64]) -> (f64, Coupling) {
    let k = mu.len();
    assert_eq!(nu.len(), k);
    assert_eq!(dist.len(), k * k);
    let rows: Vec<usize> = (0..k).filter(|&i| mu[i] > 0.0).collect();
    let cols: Vec<usize> = (0..k).filter(|&j| nu[j] > 0.0).collect();
    let cross: Vec<f64> = rows
        .iter()
        .flat_map(|&i| cols.iter().map(move |&j| dist[i * k + j]))
        .collect();
    let a: Vec<f64> = rows.iter().map(|&i| mu[i]).collect();
    let b: Vec<f64> = cols.iter().map(|&j| nu[j]).collect();
    let (value, small) = prohorov_bipartite(&cross, &a, &b);
    let mut full = vec![0.0; k * k];
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            full[i * k + j] = small.get(r, c);
        }
    }
    (value, Coupling::from_raw(k, k, full))
}

/// Prohorov distance when only the `n x m` block of distances between the
/// supports matters.
pub(crate) fn prohorov_bipartite(cross: &[f64], mu: &[f64], nu: &[f64]) -> (f64, Coupling) {
    let mut levels = cross.to_vec();
    levels.push(0.0);
    sort_dedup(&mut levels);
    for w in levels.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let cost: Vec<f64> = cross
            .iter()
            .map(|&d| if d >= hi { 1.0 } else { 0.0 })
            .collect();
        let (pi, bad) = transport_lp(&cost, mu, nu);
        if bad <= hi {
            return (lo.max(bad), pi);
        }
    }
    // every coupling is admissible above the largest distance
    let top = *levels.last().unwrap();
    let (pi, _) = transport_lp(&vec![0.0; cross.len()], mu, nu);
    (top, pi)
}

/// Prohorov distance between two laws on the real line.
pub fn prohorov_line(a: &Empirical1D, b: &Empirical1D) -> f64 {
    let av: Vec<f64> = a.atoms().iter().map(|p| p.0).collect();
    let bv: Vec<f64> = b.atoms().iter().map(|p| p.0).collect();
    let cross: Vec<f64> = av
        .iter()
        .flat_map(|x| bv.iter().map(move |y| (x - y).abs()))
        .collect();
    let mu: Vec<f64> = a.atoms().iter().map(|p| p.1).collect();
    let nu: Vec<f64> = b.atoms().iter().map(|p| p.1).collect();
    prohorov_bipartite(&cross, &mu, &nu).0
}
