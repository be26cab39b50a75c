//! Single-space functionals: distance distribution, modulus of mass
//! distribution, random distance distribution, moment measures and
//! separated nets.
//!
//! All of them are exact on finite spaces. Balls are open: `B_eps(x)` is
//! `{y : d(x,y) < eps}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::space::{sort_dedup, MmSpace};

/// Largest number of tuples any exact enumeration will visit.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Tolerance used to decide that two laws are the same atom of a
/// [`RandomDistanceDistribution`].
pub const LAW_MERGE_TOL: f64 = 1e-12;

/// A finitely supported probability measure on `[0, inf)`.
///
/// Atoms are sorted by value with no duplicate values.
#[derive(Debug, Clone, PartialEq)]
pub struct Empirical1D {
    atoms: Vec<(f64, f64)>,
}

impl Empirical1D {
    /// Build from unsorted `(value, mass)` pairs; equal values are merged.
    pub fn from_pairs(mut pairs: Vec<(f64, f64)>) -> Self {
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for (v, m) in pairs {
            match atoms.last_mut() {
                Some(last) if last.0 == v => last.1 += m,
                _ => atoms.push((v, m)),
            }
        }
        Self { atoms }
    }

    pub fn dirac(v: f64) -> Self {
        Self {
            atoms: vec![(v, 1.0)],
        }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// Mass of `[0, eps)`.
    pub fn mass_below(&self, eps: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|a| a.0 < eps)
            .map(|a| a.1)
            .sum()
    }

    /// Mass of `[c, inf)`.
    pub fn tail(&self, c: f64) -> f64 {
        self.atoms.iter().filter(|a| a.0 >= c).map(|a| a.1).sum()
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|a| a.0 * a.1).sum()
    }

    /// `E[f(V)]` under this law.
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms.iter().map(|&(v, m)| m * f(v)).sum()
    }

    /// Same atoms (values and masses) within `tol`, ignoring atoms of mass below `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let a: Vec<_> = self.atoms.iter().filter(|x| x.1 > tol).collect();
        let b: Vec<_> = other.atoms.iter().filter(|x| x.1 > tol).collect();
        a.len() == b.len()
            && a.iter()
                .zip(&b)
                .all(|(x, y)| (x.0 - y.0).abs() <= tol && (x.1 - y.1).abs() <= tol)
    }

    fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.atoms.iter().zip(&other.atoms) {
            let o = a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1));
            if o.is_ne() {
                return o;
            }
        }
        self.atoms.len().cmp(&other.atoms.len())
    }
}

/// Law of the distance profile `mu^x` of a `mu`-distributed base point `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomDistanceDistribution {
    atoms: Vec<(Empirical1D, f64)>,
}

impl RandomDistanceDistribution {
    pub fn atoms(&self) -> &[(Empirical1D, f64)] {
        &self.atoms
    }

    /// Same mixture up to `tol` on atom values and masses.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.atoms.len() == other.atoms.len()
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|((la, ma), (lb, mb))| la.approx_eq(lb, tol) && (ma - mb).abs() <= tol)
    }

    /// Mixture `int nu hat_mu(d nu)`.
    pub fn mean_law(&self) -> Empirical1D {
        Empirical1D::from_pairs(
            self.atoms
                .iter()
                .flat_map(|(law, m)| law.atoms().iter().map(move |&(v, p)| (v, m * p)))
                .collect(),
        )
    }
}

/// The k-th moment measure: law of `(d(u0,u1), ..., d(u0,uk))` for i.i.d. `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMeasure {
    pub k: usize,
    atoms: Vec<(Vec<f64>, f64)>,
}

impl MomentMeasure {
    pub fn atoms(&self) -> &[(Vec<f64>, f64)] {
        &self.atoms
    }

    /// Image under the projection onto coordinate `c`.
    pub fn marginal(&self, c: usize) -> Empirical1D {
        Empirical1D::from_pairs(self.atoms.iter().map(|(p, m)| (p[c], *m)).collect())
    }

    pub fn mass_of(&self, point: &[f64]) -> f64 {
        self.atoms
            .iter()
            .filter(|(p, _)| p.as_slice() == point)
            .map(|a| a.1)
            .sum()
    }
}

/// `w_X`: the law of `d(x, x')` for independent `x, x' ~ mu`.
pub fn distance_distribution(x: &MmSpace) -> Empirical1D {
    let n = x.len();
    let mut pairs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            pairs.push((x.d(i, j), x.weight(i) * x.weight(j)));
        }
    }
    Empirical1D::from_pairs(pairs)
}

/// `mu^x` for point `i`: the law of `d(i, y)`, `y ~ mu`.
pub fn distance_profile(x: &MmSpace, i: usize) -> Empirical1D {
    Empirical1D::from_pairs((0..x.len()).map(|j| (x.d(i, j), x.weight(j))).collect())
}

/// The random distance distribution `hat mu_X`.
///
/// Profiles that agree within [`LAW_MERGE_TOL`] are merged. Atoms are
/// returned in a canonical order so equal mixtures compare equal.
pub fn random_distance_distribution(x: &MmSpace) -> RandomDistanceDistribution {
    let mut atoms: Vec<(Empirical1D, f64)> = Vec::new();
    for i in 0..x.len() {
        let law = distance_profile(x, i);
        match atoms
            .iter_mut()
            .find(|(l, _)| l.approx_eq(&law, LAW_MERGE_TOL))
        {
            Some(a) => a.1 += x.weight(i),
            None => atoms.push((law, x.weight(i))),
        }
    }
    atoms.sort_by(|a, b| a.0.cmp_key(&b.0));
    RandomDistanceDistribution { atoms }
}

/// Per-point closed-ball mass profiles, sorted by radius.
///
/// Shared precomputation for the modulus of mass distribution and for
/// `mu{x : mu(B_eps(x)) <= delta}` on many `(eps, delta)` pairs.
#[derive(Debug, Clone)]
pub struct BallProfile {
    weights: Vec<f64>,
    /// For each point: distinct radii and the closed-ball mass at each.
    radii: Vec<Vec<(f64, f64)>>,
    distances: Vec<f64>,
}

impl BallProfile {
    pub fn new(x: &MmSpace) -> Self {
        let n = x.len();
        let radii = (0..n)
            .map(|i| {
                let mut acc = 0.0;
                distance_profile(x, i)
                    .atoms()
                    .iter()
                    .map(|&(r, m)| {
                        acc += m;
                        (r, acc)
                    })
                    .collect()
            })
            .collect();
        Self {
            weights: x.weights().to_vec(),
            radii,
            distances: x.distinct_distances(),
        }
    }

    /// `mu(B_eps(x_i))` for the open ball.
    pub fn open_ball_mass(&self, i: usize, eps: f64) -> f64 {
        self.radii[i]
            .iter()
            .take_while(|a| a.0 < eps)
            .last()
            .map_or(0.0, |a| a.1)
    }

    /// `mu{x : mu(B_eps(x)) <= delta}`.
    pub fn thin_mass(&self, eps: f64, delta: f64) -> f64 {
        (0..self.weights.len())
            .filter(|&i| self.open_ball_mass(i, eps) <= delta)
            .map(|i| self.weights[i])
            .sum()
    }

    /// Exact modulus of mass distribution `v_delta`.
    ///
    /// On each interval `(d_{i-1}, d_i]` between consecutive distinct
    /// distances the open ball is the closed ball of radius `d_{i-1}`, so the
    /// thin mass `G` is constant there and the admissible `eps` form
    /// `[max(d_{i-1}, G), d_i]` when `G <= d_i`. Past the diameter the ball is
    /// the whole space. The result is the smallest left endpoint.
    pub fn modulus(&self, delta: f64) -> f64 {
        // t_i: smallest radius whose closed ball around i has mass > delta.
        let mut thresholds: Vec<(f64, f64)> = self
            .radii
            .iter()
            .zip(&self.weights)
            .map(|(r, &w)| {
                (
                    r.iter()
                        .find(|a| a.1 > delta)
                        .map_or(f64::INFINITY, |a| a.0),
                    w,
                )
            })
            .collect();
        thresholds.sort_by(|a, b| a.0.total_cmp(&b.0));
        // suffix[k]: weight of the points whose threshold is at least the k-th
        let mut suffix = vec![0.0; thresholds.len() + 1];
        for k in (0..thresholds.len()).rev() {
            suffix[k] = suffix[k + 1] + thresholds[k].1;
        }
        // thin mass on the interval with left end `left`: points with threshold > left
        let mut ptr = 0;
        let mut thin_at = |left: f64| {
            while ptr < thresholds.len() && thresholds[ptr].0 <= left {
                ptr += 1;
            }
            suffix[ptr]
        };
        let d = &self.distances;
        for i in 1..d.len() {
            let g = thin_at(d[i - 1]);
            if g <= d[i] {
                return d[i - 1].max(g);
            }
        }
        let last = *d.last().unwrap();
        last.max(thin_at(last))
    }
}

/// Exact `v_delta(X) = inf{eps > 0 : mu{x : mu(B_eps(x)) <= delta} <= eps}`.
pub fn modulus_of_mass_distribution(x: &MmSpace, delta: f64) -> f64 {
    BallProfile::new(x).modulus(delta)
}

/// `v_delta` computed from the random distance distribution alone:
/// `inf{eps > 0 : hat_mu{nu : nu[0, eps) <= delta} <= eps}`.
pub fn modulus_from_random_distance_distribution(
    rdd: &RandomDistanceDistribution,
    delta: f64,
) -> f64 {
    let mut grid: Vec<f64> = rdd
        .atoms()
        .iter()
        .flat_map(|(l, _)| l.atoms().iter().map(|a| a.0))
        .collect();
    grid.push(0.0);
    sort_dedup(&mut grid);
    let thin = |eps: f64| -> f64 {
        rdd.atoms()
            .iter()
            .filter(|(l, _)| l.mass_below(eps) <= delta)
            .map(|a| a.1)
            .sum()
    };
    for i in 1..grid.len() {
        // any eps in (grid[i-1], grid[i]] sees the same open balls
        let g = thin(grid[i]);
        if g <= grid[i] {
            return grid[i - 1].max(g);
        }
    }
    let last = *grid.last().unwrap();
    last.max(thin(f64::INFINITY))
}

/// `mu{x : mu(B_eps(x)) <= delta}`.
pub fn thin_mass(x: &MmSpace, eps: f64, delta: f64) -> f64 {
    BallProfile::new(x).thin_mass(eps, delta)
}

/// The k-th moment measure of `hat mu_X`, by enumeration of `n^(k+1)` tuples.
pub fn moment_measure(x: &MmSpace, k: usize) -> Result<MomentMeasure> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "moment order must be positive".into(),
        ));
    }
    let n = x.len();
    check_enumeration(n, k + 1)?;
    let mut acc: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
    let mut idx = vec![0usize; k];
    for u0 in 0..n {
        idx.iter_mut().for_each(|v| *v = 0);
        loop {
            let mass = x.weight(u0) * idx.iter().map(|&u| x.weight(u)).product::<f64>();
            let key: Vec<u64> = idx.iter().map(|&u| x.d(u0, u).to_bits()).collect();
            *acc.entry(key).or_insert(0.0) += mass;
            if !odometer(&mut idx, n) {
                break;
            }
        }
    }
    let atoms = acc
        .into_iter()
        .map(|(key, m)| (key.into_iter().map(f64::from_bits).collect(), m))
        .collect();
    Ok(MomentMeasure { k, atoms })
}

/// Advance a base-`n` counter; false once it wraps around.
pub(crate) fn odometer(idx: &mut [usize], n: usize) -> bool {
    for v in idx.iter_mut().rev() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}

pub(crate) fn check_enumeration(n: usize, power: usize) -> Result<()> {
    let size = (n as u128).checked_pow(power as u32).unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Separated net for a space with `v_delta(X) < eps`.
///
/// Returns points `x_1..x_N` with `N <= floor(1/delta)`, `mu(B_eps(x_i)) > delta`,
/// pairwise distances `>= 2 eps` and `mu(U B_{2eps}(x_i)) > 1 - eps`. Built
/// greedily over the heavy set `{x : mu(B_eps(x)) > delta}` in order of
/// decreasing ball mass.
pub fn epsilon_net(x: &MmSpace, delta: f64, eps: f64) -> Result<Vec<usize>> {
    let profile = BallProfile::new(x);
    let v = profile.modulus(delta);
    if !(v < eps) {
        return Err(Error::PreconditionFailed(format!(
            "v_delta = {v} is not below eps = {eps}"
        )));
    }
    let mut heavy: Vec<(usize, f64)> = (0..x.len())
        .map(|i| (i, profile.open_ball_mass(i, eps)))
        .filter(|&(_, m)| m > delta)
        .collect();
    heavy.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut net: Vec<usize> = Vec::new();
    for (i, _) in heavy {
        if net.iter().all(|&c| x.d(i, c) >= 2.0 * eps) {
            net.push(i);
        }
    }
    Ok(net)
}
