//! Eurandom distance and its truncated-mean variant.
//!
//! For a coupling `pi` of the two weight vectors, two independent draws
//! `(x, y), (x', y')` from `pi` give the mismatch
//! `D = |r_X(x, x') - r_Y(y, y')|`. The Eurandom distance is the smallest Ky
//! Fan level `inf { eps : P(D >= eps) < eps }` over couplings, and the
//! modified version minimizes `E[min(D, 1)]`.
//!
//! Both objectives are quadratic in `pi` (per mismatch level for the first),
//! so small instances are solved exactly by face enumeration.

use super::coupling::Coupling;
use super::interval::{CertifiedInterval, Witness};
use super::options::{swap_needed, MetricOptions};
use super::prohorov::prohorov_line;
use super::qp::{frank_wolfe, quad, FaceTable};
use super::transport::transport_lp;
use crate::functional::{distance_distribution, distance_profile};
use crate::rng::seeded;
use crate::space::{sort_dedup, MmSpace};

/// Mass comparisons `P(D >= eps) < eps` demand a margin of this size.
const STRICT_TOL: f64 = 1e-12;

/// The mismatch matrix `D[(i,j),(k,l)] = |r_X(i,k) - r_Y(j,l)|` over cells.
pub fn mismatch_matrix(x: &MmSpace, y: &MmSpace) -> Vec<f64> {
    let (n, m) = (x.len(), y.len());
    let k = n * m;
    let mut d = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            d[a * k + b] = (x.d(a / m, b / m) - y.d(a % m, b % m)).abs();
        }
    }
    d
}

fn positive_levels(d: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = d.iter().copied().filter(|&v| v > 0.0).collect();
    sort_dedup(&mut v);
    v
}

/// Ky Fan level `inf { eps > 0 : P(D >= eps) < eps }` of the mismatch under
/// a fixed coupling.
pub fn ky_fan_level(x: &MmSpace, y: &MmSpace, pi: &Coupling) -> f64 {
    let d = mismatch_matrix(x, y);
    level_from_tails(&positive_levels(&d), |t| tail_mass(&d, pi.as_slice(), t))
}

fn tail_mass(d: &[f64], pi: &[f64], t: f64) -> f64 {
    let k = pi.len();
    let mut s = 0.0;
    for a in 0..k {
        if pi[a] == 0.0 {
            continue;
        }
        let row = &d[a * k..(a + 1) * k];
        s += pi[a]
            * row
                .iter()
                .zip(pi)
                .filter(|(v, _)| **v >= t)
                .map(|(_, p)| p)
                .sum::<f64>();
    }
    s
}

/// Scan of the step function: on `(d_{i-1}, d_i]` the tail mass is the
/// constant `tail(d_i)`.
fn level_from_tails(levels: &[f64], mut tail: impl FnMut(f64) -> f64) -> f64 {
    let mut lo = 0.0;
    for &hi in levels {
        let t = tail(hi);
        if t < hi - STRICT_TOL {
            return t.max(lo);
        }
        lo = hi;
    }
    lo
}

/// Eurandom distance.
pub fn eurandom(x: &MmSpace, y: &MmSpace) -> CertifiedInterval {
    eurandom_with(x, y, &MetricOptions::default())
}

pub fn eurandom_with(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    oriented(x, y, opts, eur_impl)
}

/// Truncated-mean Eurandom distance `min_pi E[min(D, 1)]`.
pub fn mod_eurandom(x: &MmSpace, y: &MmSpace) -> CertifiedInterval {
    mod_eurandom_with(x, y, &MetricOptions::default())
}

pub fn mod_eurandom_with(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    oriented(x, y, opts, mod_impl)
}

fn oriented(
    x: &MmSpace,
    y: &MmSpace,
    opts: &MetricOptions,
    f: fn(&MmSpace, &MmSpace, &MetricOptions) -> CertifiedInterval,
) -> CertifiedInterval {
    if swap_needed(x, y) {
        let c = f(y, x, opts);
        let flip = |w: Witness| match w {
            Witness::Coupling {
                coupling,
                objective,
            } => Witness::Coupling {
                coupling: coupling.transpose(),
                objective,
            },
            other => other,
        };
        CertifiedInterval {
            lower_witness: flip(c.lower_witness),
            upper_witness: flip(c.upper_witness),
            ..c
        }
    } else {
        f(x, y, opts)
    }
}

/// Lower bound: the sampled distance pairs couple the two distance distributions.
pub fn eurandom_lower(x: &MmSpace, y: &MmSpace) -> f64 {
    prohorov_line(&distance_distribution(x), &distance_distribution(y))
}

fn eur_lower_witness() -> Witness {
    Witness::Inequality {
        description: "Prohorov distance of the distance distributions (marginalization)".into(),
    }
}

/// Exact Eurandom value by face enumeration, with an optimal coupling.
fn eur_exact(x: &MmSpace, y: &MmSpace) -> (f64, Coupling) {
    let d = mismatch_matrix(x, y);
    let table = FaceTable::new(x.weights(), y.weights());
    let mut lo = 0.0;
    for &hi in &positive_levels(&d) {
        let ind: Vec<f64> = d.iter().map(|&v| if v >= hi { 1.0 } else { 0.0 }).collect();
        let (q, pi) = table.minimize(&ind);
        if q < hi - STRICT_TOL {
            return (q.max(lo), pi);
        }
        lo = hi;
    }
    (lo, Coupling::product(x.weights(), y.weights()))
}

/// Candidate couplings for the heuristic regime.
fn eur_candidates(x: &MmSpace, y: &MmSpace, d: &[f64], opts: &MetricOptions) -> Vec<Coupling> {
    let (wx, wy) = (x.weights(), y.weights());
    let (n, m) = (x.len(), y.len());
    let mut out = vec![Coupling::product(wx, wy)];
    let px: Vec<_> = (0..n).map(|i| distance_profile(x, i)).collect();
    let py: Vec<_> = (0..m).map(|j| distance_profile(y, j)).collect();
    let w1: Vec<f64> = px
        .iter()
        .flat_map(|a| {
            py.iter().map(move |b| {
                let av: Vec<f64> = a.atoms().iter().map(|p| p.0).collect();
                let bv: Vec<f64> = b.atoms().iter().map(|p| p.0).collect();
                let cost: Vec<f64> = av
                    .iter()
                    .flat_map(|u| bv.iter().map(move |v| (u - v).abs()))
                    .collect();
                let aw: Vec<f64> = a.atoms().iter().map(|p| p.1).collect();
                let bw: Vec<f64> = b.atoms().iter().map(|p| p.1).collect();
                transport_lp(&cost, &aw, &bw).1
            })
        })
        .collect();
    out.push(transport_lp(&w1, wx, wy).0);
    // per-threshold indicator costs on profiles, at a few quantile levels
    let levels = positive_levels(d);
    let picks: Vec<f64> = if levels.len() <= 6 {
        levels.clone()
    } else {
        (0..6).map(|q| levels[q * (levels.len() - 1) / 5]).collect()
    };
    for &t in &picks {
        let cost: Vec<f64> = px
            .iter()
            .flat_map(|a| {
                py.iter().map(move |b| {
                    let av: Vec<f64> = a.atoms().iter().map(|p| p.0).collect();
                    let bv: Vec<f64> = b.atoms().iter().map(|p| p.0).collect();
                    let c: Vec<f64> = av
                        .iter()
                        .flat_map(|u| {
                            bv.iter()
                                .map(move |v| if (u - v).abs() >= t { 1.0 } else { 0.0 })
                        })
                        .collect();
                    let aw: Vec<f64> = a.atoms().iter().map(|p| p.1).collect();
                    let bw: Vec<f64> = b.atoms().iter().map(|p| p.1).collect();
                    transport_lp(&c, &aw, &bw).1
                })
            })
            .collect();
        out.push(transport_lp(&cost, wx, wy).0);
    }
    // conditional-gradient refinement of the indicator objectives
    let start = out
        .iter()
        .min_by(|a, b| level_of(d, &levels, a).total_cmp(&level_of(d, &levels, b)))
        .unwrap()
        .clone();
    let mut rng = seeded(opts.seed, 1);
    let fw = super::qp::FwSettings {
        iterations: opts.fw.iterations.min(60),
        restarts: 1,
    };
    for &t in &picks {
        let ind: Vec<f64> = d.iter().map(|&v| if v >= t { 1.0 } else { 0.0 }).collect();
        out.push(frank_wolfe(&ind, wx, wy, &start, fw, &mut rng).1);
    }
    out
}

fn level_of(d: &[f64], levels: &[f64], pi: &Coupling) -> f64 {
    level_from_tails(levels, |t| tail_mass(d, pi.as_slice(), t))
}

fn eur_impl(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    let cells = x.len() * y.len();
    if cells <= opts.coupling_cells {
        let (v, pi) = eur_exact(x, y);
        let objective = ky_fan_level(x, y, &pi);
        return CertifiedInterval::exact(
            v,
            Witness::Coupling {
                coupling: pi,
                objective,
            },
            "minimum over all faces of the coupling polytope",
        );
    }
    let d = mismatch_matrix(x, y);
    let levels = positive_levels(&d);
    let (upper, pi) = eur_candidates(x, y, &d, opts)
        .into_iter()
        .map(|pi| (level_of(&d, &levels, &pi), pi))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    let lower = eurandom_lower(x, y).min(upper);
    CertifiedInterval::new(
        lower,
        upper,
        eur_lower_witness(),
        Witness::Coupling {
            coupling: pi,
            objective: upper,
        },
    )
}

fn truncated(x: &MmSpace, y: &MmSpace) -> Vec<f64> {
    mismatch_matrix(x, y)
        .into_iter()
        .map(|v| v.min(1.0))
        .collect()
}

/// `E[min(D, 1)]` under a fixed coupling.
pub fn mod_eurandom_objective(x: &MmSpace, y: &MmSpace, pi: &Coupling) -> f64 {
    quad(&truncated(x, y), pi.as_slice())
}

fn mod_impl(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    let (wx, wy) = (x.weights(), y.weights());
    let c = truncated(x, y);
    let cells = x.len() * y.len();
    if cells <= opts.coupling_cells {
        let (v, pi) = FaceTable::new(wx, wy).minimize(&c);
        let v = v.max(0.0);
        return CertifiedInterval::exact(
            v,
            Witness::Coupling {
                coupling: pi,
                objective: v,
            },
            "minimum over all faces of the coupling polytope",
        );
    }
    let eur = eur_impl(x, y, opts);
    let start = match &eur.upper_witness {
        Witness::Coupling { coupling, .. } => coupling.clone(),
        _ => Coupling::product(wx, wy),
    };
    let mut rng = seeded(opts.seed, 2);
    let (v, pi) = frank_wolfe(&c, wx, wy, &start, opts.fw, &mut rng);
    let lower = (eur.lower * eur.lower).min(v);
    CertifiedInterval::new(
        lower,
        v,
        Witness::Inequality {
            description: "square of the Eurandom lower bound".into(),
        },
        Witness::Coupling {
            coupling: pi,
            objective: v,
        },
    )
}
