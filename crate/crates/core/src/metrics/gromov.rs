//! Gromov–Hausdorff, Gromov–Prohorov and Gromov–Wasserstein distances.
//!
//! All three optimize over metrics on the disjoint union `X ⊔ Y`. The search
//! runs over gluings induced by relations. For a relation `S`, the
//! Gromov–Prohorov objective is `max(dis(S)/2, 1 - max_pi pi(S))`; any metric
//! extension with Prohorov value `eps` yields the relation `{r < eps}` with an
//! objective of at most `eps`, so the minimum over relations is the distance
//! itself. Only relations that are maximal for their distortion matter, and
//! those are the maximal cliques of a compatibility graph on the cells `(i, j)`.
//!
//! Relation gluings are not enough for Gromov–Wasserstein, where an optimal
//! extension may place related points at different positive distances; that
//! distance is solved over offset gluings instead.
//!
//! Outside the enumerable regime the search falls back to a fixed family of
//! candidates and the result is an interval.

use super::coupling::Coupling;
use super::interval::{CertifiedInterval, Witness};
use super::lp::max_packing;
use super::options::{swap_needed, MetricOptions};
use super::prohorov::{prohorov_bipartite, prohorov_line};
use super::qp::{FaceTable, FACE_LIMIT};
use super::relation::{
    compatibility, covers, distortion, distortion_levels, glue, maximal_cliques, Enumeration,
    Relation,
};
use super::transport::transport_lp;
use crate::functional::{distance_distribution, distance_profile, Empirical1D};
use crate::space::MmSpace;

/// Tolerance when deciding whether a clique's distortion equals its level.
const LEVEL_TOL: f64 = 1e-12;

fn mask_pairs(mask: u128, m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out.push((c / m, c % m));
    }
    out
}

fn pairs_distortion(x: &MmSpace, y: &MmSpace, pairs: &[(usize, usize)]) -> f64 {
    let mut dis = 0.0f64;
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            dis = dis.max((x.d(i, k) - y.d(j, l)).abs());
        }
    }
    dis
}

/// Smallest mass a coupling must put outside the related pairs.
fn outside_mass(x: &MmSpace, y: &MmSpace, pairs: &[(usize, usize)]) -> (f64, Coupling) {
    let m = y.len();
    let mut cost = vec![1.0; x.len() * m];
    for &(i, j) in pairs {
        cost[i * m + j] = 0.0;
    }
    let (pi, v) = transport_lp(&cost, x.weights(), y.weights());
    (v, pi)
}

/// `max(dis(S)/2, min_pi pi(S^c))`: an upper bound for the Prohorov distance
/// of the gluing along `S`, tight at the optimum.
pub fn relation_objective(x: &MmSpace, y: &MmSpace, r: &Relation) -> f64 {
    let pairs = r.pairs();
    (0.5 * pairs_distortion(x, y, &pairs)).max(outside_mass(x, y, &pairs).0)
}

/// Prohorov distance between the images of `x` and `y` in the gluing along `r`.
pub fn glued_prohorov(x: &MmSpace, y: &MmSpace, r: &Relation) -> f64 {
    let g = glue(x, y, r);
    prohorov_bipartite(&g.cross_matrix(), x.weights(), y.weights()).0
}

/// Truncated transport cost `min(r, 1)` between the images in the gluing along `r`.
pub fn glued_wasserstein(x: &MmSpace, y: &MmSpace, r: &Relation) -> (f64, Coupling) {
    let cost: Vec<f64> = glue(x, y, r)
        .cross_matrix()
        .into_iter()
        .map(|c| c.min(1.0))
        .collect();
    let (pi, v) = transport_lp(&cost, x.weights(), y.weights());
    (v, pi)
}

fn transpose_witness(w: Witness) -> Witness {
    match w {
        Witness::Coupling {
            coupling,
            objective,
        } => Witness::Coupling {
            coupling: coupling.transpose(),
            objective,
        },
        Witness::Relation {
            relation,
            objective,
        } => Witness::Relation {
            relation: relation.transpose(),
            objective,
        },
        other => other,
    }
}

fn oriented(
    x: &MmSpace,
    y: &MmSpace,
    opts: &MetricOptions,
    f: fn(&MmSpace, &MmSpace, &MetricOptions) -> CertifiedInterval,
) -> CertifiedInterval {
    if swap_needed(x, y) {
        let c = f(y, x, opts);
        CertifiedInterval {
            lower_witness: transpose_witness(c.lower_witness),
            upper_witness: transpose_witness(c.upper_witness),
            ..c
        }
    } else {
        f(x, y, opts)
    }
}

fn w1_line(a: &Empirical1D, b: &Empirical1D) -> f64 {
    let mut pts: Vec<f64> = a.atoms().iter().chain(b.atoms()).map(|p| p.0).collect();
    crate::space::sort_dedup(&mut pts);
    let cdf = |e: &Empirical1D, t: f64| {
        e.atoms()
            .iter()
            .take_while(|p| p.0 <= t)
            .map(|p| p.1)
            .sum::<f64>()
    };
    pts.windows(2)
        .map(|w| (cdf(a, w[0]) - cdf(b, w[0])).abs() * (w[1] - w[0]))
        .sum()
}

/// Cost `W1(profile of i, profile of j)` between distance profiles.
fn profile_cost(x: &MmSpace, y: &MmSpace) -> Vec<f64> {
    let px: Vec<Empirical1D> = (0..x.len()).map(|i| distance_profile(x, i)).collect();
    let py: Vec<Empirical1D> = (0..y.len()).map(|j| distance_profile(y, j)).collect();
    px.iter()
        .flat_map(|a| py.iter().map(move |b| w1_line(a, b)))
        .collect()
}

/// Heaviest point to heaviest point, second to second, and so on.
fn weight_matching(x: &MmSpace, y: &MmSpace) -> Relation {
    let order = |s: &MmSpace| {
        let mut idx: Vec<usize> = (0..s.len()).collect();
        idx.sort_by(|&a, &b| s.weight(b).total_cmp(&s.weight(a)).then(a.cmp(&b)));
        idx
    };
    let pairs: Vec<(usize, usize)> = order(x).into_iter().zip(order(y)).collect();
    Relation::from_pairs(x.len(), y.len(), &pairs).expect("nonempty matching")
}

fn support_relation(pi: &Coupling) -> Relation {
    let (n, m) = pi.shape();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| pi.get(i, j) > 0.0)
        .collect();
    Relation::from_pairs(n, m, &pairs).expect("a coupling has nonempty support")
}

/// Greedy correspondence: the support of the profile transport plan,
/// completed to cover every row and column, then thinned while the
/// distortion drops.
fn greedy_correspondence(x: &MmSpace, y: &MmSpace) -> Relation {
    let (n, m) = (x.len(), y.len());
    let cost = profile_cost(x, y);
    let (pi, _) = transport_lp(&cost, x.weights(), y.weights());
    let mut pairs: Vec<(usize, usize)> = support_relation(&pi).pairs();
    let added_cost = |pairs: &[(usize, usize)], cand: (usize, usize)| {
        pairs
            .iter()
            .map(|&(k, l)| (x.d(cand.0, k) - y.d(cand.1, l)).abs())
            .fold(0.0f64, f64::max)
    };
    for i in 0..n {
        if !pairs.iter().any(|p| p.0 == i) {
            let j = (0..m)
                .min_by(|&a, &b| added_cost(&pairs, (i, a)).total_cmp(&added_cost(&pairs, (i, b))))
                .unwrap();
            pairs.push((i, j));
        }
    }
    for j in 0..m {
        if !pairs.iter().any(|p| p.1 == j) {
            let i = (0..n)
                .min_by(|&a, &b| added_cost(&pairs, (a, j)).total_cmp(&added_cost(&pairs, (b, j))))
                .unwrap();
            pairs.push((i, j));
        }
    }
    loop {
        let dis = pairs_distortion(x, y, &pairs);
        let mut improved = false;
        for k in 0..pairs.len() {
            let (i, j) = pairs[k];
            let row_ok = pairs.iter().filter(|p| p.0 == i).count() > 1;
            let col_ok = pairs.iter().filter(|p| p.1 == j).count() > 1;
            if !(row_ok && col_ok) {
                continue;
            }
            let mut trial = pairs.clone();
            trial.remove(k);
            if pairs_distortion(x, y, &trial) < dis {
                pairs = trial;
                improved = true;
                break;
            }
        }
        if !improved {
            break;
        }
    }
    pairs.sort_unstable();
    Relation::from_pairs(n, m, &pairs).unwrap()
}

/// The fixed candidate family used outside the enumerable regime.
fn candidate_relations(x: &MmSpace, y: &MmSpace) -> Vec<Relation> {
    let (pi, _) = transport_lp(&profile_cost(x, y), x.weights(), y.weights());
    let heaviest = |s: &MmSpace| {
        (0..s.len())
            .max_by(|&a, &b| s.weight(a).total_cmp(&s.weight(b)))
            .unwrap()
    };
    vec![
        Relation::full(x.len(), y.len()),
        Relation::from_pairs(x.len(), y.len(), &[(heaviest(x), heaviest(y))]).unwrap(),
        weight_matching(x, y),
        support_relation(&pi),
        greedy_correspondence(x, y),
    ]
}

/// First-improvement single-bit flips on the relation objective.
fn local_search(x: &MmSpace, y: &MmSpace, start: Relation, rounds: usize) -> Relation {
    let (n, m) = (x.len(), y.len());
    let mut rows = start.rows();
    let mut best = relation_objective(x, y, &start);
    for _ in 0..rounds {
        let mut improved = false;
        for c in 0..n * m {
            let (i, j) = (c / m, c % m);
            rows[i][j] = !rows[i][j];
            if let Ok(r) = Relation::new(rows.clone()) {
                let v = relation_objective(x, y, &r);
                if v < best - LEVEL_TOL {
                    best = v;
                    improved = true;
                    continue;
                }
            }
            rows[i][j] = !rows[i][j];
        }
        if !improved {
            break;
        }
    }
    Relation::new(rows).unwrap()
}

/// Gromov–Hausdorff distance `inf_R dis(R) / 2` over correspondences.
pub fn gromov_hausdorff(x: &MmSpace, y: &MmSpace) -> CertifiedInterval {
    gromov_hausdorff_with(x, y, &MetricOptions::default())
}

pub fn gromov_hausdorff_with(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    oriented(x, y, opts, gh_impl)
}

fn gh_impl(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    let (n, m) = (x.len(), y.len());
    let diam_gap = 0.5 * (x.diameter() - y.diameter()).abs();
    let mut lower = diam_gap;
    let mut lower_witness = Witness::Inequality {
        description: "half the difference of the diameters".into(),
    };
    if n * m <= opts.relation_cells {
        let refuted = "correspondences of smaller distortion excluded by clique search";
        for &level in &distortion_levels(x, y) {
            if 0.5 * level < diam_gap - LEVEL_TOL {
                continue;
            }
            let adj = compatibility(x, y, level);
            let mut found = None;
            let status = maximal_cliques(
                &adj,
                opts.clique_budget,
                &|r, p| !covers(r | p, n, m),
                &mut |c| {
                    if covers(c, n, m) {
                        found = Some(c);
                        false
                    } else {
                        true
                    }
                },
            );
            if let Some(mask) = found {
                let rel = Relation::from_mask(n, m, mask);
                let value = 0.5 * distortion(&rel, x, y);
                return CertifiedInterval::exact(
                    value,
                    Witness::Relation {
                        relation: rel,
                        objective: value,
                    },
                    refuted,
                );
            }
            // every level below this one has been excluded
            lower = lower.max(0.5 * level);
            lower_witness = Witness::Exact {
                description: refuted.into(),
            };
            if status == Enumeration::Truncated {
                break;
            }
        }
    }
    let rel = greedy_correspondence(x, y);
    let upper = 0.5 * distortion(&rel, x, y);
    CertifiedInterval::new(
        lower.min(upper),
        upper,
        lower_witness,
        Witness::Relation {
            relation: rel,
            objective: upper,
        },
    )
}

/// Gromov–Prohorov distance.
pub fn gromov_prohorov(x: &MmSpace, y: &MmSpace) -> CertifiedInterval {
    gromov_prohorov_with(x, y, &MetricOptions::default())
}

pub fn gromov_prohorov_with(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    oriented(x, y, opts, gpr_impl)
}

/// Lower bound for the Gromov–Prohorov distance from the distance distributions.
fn gpr_lower(x: &MmSpace, y: &MmSpace) -> f64 {
    0.5 * prohorov_line(&distance_distribution(x), &distance_distribution(y))
}

/// Exhaustive minimum of the relation objective over maximal cliques, and
/// whether the search finished within the clique budget.
fn gpr_enumerate(
    x: &MmSpace,
    y: &MmSpace,
    opts: &MetricOptions,
    mut best: (f64, Relation),
) -> ((f64, Relation), bool) {
    let (n, m) = (x.len(), y.len());
    let (wx, wy) = (x.weights(), y.weights());
    let mut left = opts.clique_budget;
    for &level in &distortion_levels(x, y) {
        let half = 0.5 * level;
        if half >= best.0 {
            break;
        }
        let adj = compatibility(x, y, level);
        let bound = best.0;
        // the coupling mass on a relation is at most the weight of its rows (and columns)
        let prune = |r: u128, p: u128| {
            let mut rows = 0u128;
            let mut cols = 0u128;
            let mut rest = r | p;
            while rest != 0 {
                let c = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                rows |= 1 << (c / m);
                cols |= 1 << (c % m);
            }
            let mass = |bits: u128, w: &[f64]| {
                (0..w.len())
                    .filter(|&k| bits >> k & 1 == 1)
                    .map(|k| w[k])
                    .sum::<f64>()
            };
            1.0 - mass(rows, wx).min(mass(cols, wy)) >= bound
        };
        let mut visited = 0usize;
        let status = maximal_cliques(&adj, left, &prune, &mut |c| {
            visited += 1;
            let pairs = mask_pairs(c, m);
            let dis = pairs_distortion(x, y, &pairs);
            if dis < level - LEVEL_TOL {
                return true;
            }
            let v = (0.5 * dis).max(outside_mass(x, y, &pairs).0);
            if v < best.0 {
                best = (v, Relation::from_mask(n, m, c));
            }
            true
        });
        if status == Enumeration::Truncated {
            return (best, false);
        }
        left -= visited;
    }
    (best, true)
}

fn gpr_impl(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    let (n, m) = (x.len(), y.len());
    let mut seeds: Vec<(f64, Relation)> = candidate_relations(x, y)
        .into_iter()
        .map(|r| (relation_objective(x, y, &r), r))
        .collect();
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut start = seeds[0].clone();
    if n * m <= opts.relation_cells {
        let (found, complete) = gpr_enumerate(x, y, opts, start.clone());
        if complete {
            let value = glued_prohorov(x, y, &found.1);
            return CertifiedInterval::exact(
                value,
                Witness::Relation {
                    relation: found.1,
                    objective: value,
                },
                "minimum over all relation gluings",
            );
        }
        seeds.push(found.clone());
        start = found;
    }
    let mut best: Option<(f64, Relation)> = None;
    let mut consider = |rel: Relation| {
        let v = glued_prohorov(x, y, &rel);
        if best.as_ref().is_none_or(|b| v < b.0) {
            best = Some((v, rel));
        }
    };
    for (_, r) in &seeds {
        consider(r.clone());
    }
    if n * m <= opts.local_search_cells {
        consider(local_search(x, y, start.1, 4));
    }
    let (upper, rel) = best.unwrap();
    let lower = gpr_lower(x, y).min(upper);
    CertifiedInterval::new(
        lower,
        upper,
        Witness::Inequality {
            description: "half the Eurandom lower bound (d_Eur <= 2 d_GPr)".into(),
        },
        Witness::Relation {
            relation: rel,
            objective: upper,
        },
    )
}

/// Gromov–Wasserstein distance with truncated cost `min(r, 1)`.
///
/// Exact for small `n * m` (see [`MetricOptions::coupling_cells`]). Otherwise
/// the upper bound is the best relation gluing and the lower bound is the
/// square of the Gromov–Prohorov lower bound.
pub fn gromov_wasserstein(x: &MmSpace, y: &MmSpace) -> CertifiedInterval {
    gromov_wasserstein_with(x, y, &MetricOptions::default())
}

pub fn gromov_wasserstein_with(
    x: &MmSpace,
    y: &MmSpace,
    opts: &MetricOptions,
) -> CertifiedInterval {
    oriented(x, y, opts, gw_impl)
}

/// Best truncated transport cost over relation gluings, with the relation.
/// `complete` is false when the clique budget cut the search short.
pub(crate) fn gw_relation_search(
    x: &MmSpace,
    y: &MmSpace,
    opts: &MetricOptions,
) -> (f64, Relation, bool) {
    let (n, m) = (x.len(), y.len());
    let mut best: Option<(f64, Relation)> = None;
    let consider = |rel: Relation, best: &mut Option<(f64, Relation)>| {
        let v = glued_wasserstein(x, y, &rel).0;
        if best.as_ref().is_none_or(|b| v < b.0) {
            *best = Some((v, rel));
        }
    };
    for r in candidate_relations(x, y) {
        consider(r, &mut best);
    }
    let mut complete = false;
    if n * m <= opts.relation_cells {
        complete = true;
        let mut left = opts.clique_budget;
        for &level in &distortion_levels(x, y) {
            // cross distances of a gluing are at least dis/2
            if (0.5 * level).min(1.0) >= best.as_ref().unwrap().0 {
                break;
            }
            let adj = compatibility(x, y, level);
            let mut visited = 0usize;
            let status = maximal_cliques(&adj, left, &|_, _| false, &mut |c| {
                visited += 1;
                let pairs = mask_pairs(c, m);
                if pairs_distortion(x, y, &pairs) < level - LEVEL_TOL {
                    return true;
                }
                consider(Relation::from_mask(n, m, c), &mut best);
                true
            });
            if status == Enumeration::Truncated {
                complete = false;
                break;
            }
            left -= visited;
        }
    }
    let (v, r) = best.unwrap();
    (v, r, complete)
}

/// Cross distances of the gluing that puts cell `c = (i, j)` of `cells` at
/// distance `h[c]`: `D(x, y) = min_c r(x, x_c) + h_c + r(y_c, y)`. This is a
/// pseudometric on `X ⊔ Y` whenever `h_c + h_c' >= |r(x_c, x_c') - r(y_c, y_c')|`.
fn offset_cross(x: &MmSpace, y: &MmSpace, cells: &[(usize, usize)], h: &[f64]) -> Vec<f64> {
    let (n, m) = (x.len(), y.len());
    let mut out = vec![f64::INFINITY; n * m];
    for (a, b) in (0..n).flat_map(|a| (0..m).map(move |b| (a, b))) {
        for (&(i, j), &hc) in cells.iter().zip(h) {
            out[a * m + b] = out[a * m + b].min(x.d(a, i) + hc + y.d(j, b));
        }
    }
    out
}

/// Cheapest offsets on `cells` with weights `w`: `min sum w_c h_c` subject to
/// `h_c + h_c' >= |r(x_c, x_c') - r(y_c, y_c')|` and `h >= 0`.
fn cheapest_offsets(
    x: &MmSpace,
    y: &MmSpace,
    cells: &[(usize, usize)],
    w: &[f64],
) -> (f64, Vec<f64>) {
    let k = cells.len();
    let mut gaps = Vec::new();
    let mut cols = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let ((i, j), (p, q)) = (cells[a], cells[b]);
            let gap = (x.d(i, p) - y.d(j, q)).abs();
            if gap > 0.0 {
                gaps.push(gap);
                cols.push((a, b));
            }
        }
    }
    if gaps.is_empty() {
        return (0.0, vec![0.0; k]);
    }
    let mut rows = vec![0.0; k * gaps.len()];
    for (col, &(a, b)) in cols.iter().enumerate() {
        rows[a * gaps.len() + col] = 1.0;
        rows[b * gaps.len() + col] = 1.0;
    }
    max_packing(&gaps, &rows, w)
}

/// Exact truncated transport distance over all metric extensions.
///
/// For a fixed coupling the cost is linear, so vertices of the coupling
/// polytope suffice. Given a vertex, every support cell either pays 1 (its
/// distance is pushed past 1, which only relaxes the triangle inequalities)
/// or pays its offset, and the cheapest offsets for the remaining cells are
/// a small linear program.
fn gw_exact(x: &MmSpace, y: &MmSpace, bound: f64) -> Option<(f64, Coupling)> {
    let (wx, wy) = (x.weights(), y.weights());
    let mut best: Option<(f64, Coupling)> = None;
    let mut cutoff = bound;
    for pi in FaceTable::new(wx, wy).vertices() {
        let support: Vec<(usize, usize)> = support_relation(&pi).pairs();
        let mass: Vec<f64> = support.iter().map(|&(i, j)| pi.get(i, j)).collect();
        let k = support.len();
        for capped in 0u32..(1 << k) {
            let paid: f64 = (0..k)
                .filter(|&c| capped >> c & 1 == 1)
                .map(|c| mass[c])
                .sum();
            if paid >= cutoff {
                continue;
            }
            let free: Vec<usize> = (0..k).filter(|&c| capped >> c & 1 == 0).collect();
            if free.is_empty() {
                continue;
            }
            let cells: Vec<(usize, usize)> = free.iter().map(|&c| support[c]).collect();
            let w: Vec<f64> = free.iter().map(|&c| mass[c]).collect();
            let (v, h) = cheapest_offsets(x, y, &cells, &w);
            if paid + v < cutoff {
                let cost: Vec<f64> = offset_cross(x, y, &cells, &h)
                    .into_iter()
                    .map(|d| d.min(1.0))
                    .collect();
                let (plan, value) = transport_lp(&cost, wx, wy);
                let value = value.min(paid + v);
                if value < cutoff {
                    cutoff = value;
                    best = Some((value, plan));
                }
            }
        }
    }
    best
}

fn gw_impl(x: &MmSpace, y: &MmSpace, opts: &MetricOptions) -> CertifiedInterval {
    let (upper, rel, _) = gw_relation_search(x, y, opts);
    if x.len() * y.len() <= opts.coupling_cells.min(FACE_LIMIT) {
        let desc = "minimum over couplings and all metric extensions";
        return match gw_exact(x, y, upper) {
            Some((value, plan)) => CertifiedInterval::exact(
                value,
                Witness::Coupling {
                    coupling: plan,
                    objective: value,
                },
                desc,
            ),
            None => CertifiedInterval::exact(
                upper,
                Witness::Relation {
                    relation: rel,
                    objective: upper,
                },
                desc,
            ),
        };
    }
    let g = gpr_lower(x, y);
    let lower = (g * g).min(upper);
    let lower_witness = Witness::Inequality {
        description: "square of the Gromov-Prohorov lower bound".into(),
    };
    if lower == upper {
        return CertifiedInterval::new(
            lower,
            upper,
            Witness::Exact {
                description: "bounds coincide".into(),
            },
            Witness::Relation {
                relation: rel,
                objective: upper,
            },
        );
    }
    CertifiedInterval::new(
        lower,
        upper,
        lower_witness,
        Witness::Relation {
            relation: rel,
            objective: upper,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(d: f64) -> MmSpace {
        MmSpace::uniform(vec![vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    fn simplex(k: usize) -> MmSpace {
        MmSpace::uniform(
            (0..k)
                .map(|i| (0..k).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn gh_examples() {
        let x = two(1.0);
        assert_eq!(gromov_hausdorff(&x, &x).upper, 0.0);
        let c = gromov_hausdorff(&MmSpace::one_point(), &two(3.0));
        assert!(c.is_exact());
        assert_eq!(c.upper, 1.5);
        let c = gromov_hausdorff(&two(1.0), &two(3.0));
        assert!(c.is_exact());
        assert_eq!(c.upper, 1.0);
    }

    #[test]
    fn gpr_point_vs_pair() {
        for d in [1.0, 2.0, 3.0] {
            let c = gromov_prohorov(&MmSpace::one_point(), &two(d));
            assert!(c.is_exact());
            assert_eq!(c.upper, 0.5, "d = {d}");
        }
    }

    #[test]
    fn gpr_simplices() {
        let c = gromov_prohorov(&simplex(4), &simplex(8));
        assert!(c.is_exact());
        assert!((c.upper - 0.5).abs() < 1e-12, "{c:?}");
    }

    #[test]
    fn gw_point_vs_pair() {
        let c = gromov_wasserstein(&MmSpace::one_point(), &two(2.0));
        assert!((c.upper - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identical_spaces() {
        let x = simplex(3);
        for c in [
            gromov_prohorov(&x, &x),
            gromov_wasserstein(&x, &x),
            gromov_hausdorff(&x, &x),
        ] {
            assert_eq!((c.lower, c.upper), (0.0, 0.0));
            assert!(c.is_exact());
        }
    }
}
