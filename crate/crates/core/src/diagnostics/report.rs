//! Grid-based pre-compactness and tightness diagnostics.
//!
//! A family of mm-spaces is pre-compact when its distance distributions are
//! tight and `sup v_delta -> 0` as `delta -> 0`. A finite report can only
//! probe finitely many `delta` and `C`, so every verdict here is relative to
//! the probed grid and says nothing about grid points that were not probed.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::coalescent::mean_stderr;
use crate::error::{Error, Result};
use crate::functional::{distance_distribution, BallProfile};
use crate::metrics::{eurandom, gromov_prohorov};
use crate::sampling::{evaluate_polynomial_exact, Polynomial};
use crate::space::MmSpace;

/// Outcome of a condition on the probed grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// The grid data is consistent with the condition.
    Pass,
    /// The grid data refutes the condition at the chosen threshold.
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Thresholds for the two conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// Condition (i) passes if the tail mass at the largest `C` is below this.
    pub tail: f64,
    /// Condition (ii) passes if `sup v_delta` at the smallest `delta` is below this.
    pub modulus: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            tail: 0.1,
            modulus: 0.1,
        }
    }
}

/// One grid point of a report, with a standard error for Monte Carlo reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridValue {
    pub at: f64,
    pub value: f64,
    pub stderr: f64,
}

/// Family-wide suprema of `v_delta` and of the tails `w_X([C, inf))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family_size: usize,
    /// Sorted ascending in `delta`.
    pub sup_v: Vec<GridValue>,
    /// Sorted ascending in `C`.
    pub tail: Vec<GridValue>,
    pub thresholds: Thresholds,
    /// Tightness of the distance distributions, on the probed grid.
    pub condition_i: Verdict,
    /// Vanishing modulus of mass distribution, on the probed grid.
    pub condition_ii: Verdict,
}

fn sorted_grid(grid: &[f64], what: &str) -> Result<Vec<f64>> {
    if grid.is_empty() || grid.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "{what} grid must be nonempty, finite and nonnegative"
        )));
    }
    let mut g = grid.to_vec();
    crate::space::sort_dedup(&mut g);
    Ok(g)
}

/// Evaluate the pre-compactness conditions for a finite family.
pub fn precompactness_report(
    family: &[MmSpace],
    delta_grid: &[f64],
    c_grid: &[f64],
    thresholds: Thresholds,
) -> Result<FamilyReport> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("family must be nonempty".into()));
    }
    let deltas = sorted_grid(delta_grid, "delta")?;
    let cs = sorted_grid(c_grid, "C")?;
    let profiles: Vec<BallProfile> = family.iter().map(BallProfile::new).collect();
    let laws: Vec<_> = family.iter().map(distance_distribution).collect();
    let sup = |f: &dyn Fn(usize) -> f64| (0..family.len()).map(f).fold(0.0f64, f64::max);
    let sup_v: Vec<GridValue> = deltas
        .iter()
        .map(|&d| GridValue {
            at: d,
            value: sup(&|i| profiles[i].modulus(d)),
            stderr: 0.0,
        })
        .collect();
    let tail: Vec<GridValue> = cs
        .iter()
        .map(|&c| GridValue {
            at: c,
            value: sup(&|i| laws[i].tail(c)),
            stderr: 0.0,
        })
        .collect();
    Ok(FamilyReport {
        family_size: family.len(),
        condition_i: verdict(tail.last().unwrap().value < thresholds.tail),
        condition_ii: verdict(sup_v[0].value < thresholds.modulus),
        sup_v,
        tail,
        thresholds,
    })
}

/// Monte Carlo tightness estimates for a random mm-space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightnessReport {
    pub runs: usize,
    /// `E[v_delta]` per `delta`.
    pub mean_v: Vec<GridValue>,
    /// `P{v_delta >= eps}` per `(delta, eps)`, `delta` outer.
    pub prob_v_exceeds: Vec<(f64, GridValue)>,
    /// `E[mu{x : mu(B_eps(x)) <= delta}]` per `(delta, eps)`, `delta` outer.
    pub mean_thin: Vec<(f64, GridValue)>,
    /// `E[w_X([C, inf))]` per `C`.
    pub mean_tail: Vec<GridValue>,
    pub thresholds: Thresholds,
    /// `E[w_X([C, inf))]` at the largest `C` is below the threshold.
    pub condition_i: Verdict,
    /// `E[v_delta]` at the smallest `delta` is below the threshold.
    pub condition_ii: Verdict,
}

/// Estimate the three equivalent forms of the tightness condition
/// (`E v_delta`, `P{v_delta >= eps}`, `E mu{thin points}`) from `runs` draws.
pub fn tightness_report<R: Rng + ?Sized>(
    sampler: &mut dyn FnMut(&mut R) -> Result<MmSpace>,
    runs: usize,
    delta_grid: &[f64],
    eps_grid: &[f64],
    c_grid: &[f64],
    thresholds: Thresholds,
    rng: &mut R,
) -> Result<TightnessReport> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be positive".into()));
    }
    let deltas = sorted_grid(delta_grid, "delta")?;
    let epss = sorted_grid(eps_grid, "eps")?;
    let cs = sorted_grid(c_grid, "C")?;
    let pairs = deltas.len() * epss.len();
    let mut v = vec![Vec::with_capacity(runs); deltas.len()];
    let mut exceeds = vec![Vec::with_capacity(runs); pairs];
    let mut thin = vec![Vec::with_capacity(runs); pairs];
    let mut tails = vec![Vec::with_capacity(runs); cs.len()];
    for _ in 0..runs {
        let x = sampler(rng)?;
        let prof = BallProfile::new(&x);
        let law = distance_distribution(&x);
        for (a, &d) in deltas.iter().enumerate() {
            let vd = prof.modulus(d);
            v[a].push(vd);
            for (b, &e) in epss.iter().enumerate() {
                exceeds[a * epss.len() + b].push(if vd >= e { 1.0 } else { 0.0 });
                thin[a * epss.len() + b].push(prof.thin_mass(e, d));
            }
        }
        for (c, &cv) in cs.iter().enumerate() {
            tails[c].push(law.tail(cv));
        }
    }
    let summarize = |at: f64, xs: &[f64]| {
        let (value, stderr) = mean_stderr(xs);
        GridValue { at, value, stderr }
    };
    let mean_v: Vec<GridValue> = deltas
        .iter()
        .zip(&v)
        .map(|(&d, xs)| summarize(d, xs))
        .collect();
    let grid2 = |data: &[Vec<f64>]| -> Vec<(f64, GridValue)> {
        (0..pairs)
            .map(|p| {
                (
                    deltas[p / epss.len()],
                    summarize(epss[p % epss.len()], &data[p]),
                )
            })
            .collect()
    };
    let mean_tail: Vec<GridValue> = cs
        .iter()
        .zip(&tails)
        .map(|(&c, xs)| summarize(c, xs))
        .collect();
    Ok(TightnessReport {
        runs,
        prob_v_exceeds: grid2(&exceeds),
        mean_thin: grid2(&thin),
        condition_i: verdict(mean_tail.last().unwrap().value < thresholds.tail),
        condition_ii: verdict(mean_v[0].value < thresholds.modulus),
        mean_v,
        mean_tail,
        thresholds,
    })
}

/// One consecutive pair of a [`convergence_crosscheck`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckRow {
    pub index: usize,
    pub gpr_upper: f64,
    pub eurandom_upper: f64,
    /// `|Phi(X_{i+1}) - Phi(X_i)|` per polynomial.
    pub gaps: Vec<f64>,
}

/// Distances and polynomial gaps along a sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckTable {
    pub rows: Vec<CrosscheckRow>,
    /// Largest polynomial gap over the second half of the rows.
    pub late_gap: f64,
    /// `late_gap <= tol`.
    pub cauchy: bool,
}

/// Tabulate Gromov–Prohorov and Eurandom upper bounds and polynomial gaps
/// between consecutive members of `sequence`.
pub fn convergence_crosscheck(
    sequence: &[MmSpace],
    polys: &[Polynomial],
    tol: f64,
) -> Result<CrosscheckTable> {
    if sequence.len() < 2 {
        return Err(Error::InvalidArgument(
            "sequence needs at least two spaces".into(),
        ));
    }
    let values: Vec<Vec<f64>> = sequence
        .iter()
        .map(|x| {
            polys
                .iter()
                .map(|p| evaluate_polynomial_exact(x, p))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<CrosscheckRow> = sequence
        .windows(2)
        .enumerate()
        .map(|(i, w)| CrosscheckRow {
            index: i,
            gpr_upper: gromov_prohorov(&w[0], &w[1]).upper,
            eurandom_upper: eurandom(&w[0], &w[1]).upper,
            gaps: values[i]
                .iter()
                .zip(&values[i + 1])
                .map(|(a, b)| (a - b).abs())
                .collect(),
        })
        .collect();
    let late_gap = rows[rows.len() / 2..]
        .iter()
        .flat_map(|r| r.gaps.iter().copied())
        .fold(0.0, f64::max);
    Ok(CrosscheckTable {
        cauchy: late_gap <= tol,
        late_gap,
        rows,
    })
}

/// CSV with columns `delta,sup_v,stderr`.
pub fn modulus_csv(points: &[GridValue]) -> Result<String> {
    #[derive(Serialize)]
    struct Row {
        delta: f64,
        sup_v: f64,
        stderr: f64,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points {
        w.serialize(Row {
            delta: p.at,
            sup_v: p.value,
            stderr: p.stderr,
        })
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

impl FamilyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> Result<String> {
        modulus_csv(&self.sup_v)
    }
}

impl TightnessReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> Result<String> {
        modulus_csv(&self.mean_v)
    }
}
