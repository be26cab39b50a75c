//! Finite measures `Lambda` on `[0, 1]` and the merger rates they induce.

use std::fmt;
use std::str::FromStr;

use statrs::function::beta::ln_beta;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// `mass` times the Beta(`a`, `b`) probability density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaComponent {
    pub a: f64,
    pub b: f64,
    pub mass: f64,
}

/// A finite measure on `[0, 1]`: atoms at the endpoints, interior atoms and
/// Beta density components.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LambdaMeasure {
    pub atom0: f64,
    pub atom1: f64,
    pub betas: Vec<BetaComponent>,
    /// `(location, mass)` with location in `(0, 1)`.
    pub atoms: Vec<(f64, f64)>,
}

impl LambdaMeasure {
    /// `delta_0`: binary mergers only.
    pub fn kingman() -> Self {
        Self {
            atom0: 1.0,
            ..Self::default()
        }
    }

    /// Lebesgue measure on `[0, 1]`.
    pub fn bolthausen_sznitman() -> Self {
        Self::beta(1.0, 1.0, 1.0)
    }

    pub fn beta(a: f64, b: f64, mass: f64) -> Self {
        Self {
            betas: vec![BetaComponent { a, b, mass }],
            ..Self::default()
        }
    }

    /// Point mass at `x`; `x = 0` and `x = 1` land in the endpoint atoms.
    pub fn atom(x: f64, mass: f64) -> Self {
        match x {
            0.0 => Self {
                atom0: mass,
                ..Self::default()
            },
            1.0 => Self {
                atom1: mass,
                ..Self::default()
            },
            _ => Self {
                atoms: vec![(x, mass)],
                ..Self::default()
            },
        }
    }

    /// Sum of two measures.
    pub fn plus(mut self, other: LambdaMeasure) -> Self {
        self.atom0 += other.atom0;
        self.atom1 += other.atom1;
        self.betas.extend(other.betas);
        self.atoms.extend(other.atoms);
        self
    }

    pub fn total_mass(&self) -> f64 {
        self.atom0
            + self.atom1
            + self.betas.iter().map(|c| c.mass).sum::<f64>()
            + self.atoms.iter().map(|a| a.1).sum::<f64>()
    }

    /// Check parameter ranges and that the total mass is positive.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadLambdaSpec(self.to_string(), msg));
        if !(self.atom0 >= 0.0
            && self.atom0.is_finite()
            && self.atom1 >= 0.0
            && self.atom1.is_finite())
        {
            return bad("endpoint masses must be finite and nonnegative".into());
        }
        for c in &self.betas {
            if !(c.a > 0.0
                && c.b > 0.0
                && c.mass > 0.0
                && c.a.is_finite()
                && c.b.is_finite()
                && c.mass.is_finite())
            {
                return bad(format!(
                    "Beta component ({}, {}, {}) needs positive finite parameters",
                    c.a, c.b, c.mass
                ));
            }
        }
        for &(x, m) in &self.atoms {
            if !(x > 0.0 && x < 1.0 && m >= 0.0 && m.is_finite()) {
                return bad(format!(
                    "atom ({x}, {m}) needs location in (0, 1) and nonnegative mass"
                ));
            }
        }
        if self.total_mass() <= 0.0 {
            return Err(Error::DegenerateLambda);
        }
        Ok(())
    }

    /// Log of each component's contribution to `lambda_{b,k}`; `-inf` for none.
    fn ln_terms(&self, b: usize, k: usize) -> impl Iterator<Item = f64> + '_ {
        let (bf, kf) = (b as f64, k as f64);
        let endpoint = |mass: f64, hit: bool| {
            if hit && mass > 0.0 {
                mass.ln()
            } else {
                f64::NEG_INFINITY
            }
        };
        let betas = self
            .betas
            .iter()
            .map(move |c| c.mass.ln() + ln_beta(c.a + kf - 2.0, c.b + bf - kf) - ln_beta(c.a, c.b));
        let atoms = self
            .atoms
            .iter()
            .map(move |&(x, m)| m.ln() + (kf - 2.0) * x.ln() + (bf - kf) * (-x).ln_1p());
        [endpoint(self.atom0, k == 2), endpoint(self.atom1, k == b)]
            .into_iter()
            .chain(betas)
            .chain(atoms)
    }
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        comp += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
    }
    sum + comp
}

/// `lambda_{b,k} = int x^(k-2) (1-x)^(b-k) Lambda(dx)`: the rate at which a
/// given `k`-tuple out of `b` blocks merges.
///
/// # Panics
/// Unless `2 <= k <= b`.
pub fn lambda_rate(l: &LambdaMeasure, b: usize, k: usize) -> f64 {
    assert!(2 <= k && k <= b, "need 2 <= k <= b, got b = {b}, k = {k}");
    compensated_sum(l.ln_terms(b, k).map(f64::exp))
}

fn ln_choose(b: usize, k: usize) -> f64 {
    if b > 1000 {
        return ln_gamma(b as f64 + 1.0)
            - ln_gamma(k as f64 + 1.0)
            - ln_gamma((b - k) as f64 + 1.0);
    }
    // the running product stays integral, hence exact while below 2^53
    let k = k.min(b - k);
    (0..k)
        .fold(1.0, |c, i| c * (b - i) as f64 / (i + 1) as f64)
        .ln()
}

/// Rate `C(b,k) lambda_{b,k}` of some `k`-merger, computed in log space.
pub fn k_merger_rate(l: &LambdaMeasure, b: usize, k: usize) -> f64 {
    assert!(2 <= k && k <= b, "need 2 <= k <= b, got b = {b}, k = {k}");
    let c = ln_choose(b, k);
    compensated_sum(l.ln_terms(b, k).map(|t| (c + t).exp()))
}

/// Total rate `sum_k C(b,k) lambda_{b,k}` of leaving a state with `b` blocks.
pub fn total_merge_rate(l: &LambdaMeasure, b: usize) -> f64 {
    assert!(b >= 2, "need at least two blocks");
    compensated_sum((2..=b).map(|k| k_merger_rate(l, b, k)))
}

/// Per block count `b`, the total rate and the cumulative distribution of the
/// merger size `k`.
#[derive(Debug, Clone)]
pub struct RateTable {
    totals: Vec<f64>,
    cdfs: Vec<Vec<f64>>,
}

impl RateTable {
    /// Rates for every `b` in `2..=n`.
    pub fn new(l: &LambdaMeasure, n: usize) -> Result<Self> {
        l.validate()?;
        let mut totals = vec![0.0; n + 1];
        let mut cdfs = vec![Vec::new(); n + 1];
        for b in 2..=n {
            let rates: Vec<f64> = (2..=b).map(|k| k_merger_rate(l, b, k)).collect();
            let total = compensated_sum(rates.iter().copied());
            let mut acc = 0.0;
            cdfs[b] = rates
                .iter()
                .map(|r| {
                    acc += r / total;
                    acc
                })
                .collect();
            totals[b] = total;
        }
        Ok(Self { totals, cdfs })
    }

    pub fn max_blocks(&self) -> usize {
        self.totals.len() - 1
    }

    pub fn total(&self, b: usize) -> f64 {
        self.totals[b]
    }

    /// Merger size for a uniform draw `u` in `[0, 1)`, with `b` blocks.
    pub fn merger_size(&self, b: usize, u: f64) -> usize {
        let cdf = &self.cdfs[b];
        2 + cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
    }
}

/// Whether `int x^-1 Lambda(dx)` diverges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DustClass {
    /// The integral diverges: no individual stays a singleton.
    DustFree,
    /// The integral is finite: a positive fraction of singletons persists.
    Dust,
}

impl fmt::Display for DustClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DustClass::DustFree => "DustFree",
            DustClass::Dust => "Dust",
        })
    }
}

/// Analytic classification: an atom at 0 or a Beta(a, b) part with `a <= 1`
/// makes `x^-1` non-integrable near 0.
pub fn dust_classifier(l: &LambdaMeasure) -> DustClass {
    if l.atom0 > 0.0 || l.betas.iter().any(|c| c.a <= 1.0) {
        DustClass::DustFree
    } else {
        DustClass::Dust
    }
}

/// Numerical evidence for [`dust_classifier`].
#[derive(Debug, Clone)]
pub struct DustProbe {
    /// `int_{2^-k}^{1} x^-1 Lambda(dx)` for `k = 1..=levels`, atoms at 0 as `inf`.
    pub partial: Vec<f64>,
    /// Ratio of the last two dyadic increments.
    pub ratio: f64,
    pub verdict: DustClass,
}

fn simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson on `[a, b]` to relative accuracy `rel`, with bounded depth.
fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel: f64) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, rel * whole.abs(), 18)
}

/// Quadrature probe of `int x^-1 Lambda(dx)` over shrinking windows
/// `[2^-k, 1]`, halving the lower cutoff each step.
///
/// Densities are integrated in the variable `u = ln x`, where `x^-1 dx = du`.
/// The window `[1/2, 1]` is left out of the Beta parts: it is finite and does
/// not affect divergence, and the density may be singular at 1. The verdict
/// is `DustFree` when the increments stop shrinking.
pub fn dust_probe(l: &LambdaMeasure, levels: usize) -> DustProbe {
    assert!(levels >= 3);
    let atoms_above = |cut: f64| {
        l.atom1
            + l.atoms
                .iter()
                .filter(|a| a.0 >= cut)
                .map(|&(x, m)| m / x)
                .sum::<f64>()
    };
    let mut increments = Vec::with_capacity(levels);
    let mut partial = Vec::with_capacity(levels);
    let mut acc = 0.0;
    for k in 1..=levels {
        let (lo, hi) = (
            -(k as f64) * std::f64::consts::LN_2,
            -((k - 1) as f64) * std::f64::consts::LN_2,
        );
        let mut inc = 0.0;
        if k > 1 {
            for c in &l.betas {
                let norm = ln_beta(c.a, c.b);
                let f = move |u: f64| {
                    c.mass * ((c.a - 1.0) * u + (c.b - 1.0) * (-u.exp()).ln_1p() - norm).exp()
                };
                inc += integrate(&f, lo, hi, 1e-12);
            }
        }
        inc += atoms_above(lo.exp()) - atoms_above(hi.exp());
        acc += inc;
        increments.push(inc);
        partial.push(if l.atom0 > 0.0 { f64::INFINITY } else { acc });
    }
    let (last, prev) = (increments[levels - 1], increments[levels - 2]);
    let ratio = if prev > 0.0 { last / prev } else { 0.0 };
    let verdict = if l.atom0 > 0.0 || ratio >= 1.0 - 1e-9 {
        DustClass::DustFree
    } else {
        DustClass::Dust
    };
    DustProbe {
        partial,
        ratio,
        verdict,
    }
}

impl fmt::Display for LambdaMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.atom0 > 0.0 {
            parts.push(if self.atom0 == 1.0 {
                "kingman".to_string()
            } else {
                format!("atom:0,{}", self.atom0)
            });
        }
        for c in &self.betas {
            parts.push(if c.mass == 1.0 {
                format!("beta:{},{}", c.a, c.b)
            } else {
                format!("beta:{},{},{}", c.a, c.b, c.mass)
            });
        }
        for &(x, m) in &self.atoms {
            parts.push(format!("atom:{x},{m}"));
        }
        if self.atom1 > 0.0 {
            parts.push(format!("atom:1,{}", self.atom1));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for LambdaMeasure {
    type Err = Error;

    /// Parse `kingman`, `bolthausen-sznitman`, `beta:a,b[,mass]` and
    /// `atom:x,mass`, joined with `+`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::BadLambdaSpec(s.to_string(), msg.to_string());
        let mut out = LambdaMeasure::default();
        for term in s.split('+').map(str::trim) {
            let (name, args) = term.split_once(':').unwrap_or((term, ""));
            let nums = || -> Result<Vec<f64>> {
                args.split(',')
                    .map(|a| {
                        a.trim()
                            .parse::<f64>()
                            .map_err(|_| bad(&format!("`{a}` is not a number")))
                    })
                    .collect()
            };
            let part = match name.trim().to_ascii_lowercase().as_str() {
                "kingman" if args.is_empty() => LambdaMeasure::kingman(),
                "bolthausen-sznitman" if args.is_empty() => LambdaMeasure::bolthausen_sznitman(),
                "beta" => match nums()?[..] {
                    [a, b] => LambdaMeasure::beta(a, b, 1.0),
                    [a, b, m] => LambdaMeasure::beta(a, b, m),
                    _ => return Err(bad("beta takes `a,b` or `a,b,mass`")),
                },
                "atom" => match nums()?[..] {
                    [x, m] if (0.0..=1.0).contains(&x) => LambdaMeasure::atom(x, m),
                    [_, _] => return Err(bad("atom location must lie in [0, 1]")),
                    _ => return Err(bad("atom takes `x,mass`")),
                },
                "" => return Err(bad("empty term")),
                other => return Err(bad(&format!("unknown term `{other}`"))),
            };
            out = out.plus(part);
        }
        out.validate().map_err(|e| match e {
            Error::DegenerateLambda => e,
            Error::BadLambdaSpec(_, msg) => Error::BadLambdaSpec(s.to_string(), msg),
            other => other,
        })?;
        Ok(out)
    }
}
