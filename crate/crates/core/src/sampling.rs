//! Sampled distance matrices and polynomials.

use std::fmt;
use std::sync::Arc;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::functional::{check_enumeration, odometer};
use crate::space::MmSpace;

type Phi = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Strict upper triangle of the distance matrix of `m` sampled points,
/// packed row by row: `(1,2), (1,3), ..., (1,m), (2,3), ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrixSample {
    pub m: usize,
    entries: Vec<f64>,
}

impl DistanceMatrixSample {
    pub fn from_entries(m: usize, entries: Vec<f64>) -> Result<Self> {
        if m < 2 || entries.len() != m * (m - 1) / 2 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for m = {m}",
                entries.len()
            )));
        }
        Ok(Self { m, entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entry for `i != j` (0-based).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.entries[pair_index(self.m, i, j)]
    }

    /// Membership in the cone of pseudo-metrics (triangle inequality for all triples).
    pub fn is_metric(&self, tol: f64) -> bool {
        let m = self.m;
        (0..m).all(|i| {
            (0..m).all(|j| (0..m).all(|k| self.get(i, k) <= self.get(i, j) + self.get(j, k) + tol))
        })
    }
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// Pairwise distances of `points`, packed in upper-triangle order.
pub(crate) fn packed_distances(x: &MmSpace, points: &[usize], out: &mut Vec<f64>) {
    out.clear();
    for a in 0..points.len() {
        for b in (a + 1)..points.len() {
            out.push(x.d(points[a], points[b]));
        }
    }
}

/// Draw `m` i.i.d. points from the weights and record their distances.
pub fn sample_distance_matrix<R: Rng + ?Sized>(
    x: &MmSpace,
    m: usize,
    rng: &mut R,
) -> Result<DistanceMatrixSample> {
    if m < 2 {
        return Err(Error::InvalidArgument(
            "need at least two sampled points".into(),
        ));
    }
    let sampler = point_sampler(x);
    let pts: Vec<usize> = (0..m).map(|_| sampler.sample(rng)).collect();
    let mut entries = Vec::new();
    packed_distances(x, &pts, &mut entries);
    Ok(DistanceMatrixSample { m, entries })
}

pub(crate) fn point_sampler(x: &MmSpace) -> WeightedIndex<f64> {
    WeightedIndex::new(x.weights()).expect("weights of a valid space are positive")
}

/// A test function of the `n(n-1)/2` pairwise distances of `n` sampled points.
///
/// `phi` receives distances in upper-triangle order. The caller is
/// responsible for `phi` being bounded.
#[derive(Clone)]
pub struct Polynomial {
    pub degree: usize,
    phi: Phi,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polynomial")
            .field("degree", &self.degree)
            .finish_non_exhaustive()
    }
}

impl Polynomial {
    pub fn new(degree: usize, phi: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        assert!(degree >= 1, "polynomial degree must be positive");
        Self {
            degree,
            phi: Arc::new(phi),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(1, move |_| c)
    }

    pub fn eval_phi(&self, distances: &[f64]) -> f64 {
        (self.phi)(distances)
    }
}

/// Exact value `int phi(distances) d mu^{degree}` by enumeration of all tuples.
pub fn evaluate_polynomial_exact(x: &MmSpace, p: &Polynomial) -> Result<f64> {
    let n = x.len();
    check_enumeration(n, p.degree)?;
    let mut idx = vec![0usize; p.degree];
    let mut buf = Vec::new();
    let mut total = 0.0;
    loop {
        let w: f64 = idx.iter().map(|&u| x.weight(u)).product();
        packed_distances(x, &idx, &mut buf);
        total += w * p.eval_phi(&buf);
        if !odometer(&mut idx, n) {
            break;
        }
    }
    Ok(total)
}

/// Monte Carlo estimate with its standard error (sample sd / sqrt(samples)).
pub fn evaluate_polynomial_mc<R: Rng + ?Sized>(
    x: &MmSpace,
    p: &Polynomial,
    samples: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let sampler = point_sampler(x);
    let mut pts = vec![0usize; p.degree];
    let mut buf = Vec::new();
    // Welford
    let (mut mean, mut m2) = (0.0, 0.0);
    for s in 0..samples {
        pts.iter_mut().for_each(|u| *u = sampler.sample(rng));
        packed_distances(x, &pts, &mut buf);
        let v = p.eval_phi(&buf);
        let delta = v - mean;
        mean += delta / (s + 1) as f64;
        m2 += delta * (v - mean);
    }
    let se = if samples > 1 {
        (m2 / (samples - 1) as f64).sqrt() / (samples as f64).sqrt()
    } else {
        0.0
    };
    Ok((mean, se))
}
