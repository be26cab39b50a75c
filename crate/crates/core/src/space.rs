//! Finite metric measure spaces.

use crate::error::{Error, Result};

/// Absolute tolerance for symmetry, the triangle inequality and the weight sum.
pub const VALIDATION_TOL: f64 = 1e-12;

/// A finite metric measure space: `n` labelled points, a metric and a
/// probability vector with strictly positive entries.
///
/// Immutable after construction; every constructor validates.
#[derive(Debug, Clone, PartialEq)]
pub struct MmSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
    weights: Vec<f64>,
}

impl MmSpace {
    /// Validate and build a space. `dist` is given row by row.
    ///
    /// The first violated invariant is reported with its indices.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if labels.len() != n || weights.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels, {} rows, {} weights",
                labels.len(),
                n,
                weights.len()
            )));
        }
        if let Some((i, row)) = dist.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        let flat: Vec<f64> = dist.into_iter().flatten().collect();
        validate_metric(n, &flat)?;
        validate_weights(&weights)?;
        Ok(Self {
            labels,
            dist: flat,
            weights,
        })
    }

    /// Build with labels `"0"`, `"1"`, ...
    pub fn from_matrix(dist: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let labels = (0..dist.len()).map(|i| i.to_string()).collect();
        Self::new(labels, dist, weights)
    }

    /// Uniform weights `1/n`.
    pub fn uniform(dist: Vec<Vec<f64>>) -> Result<Self> {
        let n = dist.len();
        Self::from_matrix(dist, vec![1.0 / n as f64; n])
    }

    /// The one-point space.
    pub fn one_point() -> Self {
        Self {
            labels: vec!["0".into()],
            dist: vec![0.0],
            weights: vec![1.0],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.dist[i * n..(i + 1) * n]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Distance matrix as nested rows.
    pub fn dist_rows(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Sorted distinct values of the distance matrix, always starting with 0.
    pub fn distinct_distances(&self) -> Vec<f64> {
        let mut v = self.dist.clone();
        v.push(0.0);
        sort_dedup(&mut v);
        v
    }

    /// Merge points at distance 0 from each other, summing their weights.
    ///
    /// The first point of each group keeps its label.
    pub fn canonicalize(&self) -> MmSpace {
        let n = self.len();
        let mut rep: Vec<usize> = Vec::new();
        let mut group = vec![usize::MAX; n];
        for i in 0..n {
            if let Some(g) = rep.iter().position(|&r| self.d(r, i) == 0.0) {
                group[i] = g;
            } else {
                group[i] = rep.len();
                rep.push(i);
            }
        }
        let mut weights = vec![0.0; rep.len()];
        for i in 0..n {
            weights[group[i]] += self.weights[i];
        }
        let dist = rep
            .iter()
            .map(|&a| rep.iter().map(|&b| self.d(a, b)).collect())
            .collect::<Vec<Vec<f64>>>();
        let labels = rep.iter().map(|&a| self.labels[a].clone()).collect();
        MmSpace {
            labels,
            dist: dist.into_iter().flatten().collect(),
            weights,
        }
    }

    /// True if `d(i,j) <= max(d(i,k), d(k,j))` for all triples (up to `tol`).
    pub fn is_ultrametric(&self, tol: f64) -> bool {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let dij = self.d(i, j);
                for k in 0..n {
                    if dij > self.d(i, k).max(self.d(k, j)) + tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Search for a weight-preserving isometric bijection `self -> other`.
    ///
    /// Exhaustive backtracking over point assignments; returns `perm` with
    /// `self` point `i` mapped to `other` point `perm[i]`.
    pub fn isometry_to(&self, other: &MmSpace, tol: f64) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            a: &MmSpace,
            b: &MmSpace,
            tol: f64,
            i: usize,
            perm: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let n = a.len();
            if i == n {
                return true;
            }
            for cand in 0..n {
                if used[cand] || (a.weight(i) - b.weight(cand)).abs() > tol {
                    continue;
                }
                if (0..i).all(|p| (a.d(i, p) - b.d(cand, perm[p])).abs() <= tol) {
                    perm[i] = cand;
                    used[cand] = true;
                    if go(a, b, tol, i + 1, perm, used) {
                        return true;
                    }
                    used[cand] = false;
                }
            }
            false
        }
        go(self, other, tol, 0, &mut perm, &mut used).then_some(perm)
    }
}

pub(crate) fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup();
}

/// Check symmetry, zero diagonal, nonnegativity and the triangle inequality
/// of a flat row-major `n x n` matrix.
pub fn validate_metric(n: usize, d: &[f64]) -> Result<()> {
    for i in 0..n {
        for j in 0..n {
            let v = d[i * n + j];
            if !v.is_finite() || v < 0.0 {
                return Err(Error::BadDistance(i, j));
            }
        }
    }
    for i in 0..n {
        if d[i * n + i] != 0.0 {
            return Err(Error::NonZeroDiagonal(i));
        }
        for j in (i + 1)..n {
            if (d[i * n + j] - d[j * n + i]).abs() > VALIDATION_TOL {
                return Err(Error::NonSymmetric(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i * n + k] > d[i * n + j] + d[j * n + k] + VALIDATION_TOL {
                    return Err(Error::TriangleViolation(i, j, k));
                }
            }
        }
    }
    Ok(())
}

fn validate_weights(w: &[f64]) -> Result<()> {
    if let Some(i) = w.iter().position(|&x| !(x.is_finite() && x > 0.0)) {
        return Err(Error::BadWeights(format!(
            "weight {i} is {} (must be > 0)",
            w[i]
        )));
    }
    let s: f64 = w.iter().sum();
    if (s - 1.0).abs() > VALIDATION_TOL {
        return Err(Error::BadWeights(format!("weights sum to {s}, expected 1")));
    }
    Ok(())
}
