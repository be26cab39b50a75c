use crate::error::{Error, Result};

/// Marginal tolerance for a valid coupling.
pub const COUPLING_TOL: f64 = 1e-10;

/// A nonnegative `n x m` matrix, row-major, whose marginals are the weights
/// of two spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    n: usize,
    m: usize,
    pi: Vec<f64>,
}

impl Coupling {
    /// Build from rows, checking marginals against `mu` and `nu`.
    pub fn new(rows: Vec<Vec<f64>>, mu: &[f64], nu: &[f64]) -> Result<Self> {
        let n = rows.len();
        let m = nu.len();
        if n != mu.len() || rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "coupling is not {} x {}",
                mu.len(),
                m
            )));
        }
        let pi: Vec<f64> = rows.into_iter().flatten().collect();
        if pi.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::MarginalMismatch(
                "negative or non-finite entry".into(),
            ));
        }
        let c = Self { n, m, pi };
        if !c.check_marginals(mu, nu, COUPLING_TOL) {
            return Err(Error::MarginalMismatch(
                "row or column sums differ from the weights".into(),
            ));
        }
        Ok(c)
    }

    pub(crate) fn from_raw(n: usize, m: usize, pi: Vec<f64>) -> Self {
        debug_assert_eq!(pi.len(), n * m);
        Self { n, m, pi }
    }

    /// The product coupling `mu (x) nu`.
    pub fn product(mu: &[f64], nu: &[f64]) -> Self {
        let pi = mu
            .iter()
            .flat_map(|&a| nu.iter().map(move |&b| a * b))
            .collect();
        Self {
            n: mu.len(),
            m: nu.len(),
            pi,
        }
    }

    /// Diagonal coupling of `mu` with itself.
    pub fn identity(mu: &[f64]) -> Self {
        let n = mu.len();
        let mut pi = vec![0.0; n * n];
        for (i, &w) in mu.iter().enumerate() {
            pi[i * n + i] = w;
        }
        Self { n, m: n, pi }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pi[i * self.m + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.pi
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.pi.chunks(self.m).map(<[f64]>::to_vec).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.pi.chunks(self.m).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.m)
            .map(|j| (0..self.n).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn check_marginals(&self, mu: &[f64], nu: &[f64], tol: f64) -> bool {
        let close = |a: &[f64], b: &[f64]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
        };
        close(&self.row_sums(), mu) && close(&self.col_sums(), nu)
    }

    /// `sum pi_ij c_ij` for a row-major cost.
    pub fn cost(&self, c: &[f64]) -> f64 {
        self.pi.iter().zip(c).map(|(p, c)| p * c).sum()
    }

    /// The transposed coupling (marginals swapped).
    pub fn transpose(&self) -> Self {
        let mut pi = vec![0.0; self.n * self.m];
        for i in 0..self.n {
            for j in 0..self.m {
                pi[j * self.n + i] = self.get(i, j);
            }
        }
        Self {
            n: self.m,
            m: self.n,
            pi,
        }
    }
}

/// Glue two couplings along their common middle marginal.
///
/// `pi13[i,k] = sum_j pi12[i,j] pi23[j,k] / mu2[j]`.
pub fn compose_couplings(pi12: &Coupling, pi23: &Coupling) -> Result<Coupling> {
    let (n1, n2) = pi12.shape();
    let (n2b, n3) = pi23.shape();
    if n2 != n2b {
        return Err(Error::MarginalMismatch(format!(
            "middle spaces have {n2} and {n2b} points"
        )));
    }
    let mid_a = pi12.col_sums();
    let mid_b = pi23.row_sums();
    if let Some(j) = (0..n2).find(|&j| (mid_a[j] - mid_b[j]).abs() > COUPLING_TOL) {
        return Err(Error::MarginalMismatch(format!(
            "middle marginal differs at point {j}"
        )));
    }
    let mut pi = vec![0.0; n1 * n3];
    for j in 0..n2 {
        let w = mid_a[j];
        if w <= 0.0 {
            continue;
        }
        for i in 0..n1 {
            let a = pi12.get(i, j) / w;
            if a == 0.0 {
                continue;
            }
            for k in 0..n3 {
                pi[i * n3 + k] += a * pi23.get(j, k);
            }
        }
    }
    Ok(Coupling::from_raw(n1, n3, pi))
}
