//! Quadratic objectives `pi^T Q pi` over the set of couplings.
//!
//! [`FaceTable`] minimizes exactly for small supports. A minimizer lies in
//! the relative interior of some face, where it is a stationary point of the
//! objective restricted to the face's affine hull. Faces of the coupling
//! polytope are indexed by support patterns, so enumerating all `2^(nm)`
//! patterns and solving each stationarity system finds the global minimum.
//! Patterns whose reduced Hessian is singular are skipped: along its kernel
//! the objective is constant, so the same value is reached on a smaller face.
//!
//! [`frank_wolfe`] is the local method for larger problems.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use super::coupling::Coupling;
use super::transport::transport_lp;

/// Largest `n * m` handled by face enumeration.
pub const FACE_LIMIT: usize = 12;

const RANK_TOL: f64 = 1e-10;
const FEAS_TOL: f64 = 1e-12;

struct Face {
    cells: Vec<usize>,
    p0: DVector<f64>,
    null: DMatrix<f64>,
}

/// Affine data for every support pattern of the couplings of `mu` and `nu`.
pub struct FaceTable {
    n: usize,
    m: usize,
    faces: Vec<Face>,
}

impl FaceTable {
    pub fn new(mu: &[f64], nu: &[f64]) -> Self {
        let (n, m) = (mu.len(), nu.len());
        let cells = n * m;
        assert!(
            cells <= FACE_LIMIT,
            "face enumeration limited to {FACE_LIMIT} cells"
        );
        let b: DVector<f64> = DVector::from_iterator(n + m, mu.iter().chain(nu).copied());
        let mut faces = Vec::new();
        for mask in 1u32..(1 << cells) {
            let sel: Vec<usize> = (0..cells).filter(|&c| mask >> c & 1 == 1).collect();
            // every row and column needs a cell, all marginals are positive
            let rows_ok = (0..n).all(|i| sel.iter().any(|&c| c / m == i));
            let cols_ok = (0..m).all(|j| sel.iter().any(|&c| c % m == j));
            if !rows_ok || !cols_ok {
                continue;
            }
            let k = sel.len();
            let mut e = DMatrix::<f64>::zeros(n + m, k);
            for (col, &c) in sel.iter().enumerate() {
                e[(c / m, col)] = 1.0;
                e[(n + c % m, col)] = 1.0;
            }
            let gram = e.transpose() * &e;
            let eig = gram.symmetric_eigen();
            let mut p0 = DVector::<f64>::zeros(k);
            let etb = e.transpose() * &b;
            let mut null_cols = Vec::new();
            for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
                let v = eig.eigenvectors.column(idx);
                if lambda > RANK_TOL {
                    p0 += v * (v.dot(&etb) / lambda);
                } else {
                    null_cols.push(v.into_owned());
                }
            }
            if (&e * &p0 - &b).amax() > 1e-9 {
                continue;
            }
            let null = if null_cols.is_empty() {
                DMatrix::zeros(k, 0)
            } else {
                DMatrix::from_columns(&null_cols)
            };
            faces.push(Face {
                cells: sel,
                p0,
                null,
            });
        }
        Self { n, m, faces }
    }

    /// Vertices of the coupling polytope: the patterns with a unique solution.
    pub fn vertices(&self) -> Vec<Coupling> {
        let cells = self.n * self.m;
        self.faces
            .iter()
            .filter(|f| f.null.ncols() == 0 && f.p0.iter().all(|&v| v > FEAS_TOL))
            .map(|f| {
                let mut pi = vec![0.0; cells];
                for (a, &c) in f.cells.iter().enumerate() {
                    pi[c] = f.p0[a];
                }
                Coupling::from_raw(self.n, self.m, pi)
            })
            .collect()
    }

    /// Global minimum of `pi^T Q pi`; `q` is a symmetric `nm x nm` row-major matrix.
    pub fn minimize(&self, q: &[f64]) -> (f64, Coupling) {
        let cells = self.n * self.m;
        assert_eq!(q.len(), cells * cells);
        let mut best = (f64::INFINITY, vec![0.0; cells]);
        for face in &self.faces {
            let k = face.cells.len();
            let qs = DMatrix::from_fn(k, k, |a, b| q[face.cells[a] * cells + face.cells[b]]);
            let x = if face.null.ncols() == 0 {
                face.p0.clone()
            } else {
                let h = face.null.transpose() * &qs * &face.null;
                let rhs = -(face.null.transpose() * &qs * &face.p0);
                let eig = h.symmetric_eigen();
                let scale = eig.eigenvalues.amax().max(1.0);
                if eig.eigenvalues.iter().any(|l| l.abs() <= 1e-10 * scale) {
                    continue;
                }
                let vt_rhs = eig.eigenvectors.transpose() * rhs;
                let z = &eig.eigenvectors
                    * DVector::from_iterator(
                        vt_rhs.len(),
                        vt_rhs
                            .iter()
                            .zip(eig.eigenvalues.iter())
                            .map(|(r, l)| r / l),
                    );
                &face.p0 + &face.null * z
            };
            if x.iter().any(|&v| v < -FEAS_TOL) {
                continue;
            }
            let mut pi = vec![0.0; cells];
            for (a, &c) in face.cells.iter().enumerate() {
                pi[c] = x[a].max(0.0);
            }
            let val = quad(q, &pi);
            if val < best.0 {
                best = (val, pi);
            }
        }
        (best.0, Coupling::from_raw(self.n, self.m, best.1))
    }
}

/// `pi^T Q pi` for row-major `Q`.
pub fn quad(q: &[f64], pi: &[f64]) -> f64 {
    let k = pi.len();
    let mut s = 0.0;
    for a in 0..k {
        if pi[a] == 0.0 {
            continue;
        }
        let row = &q[a * k..(a + 1) * k];
        s += pi[a] * row.iter().zip(pi).map(|(x, y)| x * y).sum::<f64>();
    }
    s
}

/// Settings for [`frank_wolfe`].
#[derive(Debug, Clone, Copy)]
pub struct FwSettings {
    pub iterations: usize,
    pub restarts: usize,
}

impl Default for FwSettings {
    fn default() -> Self {
        Self {
            iterations: 200,
            restarts: 8,
        }
    }
}

/// Conditional gradient for `pi^T Q pi` with step `2 / (t + 2)`.
///
/// Restart 0 starts at `start`; the others start at vertices of the
/// polytope obtained from random linear costs. Returns the best iterate seen.
pub fn frank_wolfe<R: Rng + ?Sized>(
    q: &[f64],
    mu: &[f64],
    nu: &[f64],
    start: &Coupling,
    settings: FwSettings,
    rng: &mut R,
) -> (f64, Coupling) {
    let (n, m) = (mu.len(), nu.len());
    let k = n * m;
    let mut best = (quad(q, start.as_slice()), start.clone());
    for restart in 0..settings.restarts.max(1) {
        let mut pi = if restart == 0 {
            start.as_slice().to_vec()
        } else {
            let cost: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
            transport_lp(&cost, mu, nu).0.as_slice().to_vec()
        };
        for t in 0..settings.iterations {
            let grad: Vec<f64> = (0..k)
                .map(|a| {
                    2.0 * q[a * k..(a + 1) * k]
                        .iter()
                        .zip(&pi)
                        .map(|(x, y)| x * y)
                        .sum::<f64>()
                })
                .collect();
            let (s, _) = transport_lp(&grad, mu, nu);
            let gamma = 2.0 / (t as f64 + 2.0);
            for (p, v) in pi.iter_mut().zip(s.as_slice()) {
                *p += gamma * (v - *p);
            }
            let val = quad(q, &pi);
            if val < best.0 {
                best = (val, Coupling::from_raw(n, m, pi.clone()));
            }
        }
    }
    best
}
