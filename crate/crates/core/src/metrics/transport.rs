//! Exact discrete optimal transport.
//!
//! Transportation simplex (the network simplex specialised to a complete
//! bipartite graph). The basis is a spanning tree of `n + m - 1` cells,
//! started from the north-west corner rule. Entering cells are chosen by
//! Bland's rule, which rules out cycling on degenerate pivots.

use super::coupling::Coupling;

/// Reduced costs above `-REDUCED_COST_TOL * (1 + max|c|)` count as optimal.
const REDUCED_COST_TOL: f64 = 1e-12;

/// Solve `min sum pi_ij cost_ij` over couplings of `mu` and `nu`.
///
/// `cost` is row-major `n x m`. Entries of `mu` or `nu` may be zero.
/// Returns the optimal coupling and its value.
pub fn transport_lp(cost: &[f64], mu: &[f64], nu: &[f64]) -> (Coupling, f64) {
    let (n, m) = (mu.len(), nu.len());
    assert_eq!(cost.len(), n * m, "cost must be n x m");
    assert!(n > 0 && m > 0, "empty marginal");
    let flow = Simplex::new(cost, mu, nu).solve();
    let value = flow.iter().zip(cost).map(|(f, c)| f * c).sum();
    (Coupling::from_raw(n, m, flow), value)
}

struct Simplex<'a> {
    n: usize,
    m: usize,
    cost: &'a [f64],
    flow: Vec<f64>,
    basic: Vec<bool>,
    basis: Vec<usize>,
    tol: f64,
}

impl<'a> Simplex<'a> {
    fn new(cost: &'a [f64], mu: &[f64], nu: &[f64]) -> Self {
        let (n, m) = (mu.len(), nu.len());
        let mut flow = vec![0.0; n * m];
        let mut basic = vec![false; n * m];
        let mut basis = Vec::with_capacity(n + m - 1);
        let (mut a, mut b) = (mu[0], nu[0]);
        let (mut i, mut j) = (0, 0);
        loop {
            let cell = i * m + j;
            basic[cell] = true;
            basis.push(cell);
            if i == n - 1 && j == m - 1 {
                flow[cell] = a.max(b).max(0.0);
                break;
            }
            let advance_row = j == m - 1 || (i < n - 1 && a <= b);
            if advance_row {
                flow[cell] = a.max(0.0);
                b -= a;
                i += 1;
                a = mu[i];
            } else {
                flow[cell] = b.max(0.0);
                a -= b;
                j += 1;
                b = nu[j];
            }
        }
        let scale = cost.iter().fold(0.0f64, |s, c| s.max(c.abs()));
        Self {
            n,
            m,
            cost,
            flow,
            basic,
            basis,
            tol: REDUCED_COST_TOL * (1.0 + scale),
        }
    }

    /// Potentials with `u_i + v_j = c_ij` on basic cells.
    fn potentials(&self, adj: &[Vec<(usize, usize)>]) -> (Vec<f64>, Vec<f64>) {
        let (n, m) = (self.n, self.m);
        let mut pot = vec![f64::NAN; n + m];
        pot[0] = 0.0;
        let mut stack = vec![0usize];
        while let Some(node) = stack.pop() {
            for &(next, cell) in &adj[node] {
                if pot[next].is_nan() {
                    pot[next] = self.cost[cell] - pot[node];
                    stack.push(next);
                }
            }
        }
        let u = pot[..n].to_vec();
        let v = pot[n..].to_vec();
        (u, v)
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let (n, m) = (self.n, self.m);
        let mut adj = vec![Vec::new(); n + m];
        for &cell in &self.basis {
            let (i, j) = (cell / m, cell % m);
            adj[i].push((n + j, cell));
            adj[n + j].push((i, cell));
        }
        adj
    }

    /// Tree path (as cells) from row node `i` to column node `n + j`.
    fn path(&self, adj: &[Vec<(usize, usize)>], i: usize, j: usize) -> Vec<usize> {
        let target = self.n + j;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.n + self.m];
        let mut seen = vec![false; self.n + self.m];
        seen[i] = true;
        let mut stack = vec![i];
        while let Some(node) = stack.pop() {
            if node == target {
                break;
            }
            for &(next, cell) in &adj[node] {
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some((node, cell));
                    stack.push(next);
                }
            }
        }
        let mut cells = Vec::new();
        let mut node = target;
        while node != i {
            let (prev, cell) = parent[node].expect("basis is a spanning tree");
            cells.push(cell);
            node = prev;
        }
        cells
    }

    fn solve(mut self) -> Vec<f64> {
        let (n, m) = (self.n, self.m);
        let max_iter = 50 * (n * m + 10) * (n + m);
        for _ in 0..max_iter {
            let adj = self.adjacency();
            let (u, v) = self.potentials(&adj);
            let entering = (0..n * m)
                .find(|&c| !self.basic[c] && self.cost[c] - u[c / m] - v[c % m] < -self.tol);
            let Some(cell) = entering else { break };
            let (i, j) = (cell / m, cell % m);
            // path cells from column j back to row i; signs alternate starting with minus
            let path = self.path(&adj, i, j);
            let mut theta = f64::INFINITY;
            let mut leave = usize::MAX;
            for &c in path.iter().step_by(2) {
                if self.flow[c] < theta || (self.flow[c] == theta && c < leave) {
                    theta = self.flow[c];
                    leave = c;
                }
            }
            for (k, &c) in path.iter().enumerate() {
                if k % 2 == 0 {
                    self.flow[c] -= theta;
                } else {
                    self.flow[c] += theta;
                }
            }
            self.flow[cell] = theta;
            self.flow[leave] = 0.0;
            self.basic[leave] = false;
            self.basic[cell] = true;
            let pos = self.basis.iter().position(|&c| c == leave).unwrap();
            self.basis[pos] = cell;
        }
        for f in &mut self.flow {
            if *f < 0.0 {
                *f = 0.0;
            }
        }
        self.flow
    }
}
