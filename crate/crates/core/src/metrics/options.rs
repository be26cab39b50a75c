use std::cmp::Ordering;

use super::qp::FwSettings;
use crate::space::MmSpace;

/// Limits and settings shared by the distance solvers.
#[derive(Debug, Clone, Copy)]
pub struct MetricOptions {
    /// Largest `n * m` for which relations are enumerated exactly (at most 128).
    pub relation_cells: usize,
    /// Maximal cliques visited per solver call before giving up on exactness.
    pub clique_budget: usize,
    /// Largest `n * m` for exact quadratic minimization over couplings.
    pub coupling_cells: usize,
    /// Largest `n * m` for the single-bit-flip relation search.
    pub local_search_cells: usize,
    pub fw: FwSettings,
    /// Seed for the random restarts of the local methods.
    pub seed: u64,
}

impl Default for MetricOptions {
    fn default() -> Self {
        Self {
            relation_cells: 128,
            clique_budget: 20_000,
            coupling_cells: 9,
            local_search_cells: 400,
            fw: FwSettings::default(),
            seed: 0x6d6d_7370,
        }
    }
}

impl MetricOptions {
    /// Use one limit for both exact regimes (relation and coupling enumeration).
    pub fn with_exact_limit(mut self, cells: usize) -> Self {
        self.relation_cells = cells.min(128);
        self.coupling_cells = cells.min(super::qp::FACE_LIMIT);
        self
    }
}

/// Total order on spaces used to put the arguments of a distance in a fixed
/// order, so that `f(X, Y)` and `f(Y, X)` run the identical computation.
pub(crate) fn swap_needed(x: &MmSpace, y: &MmSpace) -> bool {
    let key = |s: &MmSpace| {
        let d: Vec<u64> = s
            .dist_rows()
            .iter()
            .flatten()
            .map(|v| v.to_bits())
            .collect();
        let w: Vec<u64> = s.weights().iter().map(|v| v.to_bits()).collect();
        (s.len(), d, w)
    };
    key(x).cmp(&key(y)) == Ordering::Greater
}
