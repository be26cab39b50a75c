//! Gillespie simulation of the restricted coalescent and its measure tree.

use rand::Rng;
use rand_distr::{Distribution, Exp};

use super::lambda::{LambdaMeasure, RateTable};
use crate::error::{Error, Result};
use crate::space::MmSpace;

/// A partition of `{0, .., n-1}`; blocks are sorted and ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionState {
    blocks: Vec<Vec<usize>>,
}

impl PartitionState {
    /// All singletons.
    pub fn singletons(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding `i`.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&i).is_ok())
    }

    /// Merge the blocks at the given indices into one.
    ///
    /// # Panics
    /// If fewer than two distinct valid indices are given.
    pub fn merge(&mut self, indices: &[usize]) {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        assert!(
            idx.len() >= 2 && *idx.last().unwrap() < self.blocks.len(),
            "bad merge {indices:?}"
        );
        let mut merged = Vec::new();
        for &i in idx.iter().rev() {
            merged.extend(self.blocks.remove(i));
        }
        merged.sort_unstable();
        let at = self.blocks.partition_point(|b| b[0] < merged[0]);
        self.blocks.insert(at, merged);
    }
}

/// One transition: at `time`, the blocks with these indices (in the
/// state just before the event) merge.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeEvent {
    pub time: f64,
    pub blocks: Vec<usize>,
}

/// A simulated path of the coalescent restricted to `n` individuals.
#[derive(Debug, Clone, PartialEq)]
pub struct CoalescentRun {
    n: usize,
    events: Vec<MergeEvent>,
    final_state: PartitionState,
}

impl CoalescentRun {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn events(&self) -> &[MergeEvent] {
        &self.events
    }

    pub fn final_state(&self) -> &PartitionState {
        &self.final_state
    }

    pub fn is_complete(&self) -> bool {
        self.final_state.len() == 1
    }

    /// The partition at time `t` (events at exactly `t` included).
    pub fn state_at(&self, t: f64) -> PartitionState {
        self.replay(|time| time <= t)
    }

    /// The partition just before time `t`.
    pub fn state_before(&self, t: f64) -> PartitionState {
        self.replay(|time| time < t)
    }

    fn replay(&self, keep: impl Fn(f64) -> bool) -> PartitionState {
        let mut s = PartitionState::singletons(self.n);
        for e in self.events.iter().take_while(|e| keep(e.time)) {
            s.merge(&e.blocks);
        }
        s
    }
}

/// Simulate from `n` singletons until one block remains or time passes `t_max`.
///
/// From `b` blocks the chain waits an exponential time with the total merge
/// rate, picks the merger size `k` with probability `C(b,k) lambda_{b,k} / total`,
/// and merges a uniform `k`-subset of the blocks (partial Fisher–Yates).
pub fn simulate<R: Rng + ?Sized>(
    l: &LambdaMeasure,
    n: usize,
    rng: &mut R,
    t_max: Option<f64>,
) -> Result<CoalescentRun> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "sample size must be at least 2, got {n}"
        )));
    }
    let table = RateTable::new(l, n)?;
    simulate_with(&table, n, rng, t_max)
}

/// [`simulate`] with precomputed rates, for batches of runs.
pub fn simulate_with<R: Rng + ?Sized>(
    table: &RateTable,
    n: usize,
    rng: &mut R,
    t_max: Option<f64>,
) -> Result<CoalescentRun> {
    if n < 2 || n > table.max_blocks() {
        return Err(Error::InvalidArgument(format!(
            "sample size {n} outside 2..={}",
            table.max_blocks()
        )));
    }
    let mut state = PartitionState::singletons(n);
    let mut events = Vec::with_capacity(n - 1);
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut t = 0.0;
    while state.len() > 1 {
        let b = state.len();
        let wait = Exp::new(table.total(b)).expect("positive rate").sample(rng);
        t += wait;
        if t_max.is_some_and(|tm| t > tm) {
            break;
        }
        let k = table.merger_size(b, rng.random::<f64>());
        order.clear();
        order.extend(0..b);
        for i in 0..k {
            let j = rng.random_range(i..b);
            order.swap(i, j);
        }
        let mut chosen = order[..k].to_vec();
        chosen.sort_unstable();
        state.merge(&chosen);
        events.push(MergeEvent {
            time: t,
            blocks: chosen,
        });
    }
    Ok(CoalescentRun {
        n,
        events,
        final_state: state,
    })
}

/// Pairwise coalescence times as a row-major matrix, or `None` if some
/// pair never coalesced.
pub fn coalescence_times(run: &CoalescentRun) -> Option<Vec<f64>> {
    if !run.is_complete() {
        return None;
    }
    let n = run.n;
    let mut d = vec![0.0; n * n];
    let mut state = PartitionState::singletons(n);
    for e in &run.events {
        for (a, &bi) in e.blocks.iter().enumerate() {
            for &bj in &e.blocks[a + 1..] {
                for &i in &state.blocks[bi] {
                    for &j in &state.blocks[bj] {
                        d[i * n + j] = e.time;
                        d[j * n + i] = e.time;
                    }
                }
            }
        }
        state.merge(&e.blocks);
    }
    Some(d)
}

/// The measure tree of a completed run: points `1..=n`, distance the time at
/// which two individuals first share a block, uniform weights.
///
/// The result is validated as a metric space and checked to be ultrametric.
pub fn coalescent_to_mmspace(run: &CoalescentRun) -> Result<MmSpace> {
    let d = coalescence_times(run).ok_or(Error::NotFullyCoalesced)?;
    let n = run.n;
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let rows = d.chunks(n).map(<[f64]>::to_vec).collect();
    let space = MmSpace::new(labels, rows, vec![1.0 / n as f64; n])?;
    if !space.is_ultrametric(0.0) {
        return Err(Error::PreconditionFailed(
            "coalescence times are not ultrametric".into(),
        ));
    }
    Ok(space)
}

/// Size of the block of individual `i` at time `t`, divided by `n`.
pub fn singleton_frequency(run: &CoalescentRun, t: f64, i: usize) -> f64 {
    assert!(t >= 0.0 && i < run.n);
    let s = run.state_at(t);
    s.blocks[s.block_of(i).expect("every individual has a block")].len() as f64 / run.n as f64
}

/// Fraction of individuals whose open ball of radius `t` has mass at most `delta`.
///
/// The open ball `B_t(x)` is the block of `x` just before time `t`.
pub fn thin_fraction(run: &CoalescentRun, t: f64, delta: f64) -> f64 {
    let s = run.state_before(t);
    let n = run.n as f64;
    s.blocks
        .iter()
        .filter(|b| b.len() as f64 / n <= delta)
        .map(|b| b.len())
        .sum::<usize>() as f64
        / n
}

/// One row of [`empirical_ball_mass_curve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallMassPoint {
    pub delta: f64,
    pub mean: f64,
    pub stderr: f64,
}

/// Monte Carlo estimate of `E mu{x : mu(B_t(x)) <= delta}` for each `delta`,
/// over `runs` independent simulations of size `n`.
pub fn empirical_ball_mass_curve<R: Rng + ?Sized>(
    l: &LambdaMeasure,
    n: usize,
    t: f64,
    delta_grid: &[f64],
    runs: usize,
    rng: &mut R,
) -> Result<Vec<BallMassPoint>> {
    if delta_grid.is_empty() || runs == 0 {
        return Err(Error::InvalidArgument(
            "need a nonempty grid and at least one run".into(),
        ));
    }
    let table = RateTable::new(l, n)?;
    let mut samples = vec![Vec::with_capacity(runs); delta_grid.len()];
    for _ in 0..runs {
        // ball masses only depend on the partition at t
        let run = simulate_with(&table, n, rng, Some(t))?;
        for (s, &delta) in samples.iter_mut().zip(delta_grid) {
            s.push(thin_fraction(&run, t, delta));
        }
    }
    Ok(delta_grid
        .iter()
        .zip(&samples)
        .map(|(&delta, s)| {
            let (mean, stderr) = mean_stderr(s);
            BallMassPoint {
                delta,
                mean,
                stderr,
            }
        })
        .collect())
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}
