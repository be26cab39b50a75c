//! Relations between two spaces, their distortion, and the metric gluing
//! they induce on the disjoint union.

use crate::error::{Error, Result};
use crate::space::{sort_dedup, validate_metric, MmSpace};

/// A nonempty boolean `n x m` matrix relating points of two spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    m: usize,
    rel: Vec<bool>,
}

impl Relation {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(
                "relation rows must be nonempty and of equal length".into(),
            ));
        }
        let rel: Vec<bool> = rows.into_iter().flatten().collect();
        if !rel.iter().any(|&b| b) {
            return Err(Error::InvalidArgument("relation is empty".into()));
        }
        Ok(Self { n, m, rel })
    }

    /// Relation from a list of related pairs.
    pub fn from_pairs(n: usize, m: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![vec![false; m]; n];
        for &(i, j) in pairs {
            if i >= n || j >= m {
                return Err(Error::DimensionMismatch(format!(
                    "pair ({i}, {j}) outside {n} x {m}"
                )));
            }
            rows[i][j] = true;
        }
        Self::new(rows)
    }

    /// Bit `i * m + j` of `mask` relates `i` and `j`. Requires `n * m <= 128`.
    pub(crate) fn from_mask(n: usize, m: usize, mask: u128) -> Self {
        debug_assert!(mask != 0 && n * m <= 128);
        Self {
            n,
            m,
            rel: (0..n * m).map(|c| mask >> c & 1 == 1).collect(),
        }
    }

    pub fn full(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            rel: vec![true; n * m],
        }
    }

    /// `i` related to `i`.
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            m: n,
            rel: (0..n * n).map(|c| c / n == c % n).collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.m + j]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.m)
            .filter(|&c| self.rel[c])
            .map(|c| (c / self.m, c % self.m))
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.rel.chunks(self.m).map(<[bool]>::to_vec).collect()
    }

    /// Every row and every column meets the relation.
    pub fn is_correspondence(&self) -> bool {
        (0..self.n).all(|i| (0..self.m).any(|j| self.contains(i, j)))
            && (0..self.m).all(|j| (0..self.n).any(|i| self.contains(i, j)))
    }

    pub fn transpose(&self) -> Self {
        let rel = (0..self.m * self.n)
            .map(|c| self.contains(c % self.n, c / self.n))
            .collect();
        Self {
            n: self.m,
            m: self.n,
            rel,
        }
    }

    fn check_shape(&self, x: &MmSpace, y: &MmSpace) {
        assert_eq!(
            (self.n, self.m),
            (x.len(), y.len()),
            "relation shape does not match the spaces"
        );
    }
}

/// `dis(R) = max |r_X(x,x') - r_Y(y,y')|` over related pairs.
pub fn distortion(r: &Relation, x: &MmSpace, y: &MmSpace) -> f64 {
    r.check_shape(x, y);
    let pairs = r.pairs();
    let mut dis = 0.0f64;
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            dis = dis.max((x.d(i, k) - y.d(j, l)).abs());
        }
    }
    dis
}

/// The disjoint union of two spaces with the pseudo-metric induced by a relation.
///
/// Points `0..n` are the first space, `n..n+m` the second.
#[derive(Debug, Clone, PartialEq)]
pub struct GluedSpace {
    n: usize,
    m: usize,
    dist: Vec<f64>,
    relation: Relation,
    half_distortion: f64,
}

impl GluedSpace {
    pub fn size(&self) -> usize {
        self.n + self.m
    }

    pub fn blocks(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    #[inline]
    pub fn d(&self, a: usize, b: usize) -> f64 {
        self.dist[a * (self.n + self.m) + b]
    }

    /// Distance from point `i` of the first space to point `j` of the second.
    pub fn cross(&self, i: usize, j: usize) -> f64 {
        self.d(i, self.n + j)
    }

    pub fn dist(&self) -> &[f64] {
        &self.dist
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn half_distortion(&self) -> f64 {
        self.half_distortion
    }

    /// Validate as a pseudo-metric (tolerance as for spaces).
    pub fn validate(&self) -> Result<()> {
        validate_metric(self.size(), &self.dist)
    }

    /// The cross block as a row-major `n x m` matrix.
    pub fn cross_matrix(&self) -> Vec<f64> {
        (0..self.n)
            .flat_map(|i| (0..self.m).map(move |j| (i, j)))
            .map(|(i, j)| self.cross(i, j))
            .collect()
    }

    /// Distinct cross distances, ascending.
    pub fn cross_levels(&self) -> Vec<f64> {
        let mut v = self.cross_matrix();
        sort_dedup(&mut v);
        v
    }
}

/// Glue `x` and `y` along `r`:
/// `r(x, y) = min over (x', y') in R of r_X(x, x') + dis(R)/2 + r_Y(y', y)`.
pub fn glue(x: &MmSpace, y: &MmSpace, r: &Relation) -> GluedSpace {
    r.check_shape(x, y);
    let (n, m) = (x.len(), y.len());
    let h = 0.5 * distortion(r, x, y);
    let pairs = r.pairs();
    let size = n + m;
    let mut dist = vec![0.0; size * size];
    for i in 0..n {
        for k in 0..n {
            dist[i * size + k] = x.d(i, k);
        }
    }
    for j in 0..m {
        for l in 0..m {
            dist[(n + j) * size + n + l] = y.d(j, l);
        }
    }
    for i in 0..n {
        for j in 0..m {
            let c = pairs
                .iter()
                .map(|&(a, b)| x.d(i, a) + h + y.d(b, j))
                .fold(f64::INFINITY, f64::min);
            dist[i * size + n + j] = c;
            dist[(n + j) * size + i] = c;
        }
    }
    GluedSpace {
        n,
        m,
        dist,
        relation: r.clone(),
        half_distortion: h,
    }
}

/// Sorted distinct values of `|r_X(i,k) - r_Y(j,l)|` over all index pairs.
pub(crate) fn distortion_levels(x: &MmSpace, y: &MmSpace) -> Vec<f64> {
    let (dx, dy) = (x.distinct_distances(), y.distinct_distances());
    let mut v: Vec<f64> = dx
        .iter()
        .flat_map(|a| dy.iter().map(move |b| (a - b).abs()))
        .collect();
    sort_dedup(&mut v);
    v
}

/// Compatibility graph on the `n * m` cells at distortion level `level`:
/// cells `(i,j)` and `(k,l)` are adjacent when `|r_X(i,k) - r_Y(j,l)| <= level`.
pub(crate) fn compatibility(x: &MmSpace, y: &MmSpace, level: f64) -> Vec<u128> {
    let (n, m) = (x.len(), y.len());
    let cells = n * m;
    assert!(cells <= 128, "compatibility graph limited to 128 cells");
    let mut adj = vec![0u128; cells];
    for a in 0..cells {
        for b in 0..cells {
            if a != b && (x.d(a / m, b / m) - y.d(a % m, b % m)).abs() <= level {
                adj[a] |= 1u128 << b;
            }
        }
    }
    adj
}

/// Outcome of a budgeted clique enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Enumeration {
    Complete,
    Truncated,
}

/// Bron–Kerbosch with pivoting over a bitset graph. Calls `visit` on every
/// maximal clique; `visit` returns `false` to stop early. `prune(r, p)` may
/// cut branches whose cliques cannot matter.
pub(crate) fn maximal_cliques(
    adj: &[u128],
    budget: usize,
    prune: &dyn Fn(u128, u128) -> bool,
    visit: &mut dyn FnMut(u128) -> bool,
) -> Enumeration {
    struct State<'a> {
        adj: &'a [u128],
        left: usize,
        prune: &'a dyn Fn(u128, u128) -> bool,
        stopped: bool,
        truncated: bool,
    }
    fn go(s: &mut State, r: u128, mut p: u128, mut x: u128, visit: &mut dyn FnMut(u128) -> bool) {
        if s.stopped {
            return;
        }
        if p == 0 {
            if x == 0 {
                if s.left == 0 {
                    s.stopped = true;
                    s.truncated = true;
                    return;
                }
                s.left -= 1;
                if !visit(r) {
                    s.stopped = true;
                }
            }
            return;
        }
        if (s.prune)(r, p) {
            return;
        }
        let px = p | x;
        let mut pivot = px.trailing_zeros() as usize;
        let mut best = 0;
        let mut rest = px;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = (p & s.adj[u]).count_ones();
            if c >= best {
                best = c;
                pivot = u;
            }
        }
        let mut cand = p & !s.adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let bit = 1u128 << v;
            go(s, r | bit, p & s.adj[v], x & s.adj[v], visit);
            if s.stopped {
                return;
            }
            p &= !bit;
            x |= bit;
        }
    }
    let cells = adj.len();
    let all = if cells == 128 {
        u128::MAX
    } else {
        (1u128 << cells) - 1
    };
    let mut s = State {
        adj,
        left: budget,
        prune,
        stopped: false,
        truncated: false,
    };
    go(&mut s, 0, all, 0, visit);
    if s.truncated {
        Enumeration::Truncated
    } else {
        Enumeration::Complete
    }
}

/// Row and column coverage of a cell mask.
pub(crate) fn covers(mask: u128, n: usize, m: usize) -> bool {
    let mut rows = 0u128;
    let mut cols = 0u128;
    let mut rest = mask;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        rows |= 1 << (c / m);
        cols |= 1 << (c % m);
    }
    rows.count_ones() as usize == n && cols.count_ones() as usize == m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(d: f64) -> MmSpace {
        MmSpace::uniform(vec![vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    #[test]
    fn identity_has_zero_distortion() {
        let x = two(1.0);
        assert_eq!(distortion(&Relation::identity(2), &x, &x), 0.0);
        let g = glue(&x, &x, &Relation::identity(2));
        assert_eq!(g.cross(0, 1), 1.0);
        assert_eq!(g.cross(1, 1), 0.0);
    }

    #[test]
    fn full_relation_distortions() {
        assert_eq!(
            distortion(&Relation::full(2, 1), &two(1.0), &MmSpace::one_point()),
            1.0
        );
        let s3 = 3f64.sqrt();
        let y = MmSpace::from_matrix(
            vec![vec![0., 1., 1.], vec![1., 0., 1.], vec![1., 1., 0.]],
            vec![(2.0 - s3) / 6.0, 1.0 / 3.0, (2.0 + s3) / 6.0],
        )
        .unwrap();
        assert_eq!(distortion(&Relation::full(2, 3), &two(1.0), &y), 1.0);
    }

    #[test]
    fn matching_glue_of_unequal_pairs() {
        let g = glue(&two(1.0), &two(2.0), &Relation::identity(2));
        assert_eq!(g.half_distortion(), 0.5);
        assert_eq!(g.cross(0, 0), 0.5);
        assert_eq!(g.cross(1, 1), 0.5);
        assert_eq!(g.cross(0, 1), 1.5);
        g.validate().unwrap();
    }

    #[test]
    fn cliques_of_a_triangle_and_an_edge() {
        // 0-1-2 triangle plus isolated 3
        let adj = vec![0b0110, 0b0101, 0b0011, 0];
        let mut found = Vec::new();
        let e = maximal_cliques(&adj, 100, &|_, _| false, &mut |c| {
            found.push(c);
            true
        });
        found.sort();
        assert_eq!(e, Enumeration::Complete);
        assert_eq!(found, vec![0b0111, 0b1000]);
        let e = maximal_cliques(&adj, 1, &|_, _| false, &mut |_| true);
        assert_eq!(e, Enumeration::Truncated);
    }
}
