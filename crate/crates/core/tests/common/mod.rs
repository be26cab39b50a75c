//! Brute-force oracles and generators shared by the integration tests.
//!
//! Everything here is deliberately naive: subsets, permutations and explicit
//! formulas, written without reference to the solvers they check.

#![allow(dead_code)]

use mmspace::MmSpace;
use rand::Rng;

/// A random space with `n` points. Distances are shortest paths over random
/// edge lengths from `{1, 2, 3, 4} / 4`, so ties are common; weights are
/// random integers `1..=5`, normalized.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> MmSpace {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.random_range(1..=4) as f64 / 4.0;
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(1..=5) as f64).collect();
    let total: f64 = raw.iter().sum();
    MmSpace::from_matrix(d, raw.iter().map(|w| w / total).collect()).unwrap()
}

pub fn random_small_space<R: Rng>(rng: &mut R, max_n: usize) -> MmSpace {
    let n = rng.random_range(1..=max_n);
    random_space(rng, n)
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Measure-preserving isometry by trying every bijection.
pub fn brute_isometric(x: &MmSpace, y: &MmSpace, tol: f64) -> bool {
    let n = x.len();
    if n != y.len() {
        return false;
    }
    permutations(n).iter().any(|p| {
        (0..n).all(|i| (x.weight(i) - y.weight(p[i])).abs() <= tol)
            && (0..n).all(|i| (0..n).all(|j| (x.d(i, j) - y.d(p[i], p[j])).abs() <= tol))
    })
}

/// Prohorov distance between `mu` on the rows and `nu` on the columns of a
/// cross-distance block, from the subset characterization
/// `sup_A mu(A) - nu({y : r(A, y) < eps})`.
pub fn strassen_prohorov(cross: &[f64], mu: &[f64], nu: &[f64]) -> f64 {
    let (n, m) = (mu.len(), nu.len());
    let mut levels: Vec<f64> = cross.to_vec();
    levels.push(0.0);
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    for (idx, &lo) in levels.iter().enumerate() {
        let hi = levels.get(idx + 1).copied().unwrap_or(f64::INFINITY);
        // for eps in (lo, hi] the open neighborhood is {r <= lo}
        let mut g: f64 = 0.0;
        for mask in 1u32..(1 << n) {
            let a: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| mu[i]).sum();
            let b: f64 = (0..m)
                .filter(|&j| (0..n).any(|i| mask >> i & 1 == 1 && cross[i * m + j] <= lo))
                .map(|j| nu[j])
                .sum();
            g = g.max(a - b);
        }
        if g <= hi + 1e-12 {
            return g.max(lo);
        }
    }
    unreachable!()
}

/// Cross distances of the gluing along the pairs in `rel`.
pub fn glue_cross(x: &MmSpace, y: &MmSpace, rel: &[(usize, usize)]) -> Vec<f64> {
    let dis = rel
        .iter()
        .flat_map(|&(a, b)| rel.iter().map(move |&(c, d)| (a, b, c, d)))
        .map(|(a, b, c, d)| (x.d(a, c) - y.d(b, d)).abs())
        .fold(0.0, f64::max);
    let (n, m) = (x.len(), y.len());
    let mut out = vec![f64::INFINITY; n * m];
    for i in 0..n {
        for j in 0..m {
            for &(a, b) in rel {
                out[i * m + j] = out[i * m + j].min(x.d(i, a) + 0.5 * dis + y.d(b, j));
            }
        }
    }
    out
}

fn cells_of(mask: u64, m: usize, cells: usize) -> Vec<(usize, usize)> {
    (0..cells)
        .filter(|c| mask >> c & 1 == 1)
        .map(|c| (c / m, c % m))
        .collect()
}

/// Gromov-Prohorov distance as the minimum over every nonempty relation.
pub fn brute_gpr(x: &MmSpace, y: &MmSpace) -> f64 {
    let (n, m) = (x.len(), y.len());
    let cells = n * m;
    assert!(cells <= 12);
    (1u64..(1 << cells))
        .map(|mask| {
            strassen_prohorov(
                &glue_cross(x, y, &cells_of(mask, m, cells)),
                x.weights(),
                y.weights(),
            )
        })
        .fold(f64::INFINITY, f64::min)
}

/// Gromov-Hausdorff distance: half the least distortion of a correspondence.
pub fn brute_gh(x: &MmSpace, y: &MmSpace) -> f64 {
    let (n, m) = (x.len(), y.len());
    let cells = n * m;
    assert!(cells <= 16);
    let mut best = f64::INFINITY;
    for mask in 1u64..(1 << cells) {
        let rel = cells_of(mask, m, cells);
        let covers = (0..n).all(|i| rel.iter().any(|p| p.0 == i))
            && (0..m).all(|j| rel.iter().any(|p| p.1 == j));
        if !covers {
            continue;
        }
        let dis = rel
            .iter()
            .flat_map(|&(a, b)| rel.iter().map(move |&(c, d)| (a, b, c, d)))
            .map(|(a, b, c, d)| (x.d(a, c) - y.d(b, d)).abs())
            .fold(0.0, f64::max);
        best = best.min(0.5 * dis);
    }
    best
}

/// North-west corner solution after reordering rows and columns.
fn nw_corner(mu: &[f64], nu: &[f64], rows: &[usize], cols: &[usize]) -> Vec<f64> {
    let m = nu.len();
    let mut pi = vec![0.0; mu.len() * m];
    let (mut a, mut b) = (mu.to_vec(), nu.to_vec());
    let (mut r, mut c) = (0, 0);
    while r < rows.len() && c < cols.len() {
        let (i, j) = (rows[r], cols[c]);
        let t = a[i].min(b[j]);
        pi[i * m + j] = t;
        a[i] -= t;
        b[j] -= t;
        if a[i] <= 1e-15 && r + 1 < rows.len() {
            r += 1;
        } else if b[j] <= 1e-15 {
            c += 1;
        } else {
            r += 1;
        }
    }
    pi
}

/// Every vertex of the transport polytope is a north-west corner solution for
/// some order of rows and columns.
pub fn transport_vertices(mu: &[f64], nu: &[f64]) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for p in permutations(mu.len()) {
        for q in permutations(nu.len()) {
            out.push(nw_corner(mu, nu, &p, &q));
        }
    }
    out
}

pub fn brute_transport(cost: &[f64], mu: &[f64], nu: &[f64]) -> f64 {
    transport_vertices(mu, nu)
        .iter()
        .map(|pi| pi.iter().zip(cost).map(|(p, c)| p * c).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Cross distances of a random metric extension: random offsets on every
/// cell, raised until admissible, then closed by the shortest-path formula.
pub fn random_extension<R: Rng>(x: &MmSpace, y: &MmSpace, rng: &mut R) -> Vec<f64> {
    let (n, m) = (x.len(), y.len());
    let k = n * m;
    let scale = x.diameter().max(y.diameter()).max(0.25);
    let mut h: Vec<f64> = (0..k).map(|_| rng.random::<f64>() * scale).collect();
    for a in 0..k {
        for b in 0..k {
            let need = (x.d(a / m, b / m) - y.d(a % m, b % m)).abs();
            if h[a] + h[b] < need {
                let add = need - h[a] - h[b];
                h[a] += add;
            }
        }
    }
    let mut cross = vec![f64::INFINITY; k];
    for i in 0..n {
        for j in 0..m {
            for c in 0..k {
                cross[i * m + j] = cross[i * m + j].min(x.d(i, c / m) + h[c] + y.d(c % m, j));
            }
        }
    }
    cross
}

/// Check that the block matrix `[[r_X, D], [D^T, r_Y]]` is a pseudometric.
pub fn extension_is_metric(x: &MmSpace, y: &MmSpace, cross: &[f64], tol: f64) -> bool {
    let (n, m) = (x.len(), y.len());
    let t = n + m;
    let d = |a: usize, b: usize| -> f64 {
        match (a < n, b < n) {
            (true, true) => x.d(a, b),
            (false, false) => y.d(a - n, b - n),
            (true, false) => cross[a * m + (b - n)],
            (false, true) => cross[b * m + (a - n)],
        }
    };
    (0..t).all(|a| (0..t).all(|b| (0..t).all(|c| d(a, c) <= d(a, b) + d(b, c) + tol)))
}

/// Ky Fan level `inf { eps > 0 : P(D >= eps) < eps }` of the mismatch under
/// the coupling `pi` (row-major `n x m`).
pub fn ky_fan(x: &MmSpace, y: &MmSpace, pi: &[f64]) -> f64 {
    let m = y.len();
    let k = pi.len();
    let mismatch = |a: usize, b: usize| (x.d(a / m, b / m) - y.d(a % m, b % m)).abs();
    let mut levels: Vec<f64> = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .map(|(a, b)| mismatch(a, b))
        .filter(|&v| v > 0.0)
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut lo = 0.0;
    for hi in levels {
        let tail: f64 = (0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .filter(|&(a, b)| mismatch(a, b) >= hi)
            .map(|(a, b)| pi[a] * pi[b])
            .sum();
        if tail < hi - 1e-12 {
            return tail.max(lo);
        }
        lo = hi;
    }
    lo
}

/// `E[min(D, 1)]` under `pi`.
pub fn truncated_mismatch(x: &MmSpace, y: &MmSpace, pi: &[f64]) -> f64 {
    let m = y.len();
    let k = pi.len();
    let mut s = 0.0;
    for a in 0..k {
        for b in 0..k {
            s += pi[a] * pi[b] * (x.d(a / m, b / m) - y.d(a % m, b % m)).abs().min(1.0);
        }
    }
    s
}

/// A random coupling: a random convex combination of a few random vertices.
pub fn random_coupling<R: Rng>(mu: &[f64], nu: &[f64], rng: &mut R) -> Vec<f64> {
    let verts = transport_vertices(mu, nu);
    let parts = rng.random_range(1..=3);
    let mut w: Vec<f64> = (0..parts).map(|_| rng.random::<f64>() + 1e-3).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= s);
    let mut pi = vec![0.0; mu.len() * nu.len()];
    for wk in w {
        let v = &verts[rng.random_range(0..verts.len())];
        pi.iter_mut().zip(v).for_each(|(p, q)| *p += wk * q);
    }
    pi
}

/// Exact minimum of `a t^2 + b t + c` on `[lo, hi]`.
pub fn min_quadratic(a: f64, b: f64, c: f64, lo: f64, hi: f64) -> f64 {
    let f = |t: f64| a * t * t + b * t + c;
    let mut best = f(lo).min(f(hi));
    if a > 0.0 {
        let t = -b / (2.0 * a);
        if t > lo && t < hi {
            best = best.min(f(t));
        }
    }
    best
}

/// For two-point spaces the couplings form a segment `pi_00 = t`. A quadratic
/// form `Q(pi) = sum q[a][b] pi_a pi_b` becomes a quadratic in `t`; this
/// returns its coefficients and the segment.
pub fn two_by_two_segment(
    mu: &[f64],
    nu: &[f64],
    q: impl Fn(usize, usize) -> f64,
) -> (f64, f64, f64, f64, f64) {
    // pi = (t, mu0 - t, nu0 - t, 1 - mu0 - nu0 + t) = base + t * dir
    let base = [0.0, mu[0], nu[0], 1.0 - mu[0] - nu[0]];
    let dir = [1.0, -1.0, -1.0, 1.0];
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            let w = q(i, j);
            a += w * dir[i] * dir[j];
            b += w * (base[i] * dir[j] + dir[i] * base[j]);
            c += w * base[i] * base[j];
        }
    }
    let lo = (mu[0] + nu[0] - 1.0).max(0.0);
    let hi = mu[0].min(nu[0]);
    (a, b, c, lo, hi)
}
