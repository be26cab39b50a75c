//! Dense simplex for small packing programs.

/// Solve `max p^T y` subject to `M y <= q`, `y >= 0`, with `q >= 0`.
///
/// `m_rows` is row-major with `q.len()` rows and `p.len()` columns. Returns
/// the optimal value and the dual solution (one multiplier per row), which
/// solves `min q^T h` subject to `M^T h >= p`, `h >= 0`.
pub(crate) fn max_packing(p: &[f64], m_rows: &[f64], q: &[f64]) -> (f64, Vec<f64>) {
    let (rows, cols) = (q.len(), p.len());
    assert_eq!(m_rows.len(), rows * cols);
    assert!(q.iter().all(|&v| v >= 0.0), "packing program needs q >= 0");
    let width = cols + rows + 1;
    // tableau rows: constraints, then the objective row (reduced costs)
    let mut t = vec![0.0; (rows + 1) * width];
    for r in 0..rows {
        t[r * width..r * width + cols].copy_from_slice(&m_rows[r * cols..(r + 1) * cols]);
        t[r * width + cols + r] = 1.0;
        t[r * width + width - 1] = q[r];
    }
    for c in 0..cols {
        t[rows * width + c] = -p[c];
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    let tol = 1e-12;
    // Bland: lowest-index column with negative reduced cost
    while let Some(enter) = (0..cols + rows).find(|&c| t[rows * width + c] < -tol) {
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..rows {
            let a = t[r * width + enter];
            if a > tol {
                let ratio = t[r * width + width - 1] / a;
                let better = match leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - tol || (ratio <= lratio + tol && basis[r] < basis[lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (lr, _) = leave.expect("packing program with q >= 0 and bounded objective");
        let piv = t[lr * width + enter];
        for c in 0..width {
            t[lr * width + c] /= piv;
        }
        for r in 0..=rows {
            if r != lr {
                let f = t[r * width + enter];
                if f != 0.0 {
                    for c in 0..width {
                        t[r * width + c] -= f * t[lr * width + c];
                    }
                }
            }
        }
        basis[lr] = enter;
    }
    let value = t[rows * width + width - 1];
    let dual = (0..rows)
        .map(|r| t[rows * width + cols + r].max(0.0))
        .collect();
    (value, dual)
}
