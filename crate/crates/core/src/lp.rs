//! Phase-one simplex for `A x = b, x >= 0` feasibility on small dense systems.

const PIVOT_EPS: f64 = 1e-12;

/// Returns a basic feasible solution of `A x = b, x >= 0`, or `None` when the
/// residual phase-one objective exceeds `tol`. Bland's rule, so it cannot
/// cycle.
pub(crate) fn nonnegative_solution(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![0.0; k]);
    }
    let width = k + m + 1;
    let rhs = width - 1;
    let mut t = vec![vec![0.0; width]; m];
    for r in 0..m {
        let flip = if b[r] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..k {
            t[r][j] = flip * a[r][j];
        }
        t[r][k + r] = 1.0;
        t[r][rhs] = flip * b[r];
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    // z_j > 0 means bringing column j in lowers the sum of artificials
    let mut z = vec![0.0; width];
    for row in &t {
        for j in 0..k {
            z[j] += row[j];
        }
        z[rhs] += row[rhs];
    }

    let max_iter = 50 * (k + m) + 100;
    for _ in 0..max_iter {
        let Some(enter) = (0..k + m).find(|&j| z[j] > PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for r in 0..m {
            if t[r][enter] > PIVOT_EPS {
                let ratio = t[r][rhs] / t[r][enter];
                leave = match leave {
                    None => Some(r),
                    Some(l) => {
                        let best = t[l][rhs] / t[l][enter];
                        if ratio < best - PIVOT_EPS
                            || ((ratio - best).abs() <= PIVOT_EPS && basis[r] < basis[l])
                        {
                            Some(r)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        // unbounded direction cannot occur: the objective is bounded below by 0
        let l = leave?;
        pivot(&mut t, &mut z, l, enter);
        basis[l] = enter;
    }

    if z[rhs] > tol {
        return None;
    }
    let mut x = vec![0.0; k];
    for (r, &col) in basis.iter().enumerate() {
        if col < k {
            x[col] = t[r][rhs].max(0.0);
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<f64>], z: &mut [f64], l: usize, enter: usize) {
    let p = t[l][enter];
    for v in t[l].iter_mut() {
        *v /= p;
    }
    let prow = t[l].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == l {
            continue;
        }
        let f = row[enter];
        if f != 0.0 {
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= f * pv;
            }
        }
    }
    let f = z[enter];
    for (v, pv) in z.iter_mut().zip(&prow) {
        *v -= f * pv;
    }
}
