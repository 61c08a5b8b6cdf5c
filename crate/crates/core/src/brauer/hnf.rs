//! Exact integer solutions of A x = b by column echelon form.

use num::{BigInt, Integer, Signed, Zero};

/// Returns some x ∈ Zⁿ with A x = b, or None. `columns[j]` is column j of
/// A; every column and `b` must have the same length.
pub fn solve_integer(columns: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = columns.len();
    let rows = b.len();
    let mut h: Vec<Vec<BigInt>> = columns.to_vec();
    // u[j] is column j of the unimodular transform, so A·U = H
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| BigInt::from((i == j) as i32)).collect())
        .collect();
    let mut pivots: Vec<Option<usize>> = vec![None; rows];
    let mut c = 0;
    for r in 0..rows {
        if c == n {
            break;
        }
        loop {
            let best = (c..n)
                .filter(|&j| !h[j][r].is_zero())
                .min_by(|&a, &b| h[a][r].abs().cmp(&h[b][r].abs()));
            let Some(best) = best else { break };
            h.swap(c, best);
            u.swap(c, best);
            let mut done = true;
            for j in c + 1..n {
                if h[j][r].is_zero() {
                    continue;
                }
                let q = h[j][r].div_floor(&h[c][r]);
                let (hc, uc) = (h[c].clone(), u[c].clone());
                axpy(&mut h[j], &q, &hc);
                axpy(&mut u[j], &q, &uc);
                if !h[j][r].is_zero() {
                    done = false;
                }
            }
            if done {
                pivots[r] = Some(c);
                c += 1;
                break;
            }
        }
    }

    let mut residual = b.to_vec();
    let mut y = vec![BigInt::zero(); n];
    for r in 0..rows {
        match pivots[r] {
            Some(p) => {
                let (q, rem) = residual[r].div_rem(&h[p][r]);
                if !rem.is_zero() {
                    return None;
                }
                axpy(&mut residual, &q, &h[p]);
                y[p] = q;
            }
            None if !residual[r].is_zero() => return None,
            None => {}
        }
    }
    let mut x = vec![BigInt::zero(); n];
    for (j, yj) in y.iter().enumerate() {
        if !yj.is_zero() {
            for (i, uij) in u[j].iter().enumerate() {
                x[i] += yj * uij;
            }
        }
    }
    Some(x)
}

/// target −= q·source
fn axpy(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}
