//! Gaussian elimination over an exact field.

use super::field::Field;

/// Row-reduces `rows` in place; returns pivot columns.
fn row_reduce<F: Field>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..n_cols {
                    let t = rows[r][j].mul(&factor);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    row_reduce(&mut rows).len()
}

pub fn determinant<F: Field>(ctx: &F::Ctx, mut rows: Vec<Vec<F>>) -> F {
    let n = rows.len();
    let mut det = F::one(ctx);
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return F::zero(ctx);
        };
        if pr != c {
            rows.swap(pr, c);
            det = det.neg();
        }
        det = det.mul(&rows[c][c]);
        let inv = rows[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].mul(&inv);
            for j in c..n {
                let t = rows[c][j].mul(&factor);
                rows[i][j] = rows[i][j].sub(&t);
            }
        }
    }
    det
}

/// Solves `sum_j x_j * columns[j] = target`; `None` if inconsistent.
/// Free variables are set to zero.
pub fn solve_columns<F: Field>(ctx: &F::Ctx, columns: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n_rows = target.len();
    let n_cols = columns.len();
    let mut rows: Vec<Vec<F>> = (0..n_rows)
        .map(|i| {
            let mut row: Vec<F> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.contains(&n_cols) {
        return None;
    }
    let mut x = vec![F::zero(ctx); n_cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n_cols].clone();
    }
    Some(x)
}
