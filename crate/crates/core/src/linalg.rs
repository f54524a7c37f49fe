//! Gaussian elimination over GF(q).

use crate::gf::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row (in order). Zero rows end up at the bottom.
pub fn rref(field: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let t = field.mul(factor, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Index of the first row that lies in the span of the rows before it.
pub fn first_dependent_row(field: &Field, rows: &[Vec<Elem>]) -> Option<usize> {
    (0..rows.len()).find(|&i| rank(field, &rows[..=i]) <= i)
}

/// A basis of `{ v : rows * v^T = 0 }`, in the standard form obtained from
/// the reduced echelon form (one vector per free column, free entry 1).
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Matrix {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Elem::ZERO; ncols];
            v[f] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m[r][f]);
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the row space of `rows`.
pub fn in_span(field: &Field, rows: &[Vec<Elem>], v: &[Elem]) -> bool {
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(field, &ext) == rank(field, rows)
}

/// Solves `a * x = b` for square invertible `a`; `None` when singular.
pub fn solve(field: &Field, a: &[Vec<Elem>], b: &[Elem]) -> Option<Vec<Elem>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.iter().map(|r| r[n]).collect())
}
