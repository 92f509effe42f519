//! Dense exact linear algebra over the coefficient field: rank and
//! nullspace by Gaussian elimination. Used for linear-independence checks,
//! fibre ranks of evaluated matrices, and the comparison-map solver.

use crate::field::Field;

/// Row-reduce in place; returns the pivot column of each pivot row.
fn row_echelon<K: Field>(field: &K, rows: &mut [Vec<K::Elem>]) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(row, p);
        let inv = field.inv(&rows[row][col].clone());
        for e in rows[row][col..].iter_mut() {
            *e = field.mul(e, &inv);
        }
        let pivot_row = rows[row][col..].to_vec();
        for (r, other) in rows.iter_mut().enumerate() {
            if r == row || field.is_zero(&other[col]) {
                continue;
            }
            let factor = other[col].clone();
            for (offset, pv) in pivot_row.iter().enumerate() {
                let sub = field.mul(&factor, pv);
                other[col + offset] = field.sub(&other[col + offset], &sub);
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank<K: Field>(field: &K, mut rows: Vec<Vec<K::Elem>>) -> usize {
    row_echelon(field, &mut rows).len()
}

/// Basis of { v : A v = 0 } for the matrix with the given rows.
pub fn nullspace<K: Field>(field: &K, mut rows: Vec<Vec<K::Elem>>, ncols: usize) -> Vec<Vec<K::Elem>> {
    if rows.is_empty() {
        // whole space
        return (0..ncols)
            .map(|j| {
                let mut v = vec![field.zero(); ncols];
                v[j] = field.one();
                v
            })
            .collect();
    }
    let pivots = row_echelon(field, &mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![field.zero(); ncols];
        v[fc] = field.one();
        for (prow, &pcol) in pivots.iter().enumerate() {
            // pivot row: x_pcol + sum row[c] x_c = 0 over free columns
            v[pcol] = field.neg(&rows[prow][fc]);
        }
        basis.push(v);
    }
    basis
}
