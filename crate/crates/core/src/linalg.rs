//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::ratpoly::Rat;

/// Reduces `m` (rows of equal length `ncols`) to reduced row echelon form in
/// place, drops zero rows, and returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    other[c] -= &f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

/// Basis of `{v : m v = 0}`, returned as the rows of a matrix in reduced
/// row echelon form.
pub fn null_space(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    rref(&mut basis, ncols);
    basis
}

pub fn rank(m: &[Vec<Rat>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols).len()
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
