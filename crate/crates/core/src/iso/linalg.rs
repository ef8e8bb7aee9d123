//! Small dense exact linear algebra over cyclotomic scalars.

use crate::scalar::CycloScalar;

pub type Matrix = Vec<Vec<CycloScalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![CycloScalar::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = CycloScalar::one();
    }
    m
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (l, x) in row.iter().enumerate().take(inner) {
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[l][j].is_zero() {
                    out[i][j] += &(x * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn apply(a: &Matrix, x: &[CycloScalar]) -> Vec<CycloScalar> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(CycloScalar::zero(), |acc, (r, v)| &acc + &(r * v)))
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    if !m[r][j].is_zero() {
                        let d = &f * &m[r][j];
                        m[i][j] -= &d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    rref(&mut m.clone()).len()
}

/// Some `x` with `a x = b`, if one exists.
pub fn solve(a: &Matrix, b: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a.iter().zip(b).map(|(row, v)| row.iter().cloned().chain([v.clone()]).collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![CycloScalar::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the null space of `a`.
pub fn kernel(a: &Matrix, cols: usize) -> Vec<Vec<CycloScalar>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![CycloScalar::zero(); cols];
        v[free] = CycloScalar::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -&m[r][free];
        }
        out.push(v);
    }
    out
}
