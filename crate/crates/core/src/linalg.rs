//! Exact linear algebra over Q and Z.
//!
//! Small dense routines backing the summability and telescoping solvers:
//! reduced row echelon form and kernel bases over Q, and Hermite normal form
//! and integer kernels over Z. Everything is deterministic; kernel bases are
//! returned in reduced echelon form (leading one, ascending pivot columns)
//! and integer lattice bases in row-style HNF with positive pivots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::qpoly::Rat;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref(mat: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].recip();
        for c in col..ncols {
            let v = &mat[row][c] * &inv;
            mat[row][c] = v;
        }
        for r in 0..mat.len() {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..ncols {
                    let v = &mat[r][c] - &(&factor * &mat[row][c]);
                    mat[r][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    pivots
}

/// Basis of the solution space of `M v = 0`, in reduced echelon form.
pub fn kernel_basis(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    let pivots = rref(&mut rows, ncols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut vec_ = vec![Rat::zero(); ncols];
        vec_[free] = Rat::from_integer(BigInt::from(1));
        for (r, &pc) in pivots.iter().enumerate() {
            vec_[pc] = -rows[r][free].clone();
        }
        basis.push(vec_);
    }
    // canonicalize the basis itself
    let mut canon = basis;
    rref(&mut canon, ncols);
    canon.retain(|v| v.iter().any(|x| !x.is_zero()));
    canon
}

/// Solves `M v = rhs` over Q; `None` when inconsistent. Free coordinates are
/// set to zero.
pub fn solve(rows: &[Vec<Rat>], rhs: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column
    }
    let mut sol = vec![Rat::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        sol[pc] = aug[r][ncols].clone();
    }
    Some(sol)
}

/// Row-style Hermite normal form of the lattice generated by `rows`.
///
/// Pivots are positive, pivot columns strictly increase, and entries above a
/// pivot are reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf_rows(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut start = 0usize;
    for col in 0..ncols {
        // clear column `col` among rows[start..] by gcd elimination
        loop {
            let mut nonzero: Vec<usize> = (start..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            // combine the two rows with smallest magnitudes in this column
            nonzero.sort_by_key(|&r| rows[r][col].magnitude().clone());
            let (ra, rb) = (nonzero[0], nonzero[1]);
            let q = &rows[rb][col] / &rows[ra][col];
            for c in 0..ncols {
                let t = &rows[rb][c] - &(&q * &rows[ra][c]);
                rows[rb][c] = t;
            }
        }
        if let Some(r) = (start..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            rows.swap(start, r);
            if rows[start][col].is_negative() {
                for c in 0..ncols {
                    let t = -&rows[start][c];
                    rows[start][c] = t;
                }
            }
            start += 1;
        }
    }
    rows.truncate(start);
    // reduce entries above each pivot
    let pivots: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            let pc = pivots[j];
            let p = rows[j][pc].clone();
            let q = rows[i][pc].div_floor(&p);
            if !q.is_zero() {
                for c in 0..ncols {
                    let t = &rows[i][c] - &(&q * &rows[j][c]);
                    rows[i][c] = t;
                }
            }
        }
    }
    out.append(&mut rows);
    out
}

/// HNF basis of the integer kernel `{v in Z^n : M v = 0}`.
pub fn integer_kernel(mat: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    // column elimination with a unimodular transform accumulated in `u`
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let nrows = m.len();
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect(); // u[j] is the j-th column of the transform, as a vector
    let mut lead = 0usize;
    for row in 0..nrows {
        loop {
            let mut nonzero: Vec<usize> = (lead..ncols).filter(|&j| !m[row][j].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&j| m[row][j].magnitude().clone());
            let (ja, jb) = (nonzero[0], nonzero[1]);
            let q = &m[row][jb] / &m[row][ja];
            for r in 0..nrows {
                let t = &m[r][jb] - &(&q * &m[r][ja]);
                m[r][jb] = t;
            }
            for c in 0..ncols {
                let t = &u[jb][c] - &(&q * &u[ja][c]);
                u[jb][c] = t;
            }
        }
        if let Some(j) = (lead..ncols).find(|&j| !m[row][j].is_zero()) {
            m.iter_mut().for_each(|r| r.swap(lead, j));
            u.swap(lead, j);
            lead += 1;
            if lead == ncols {
                break;
            }
        }
    }
    let kernel: Vec<Vec<BigInt>> = (lead..ncols).map(|j| u[j].clone()).collect();
    hnf_rows(kernel, ncols)
}
