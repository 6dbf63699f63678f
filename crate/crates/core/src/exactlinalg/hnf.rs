//! Column-style Hermite normal form.
//!
//! Staircase convention used throughout the crate: `H = M·U` is lower
//! staircase. Pivot rows increase strictly with the column index, each pivot
//! is positive, every entry above a pivot is zero, and the entries of a pivot
//! row lying in earlier columns are reduced into `[0, pivot)`. Zero columns
//! come last.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{ext_gcd, IntMatrix};

/// Returns `(H, U)` with `H = M·U`, `U` unimodular and `H` in column HNF.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u, _) = hnf_with_pivots(m);
    (h, u)
}

/// Like [`hnf`] but also reports the pivot row of each nonzero column.
pub fn hnf_with_pivots(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let mut h = m.clone();
    let cols = h.cols();
    let mut u = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut pc = 0;
    for i in 0..h.rows() {
        if pc == cols {
            break;
        }
        // gather the gcd of row i over columns pc.. into column pc
        for j in pc + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, pc)].is_zero() {
                h.swap_cols(pc, j);
                u.swap_cols(pc, j);
                continue;
            }
            let p = h[(i, pc)].clone();
            let q = h[(i, j)].clone();
            let (g, x, y) = ext_gcd(&p, &q);
            let (pg, qg) = (&p / &g, &q / &g);
            // new pc = x*pc + y*j, new j = -qg*pc + pg*j ; det = x*pg + y*qg = 1
            let mq = -qg;
            h.combine_cols(pc, j, &x, &y, &mq, &pg);
            u.combine_cols(pc, j, &x, &y, &mq, &pg);
        }
        if h[(i, pc)].is_zero() {
            continue;
        }
        if h[(i, pc)].is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let piv = h[(i, pc)].clone();
        for j in 0..pc {
            let q = h[(i, j)].div_floor(&piv);
            if !q.is_zero() {
                let mq: BigInt = -q;
                h.add_col_multiple(j, pc, &mq);
                u.add_col_multiple(j, pc, &mq);
            }
        }
        pivots.push(i);
        pc += 1;
    }
    (h, u, pivots)
}

/// Nonzero columns of the HNF: a basis of the column lattice of `m`.
pub fn column_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _, piv) = hnf_with_pivots(m);
    h.select_columns(&(0..piv.len()).collect::<Vec<_>>())
}
