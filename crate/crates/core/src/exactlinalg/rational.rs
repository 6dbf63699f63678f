//! Dense linear algebra over ℚ.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Row-echelon rank of a rational matrix given by rows.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = BigRational::one() / rows[rank][c].clone();
        for r in 0..rows.len() {
            if r == rank || rows[r][c].is_zero() {
                continue;
            }
            let f = &rows[r][c] * &inv;
            for cc in c..cols {
                let v = &f * &rows[rank][cc];
                rows[r][cc] -= v;
            }
        }
        rank += 1;
    }
    rank
}
