//! Small exact helpers on `i64` vectors with `i128` intermediates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactlinalg::IntMatrix;

pub type IVec = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn gcd_vec(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Divides by the content; zero stays zero.
pub fn primitive(v: &[i128]) -> Result<IVec> {
    let g = gcd_vec(v);
    let g = if g == 0 { 1 } else { g };
    v.iter()
        .map(|&x| i64::try_from(x / g).map_err(|_| Error::Overflow("primitive vector")))
        .collect()
}

pub fn primitive64(v: &[i64]) -> IVec {
    let w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    primitive(&w).expect("dividing cannot overflow")
}

/// `a·x − b·y`, made primitive.
pub fn combine(a: i128, x: &[i64], b: i128, y: &[i64]) -> Result<IVec> {
    let v: Option<Vec<i128>> = x
        .iter()
        .zip(y)
        .map(|(&p, &q)| a.checked_mul(p as i128)?.checked_sub(b.checked_mul(q as i128)?))
        .collect();
    primitive(&v.ok_or(Error::Overflow("ray combination"))?)
}

pub fn add(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}


/// Rank of a set of integer vectors.
pub fn rank(rows: &[IVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if m[r][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[r][c]);
            let g = a.gcd(&b);
            let (fa, fb) = (a / g, b / g);
            let mut overflow = false;
            for cc in c..cols {
                match (m[r][cc].checked_mul(fa), m[rank][cc].checked_mul(fb)) {
                    (Some(x), Some(y)) => m[r][cc] = x - y,
                    _ => overflow = true,
                }
            }
            if overflow {
                return big_rank(rows);
            }
            let g = gcd_vec(&m[r]);
            if g > 1 {
                m[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn big_rank(rows: &[IVec]) -> usize {
    IntMatrix::from_rows(rows).rank()
}

/// Affine rank (dimension of the affine hull) of a point set.
pub fn affine_dim(points: &[&IVec]) -> isize {
    match points.split_first() {
        None => -1,
        Some((first, rest)) => {
            let diffs: Vec<IVec> = rest.iter().map(|p| sub(p, first)).collect();
            rank(&diffs) as isize
        }
    }
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn from_big(v: &[BigInt]) -> Result<IVec> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow("conversion to i64"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(primitive(&[4, -6, 0]).unwrap(), vec![2, -3, 0]);
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(affine_dim(&[&vec![0, 0], &vec![1, 1], &vec![2, 2]]), 1);
        assert_eq!(combine(2, &[1, 0], 1, &[0, 2]).unwrap(), vec![1, -1]);
    }
}
