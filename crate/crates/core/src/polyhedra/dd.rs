//! Double description: extreme rays of `{y : ⟨c, y⟩ ≥ 0 for all c}`.
//!
//! Constraints are inserted one at a time. Adjacency of two rays is decided
//! combinatorially from their sets of tight constraints.

use fixedbitset::FixedBitSet;

use super::vecops::{combine, dot, primitive64, rank, IVec};
use crate::error::{Error, Result};
use crate::exactlinalg::{kernel_basis, IntMatrix};

struct Ray {
    v: IVec,
    zero: FixedBitSet,
}

/// Picks `d` linearly independent rows, greedily in order.
fn independent_rows(rows: &[IVec], d: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut acc: Vec<IVec> = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        acc.push(r.clone());
        if rank(&acc) == acc.len() {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        } else {
            acc.pop();
        }
    }
    chosen
}

/// Extreme rays of the pointed cone `{y ∈ ℝ^d : ⟨c, y⟩ ≥ 0}`, as primitive
/// vectors. Fails with [`Error::ConeHasLineality`] when the constraints have
/// rank below `d`.
pub fn extreme_rays_of_inequalities(constraints: &[IVec], d: usize) -> Result<Vec<IVec>> {
    let m = constraints.len();
    let basis = independent_rows(constraints, d);
    if basis.len() < d {
        return Err(Error::ConeHasLineality);
    }
    let mut processed = FixedBitSet::with_capacity(m);
    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for (pos, &bi) in basis.iter().enumerate() {
        // ray orthogonal to every other basis row, positive on row bi
        let others: Vec<Vec<i64>> =
            basis.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &r)| constraints[r].clone()).collect();
        let v = if others.is_empty() {
            vec![1]
        } else {
            let k = kernel_basis(&IntMatrix::from_rows(&others));
            super::vecops::from_big(&k.column(0))?
        };
        let v = if dot(&constraints[bi], &v) < 0 { v.iter().map(|x| -x).collect() } else { v };
        rays.push(Ray { v: primitive64(&v), zero: FixedBitSet::with_capacity(m) });
    }
    for &bi in &basis {
        processed.insert(bi);
    }
    for r in rays.iter_mut() {
        for &bi in &basis {
            if dot(&constraints[bi], &r.v) == 0 {
                r.zero.insert(bi);
            }
        }
    }
    for ci in 0..m {
        if processed.contains(ci) {
            continue;
        }
        let c = &constraints[ci];
        let vals: Vec<i128> = rays.iter().map(|r| dot(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i] == 0 {
                    r.zero.insert(ci);
                }
            }
            processed.insert(ci);
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zero.clone();
                common.intersect_with(&rays[q].zero);
                if common.count_ones(..) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || !common.is_subset(&rays[r].zero));
                if !adjacent {
                    continue;
                }
                let v = combine(vals[p], &rays[q].v, vals[q], &rays[p].v)?;
                let mut zero = common;
                zero.insert(ci);
                fresh.push(Ray { v, zero });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i] > 0 {
                next.push(r);
            } else if vals[i] == 0 {
                r.zero.insert(ci);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
        processed.insert(ci);
    }
    let mut out: Vec<IVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octant() {
        let c = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let r = extreme_rays_of_inequalities(&c, 3).unwrap();
        assert_eq!(r, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn square_cone_facets() {
        // facets of cone over the unit square = rays of the dual
        let g = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
        let f = extreme_rays_of_inequalities(&g, 3).unwrap();
        assert_eq!(f.len(), 4);
        for n in &f {
            assert!(g.iter().all(|x| dot(x, n) >= 0));
            assert_eq!(g.iter().filter(|x| dot(x, n) == 0).count(), 2);
        }
    }

    #[test]
    fn lineality_detected() {
        let g = vec![vec![1, 0, 0], vec![0, 1, 0]];
        assert_eq!(extreme_rays_of_inequalities(&g, 3), Err(Error::ConeHasLineality));
    }
}
