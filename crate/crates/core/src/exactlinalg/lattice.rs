//! Kernels, saturations and integer solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hnf::hnf_with_pivots;
use super::matrix::IntMatrix;
use super::snf::snf;

/// A sublattice `L ⊆ ℤ^m` given by generators, with its saturation data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub generators: IntMatrix,
    pub rank: usize,
    /// Columns form a basis of `Sat L = (ℝL) ∩ ℤ^m`.
    pub saturation_basis: IntMatrix,
    /// Invariant factors of `Sat L / L` that exceed one.
    pub quotient_divisors: Vec<BigInt>,
}

impl LatticeSummary {
    /// `[Sat L : L]`.
    pub fn index(&self) -> BigInt {
        self.quotient_divisors.iter().product()
    }

    pub fn is_saturated(&self) -> bool {
        self.quotient_divisors.is_empty()
    }
}

/// Basis of the integer kernel `{x ∈ ℤ^cols : M·x = 0}`, as columns.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (_, u, piv) = hnf_with_pivots(m);
    let idx: Vec<usize> = (piv.len()..m.cols()).collect();
    u.select_columns(&idx)
}

/// Saturation and finite quotient of the lattice spanned by the columns.
pub fn saturation_quotient(gens: &IntMatrix) -> LatticeSummary {
    let d = snf(gens);
    let rank = d.rank();
    let saturation_basis = d.u_inv.select_columns(&(0..rank).collect::<Vec<_>>());
    LatticeSummary {
        generators: gens.clone(),
        rank,
        saturation_basis,
        quotient_divisors: d.nontrivial(),
    }
}

/// Some integer `x` with `M·x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows());
    let d = snf(m);
    let ub = d.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        let di = d.divisors.get(i).cloned().unwrap_or_default();
        if di.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ubi.div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(d.v.mul_vec(&y))
}

/// Whether `v` lies in the column lattice of `m`.
pub fn in_lattice(m: &IntMatrix, v: &[BigInt]) -> bool {
    solve_integer(m, v).is_some()
}

/// Whether the column lattices of `a` and `b` coincide.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.columns().iter().all(|c| in_lattice(b, c)) && b.columns().iter().all(|c| in_lattice(a, c))
}

/// The intersection `Sat(L) ∩ ℤ^S` restricted to coordinates in `coords`,
/// returned as a lattice in `ℤ^m` with generators as columns.
pub fn restrict_to_coordinates(basis: &IntMatrix, coords: &[bool]) -> IntMatrix {
    // x = B·c with x_i = 0 for excluded i  <=>  c ∈ ker(B restricted to excluded rows)
    let excluded: Vec<usize> = (0..basis.rows()).filter(|&i| !coords[i]).collect();
    let mut sub = IntMatrix::zeros(excluded.len(), basis.cols());
    for (ii, &i) in excluded.iter().enumerate() {
        for j in 0..basis.cols() {
            sub[(ii, j)] = basis[(i, j)].clone();
        }
    }
    let k = kernel_basis(&sub);
    basis * &k
}

/// Gcd of all entries; one for empty input.
pub fn is_primitive(v: &[BigInt]) -> bool {
    super::matrix::content(v).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn augmentation_kernel() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        for c in k.columns() {
            assert!(c.iter().sum::<BigInt>().is_zero());
        }
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn invertible_kernel_empty() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(kernel_basis(&m).cols(), 0);
    }

    #[test]
    fn index_four() {
        let g = IntMatrix::from_columns(2, &[vec![2, 0], vec![0, 2]]);
        let s = saturation_quotient(&g);
        assert_eq!(s.rank, 2);
        assert_eq!(s.quotient_divisors, big(&[2, 2]));
        assert_eq!(s.saturation_basis.det().abs(), BigInt::one());
    }

    #[test]
    fn kernel_is_saturated() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6, 3], vec![1, 0, 5, 7]]);
        let k = kernel_basis(&m);
        let s = saturation_quotient(&k);
        assert!(s.is_saturated());
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn solve_and_membership() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let x = solve_integer(&m, &big(&[2, 6])).unwrap();
        assert_eq!(m.mul_vec(&x), big(&[2, 6]));
        assert!(solve_integer(&m, &big(&[1, 0])).is_none());
    }

    #[test]
    fn restriction() {
        let b = IntMatrix::identity(3);
        let r = restrict_to_coordinates(&b, &[true, false, true]);
        assert_eq!(r.rank(), 2);
        for c in r.columns() {
            assert!(c[1].is_zero());
        }
    }
}
