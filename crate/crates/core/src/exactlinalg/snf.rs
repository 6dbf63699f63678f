//! Smith normal form by gcd-pivot elimination with explicit transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{ext_gcd, IntMatrix};

/// `U·M·V = S` with `S` diagonal and `divisors` the diagonal of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, kept so that `M·V = U⁻¹·S` can be read off directly.
    pub u_inv: IntMatrix,
    /// Invariant factors `d₁ | d₂ | …`, length `min(rows, cols)`, zeros trailing.
    pub divisors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.divisors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

struct State {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl State {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    /// row[dst] += k·row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        let mk = -k;
        self.u_inv.add_col_multiple(src, dst, &mk);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
    }

    /// Rows (p,q) ← [[x,y],[u,v]]·(p,q) with determinant 1.
    fn combine_rows(&mut self, p: usize, q: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        self.s.combine_rows(p, q, x, y, u, v);
        self.u.combine_rows(p, q, x, y, u, v);
        // inverse of [[x,y],[u,v]] is [[v,-y],[-u,x]]; U⁻¹ ← U⁻¹·E⁻¹ acts on columns
        let (my, mu) = (-y, -u);
        self.u_inv.combine_cols(p, q, v, &mu, &my, x);
    }

    fn combine_cols(&mut self, p: usize, q: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        self.s.combine_cols(p, q, x, y, u, v);
        self.v.combine_cols(p, q, x, y, u, v);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Computes the Smith normal form of `m`.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (m.rows(), m.cols());
    let mut st = State {
        s: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
    };
    let k = r.min(c);
    for t in 0..k {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let e = &st.s[(i, j)];
                if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < st.s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        st.swap_rows(t, bi);
        st.swap_cols(t, bj);
        loop {
            // clear column t below the pivot
            for i in t + 1..r {
                if st.s[(i, t)].is_zero() {
                    continue;
                }
                let p = st.s[(t, t)].clone();
                let q = st.s[(i, t)].clone();
                if q.is_multiple_of(&p) {
                    let f = -(&q / &p);
                    st.add_row(i, t, &f);
                } else {
                    let (g, x, y) = ext_gcd(&p, &q);
                    let (pg, qg) = (&p / &g, &q / &g);
                    let mq = -qg;
                    st.combine_rows(t, i, &x, &y, &mq, &pg);
                }
            }
            // clear row t right of the pivot
            for j in t + 1..c {
                if st.s[(t, j)].is_zero() {
                    continue;
                }
                let p = st.s[(t, t)].clone();
                let q = st.s[(t, j)].clone();
                if q.is_multiple_of(&p) {
                    let f = -(&q / &p);
                    st.add_col(j, t, &f);
                } else {
                    let (g, x, y) = ext_gcd(&p, &q);
                    let (pg, qg) = (&p / &g, &q / &g);
                    let mq = -qg;
                    st.combine_cols(t, j, &x, &y, &mq, &pg);
                }
            }
            if (t + 1..r).any(|i| !st.s[(i, t)].is_zero()) {
                continue;
            }
            // divisibility: fold an offending row into row t and repeat
            let p = st.s[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !st.s[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.s[(t, t)].is_negative() {
            st.negate_row(t);
        }
    }
    let divisors = (0..k).map(|i| st.s[(i, i)].clone()).collect();
    SmithDecomposition {
        s: st.s,
        u: st.u,
        v: st.v,
        u_inv: st.u_inv,
        divisors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let d = snf(m);
        assert_eq!(&(&d.u * m) * &d.v, d.s);
        assert_eq!(&d.u * &d.u_inv, IntMatrix::identity(m.rows()));
        assert!(d.u.det().abs().is_one());
        assert!(d.v.det().abs().is_one());
        for w in d.divisors.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        d
    }

    fn divs(d: &SmithDecomposition) -> Vec<i64> {
        d.divisors
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn torus_presentation() {
        let d = check(&IntMatrix::from_rows(&[vec![7, 2], vec![0, 1]]));
        assert_eq!(divs(&d), vec![1, 7]);
    }

    #[test]
    fn scalar_three() {
        let d = check(&IntMatrix::from_rows(&[vec![3, 0], vec![0, 3]]));
        assert_eq!(divs(&d), vec![3, 3]);
    }

    #[test]
    fn zero_matrix() {
        let d = check(&IntMatrix::zeros(2, 3));
        assert_eq!(divs(&d), vec![0, 0]);
    }

    #[test]
    fn needs_divisibility_fix() {
        let d = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(divs(&d), vec![1, 6]);
        let d = check(&IntMatrix::from_rows(&[
            vec![4, 0, 0],
            vec![0, 6, 0],
            vec![0, 0, 10],
        ]));
        assert_eq!(divs(&d), vec![2, 2, 60]);
    }
}
