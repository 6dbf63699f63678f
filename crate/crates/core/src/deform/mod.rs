//! The binomial versal base space, its exponent lattice `L` and weight matrix `A`.
//!
//! Variables: the edge `{p, τ_k(p)}` is stored by its tail `p` and gets index
//! `(k−1)·n + p`. The parameter `t_{p,−τ_k(p)}` is the edge with tail `p − τ_k`.

mod chart;

pub use chart::{
    local_chart, sample_unit_fiber, unit_fiber_point, ChartEquation, ChartTerm, FiberSample, LocalChart,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlinalg::{
    column_basis, kernel_basis, same_lattice, saturation_quotient, snf, IntMatrix, LatticeSummary,
};
use crate::torus::{Triangulation, Vertex};

/// The `ijk`-convention: the two types other than `k`, in cyclic order.
pub fn ij(k: usize) -> (usize, usize) {
    (k % 3 + 1, (k + 1) % 3 + 1)
}

/// The parameter `t_{p,±τ_k(p)}`, identified with an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeParam {
    /// Tail of the stored edge.
    pub p: Vertex,
    pub k: usize,
}

impl EdgeParam {
    pub fn index(&self, n: usize) -> usize {
        (self.k - 1) * n + self.p
    }

    pub fn from_index(i: usize, n: usize) -> Self {
        EdgeParam {
            p: i % n,
            k: i / n + 1,
        }
    }
}

/// `t_{p,τ_k(p)}`.
pub fn var_plus(t: &Triangulation, p: Vertex, k: usize) -> usize {
    EdgeParam { p, k }.index(t.n())
}

/// `t_{p,−τ_k(p)}`.
pub fn var_minus(t: &Triangulation, p: Vertex, k: usize) -> usize {
    EdgeParam {
        p: t.group.back(p, k),
        k,
    }
    .index(t.n())
}

/// The first-order perturbation `φ_{p,τ_k(p)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    pub param: EdgeParam,
    /// `{−τ_i(p), −τ_j(p)}`, divided out of the monomial.
    pub divisor: [Vertex; 2],
    /// `{p, τ_k(p)}`, multiplied in.
    pub multiplier: [Vertex; 2],
}

impl Perturbation {
    /// `φ(x_m)` for a monomial given as a sorted vertex multiset; `None` means 0.
    pub fn apply(&self, m: &[Vertex]) -> Option<Vec<Vertex>> {
        let mut rest = m.to_vec();
        for d in self.divisor {
            let pos = rest.iter().position(|&v| v == d)?;
            rest.remove(pos);
        }
        rest.extend(self.multiplier);
        rest.sort_unstable();
        Some(rest)
    }
}

/// Basis `φ_{p,q}` of the tangent space, one per edge, in variable order.
pub fn t1_basis(t: &Triangulation) -> Vec<Perturbation> {
    let g = &t.group;
    t.edges
        .iter()
        .map(|e| {
            let (i, j) = ij(e.k);
            Perturbation {
                param: EdgeParam { p: e.p, k: e.k },
                divisor: [g.back(e.p, i), g.back(e.p, j)],
                multiplier: [e.p, e.q],
            }
        })
        .collect()
}

/// `t^{plus} − t^{minus}`, the minor of columns `i, j` at vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binomial {
    pub p: Vertex,
    pub k: usize,
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
}

impl Binomial {
    pub fn exponent(&self) -> Vec<i64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn support_plus(&self) -> Vec<usize> {
        support(&self.plus)
    }

    pub fn support_minus(&self) -> Vec<usize> {
        support(&self.minus)
    }
}

fn support(v: &[i64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] != 0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VersalIdeal {
    pub n: usize,
    pub nvars: usize,
    /// Ordered by `(p, k)`.
    pub binomials: Vec<Binomial>,
}

/// The `3n` minors `t_{p,τ_i}t_{p,−τ_j} − t_{p,τ_j}t_{p,−τ_i}`.
pub fn versal_ideal(t: &Triangulation) -> VersalIdeal {
    let n = t.n();
    let nvars = 3 * n;
    let mut binomials = Vec::with_capacity(3 * n);
    for p in 0..n {
        for k in 1..=3 {
            let (i, j) = ij(k);
            let mut plus = vec![0; nvars];
            let mut minus = vec![0; nvars];
            plus[var_plus(t, p, i)] += 1;
            plus[var_minus(t, p, j)] += 1;
            minus[var_plus(t, p, j)] += 1;
            minus[var_minus(t, p, i)] += 1;
            binomials.push(Binomial { p, k, plus, minus });
        }
    }
    VersalIdeal {
        n,
        nvars,
        binomials,
    }
}

impl VersalIdeal {
    /// Evaluates binomial `idx` at a point.
    pub fn eval<T>(&self, idx: usize, point: &[T]) -> T
    where
        T: Clone + One + Zero + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
    {
        let mono = |e: &[i64]| {
            e.iter().enumerate().fold(T::one(), |acc, (i, &x)| {
                (0..x).fold(acc, |a, _| a * point[i].clone())
            })
        };
        let b = &self.binomials[idx];
        mono(&b.plus) - mono(&b.minus)
    }

    /// Index of the first binomial not vanishing at `point`.
    pub fn first_violation<T>(&self, point: &[T]) -> Option<usize>
    where
        T: Clone + One + Zero + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
    {
        (0..self.binomials.len()).find(|&i| !self.eval(i, point).is_zero())
    }

    fn lines(&self, var: &dyn Fn(usize) -> String) -> Vec<String> {
        self.binomials
            .iter()
            .map(|b| {
                format!(
                    "{} - {}",
                    monomial_text(&b.plus, var),
                    monomial_text(&b.minus, var)
                )
            })
            .collect()
    }

    /// One binomial per line in the variables `t_1..t_{3n}`.
    pub fn to_text(&self) -> String {
        let mut s = self.lines(&|i| format!("t_{}", i + 1)).join("\n");
        s.push('\n');
        s
    }

    /// Ring and ideal definitions for Macaulay2.
    pub fn to_macaulay2(&self) -> String {
        let gens = self.lines(&|i| format!("t_{}", i + 1));
        format!(
            "R = QQ[t_1..t_{}];\nI = ideal(\n  {}\n);\n",
            self.nvars,
            gens.join(",\n  ")
        )
    }

    /// Ring and ideal definitions for Singular.
    pub fn to_singular(&self) -> String {
        let gens = self.lines(&|i| format!("t({})", i + 1));
        format!(
            "ring R = 0, (t(1..{})), dp;\nideal I =\n  {};\n",
            self.nvars,
            gens.join(",\n  ")
        )
    }
}

fn monomial_text(e: &[i64], var: &dyn Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(var(i)),
            _ => parts.push(format!("{}^{}", var(i), x)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentLatticeData {
    /// `f_{k,p}` as columns, in variable order `(k−1)·n + p`.
    pub generators: IntMatrix,
    pub summary: LatticeSummary,
}

/// The lattice `L` spanned by the exponent vectors of the minors.
pub fn exponent_lattice(v: &VersalIdeal) -> ExponentLatticeData {
    let n = v.n;
    let mut cols = vec![Vec::new(); 3 * n];
    for b in &v.binomials {
        cols[(b.k - 1) * n + b.p] = b.exponent();
    }
    let generators = IntMatrix::from_columns(v.nvars, &cols);
    let summary = saturation_quotient(&generators);
    ExponentLatticeData {
        generators,
        summary,
    }
}

impl ExponentLatticeData {
    pub fn f(&self, n: usize, k: usize, p: Vertex) -> Vec<BigInt> {
        self.generators.column((k - 1) * n + p)
    }

    /// `f_{1,p}+f_{2,p}+f_{3,p} = 0` and `Σ_p f_{k,p} = 0`.
    pub fn relations_hold(&self, n: usize) -> bool {
        let add = |a: Vec<BigInt>, b: Vec<BigInt>| {
            a.into_iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>()
        };
        let zero = vec![BigInt::zero(); self.generators.rows()];
        let per_vertex = (0..n).all(|p| {
            (1..=3)
                .map(|k| self.f(n, k, p))
                .fold(zero.clone(), add)
                .iter()
                .all(Zero::is_zero)
        });
        let per_type = (1..=3).all(|k| {
            (0..n)
                .map(|p| self.f(n, k, p))
                .fold(zero.clone(), add)
                .iter()
                .all(Zero::is_zero)
        });
        per_vertex && per_type
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMatrixData {
    pub n: usize,
    /// Rows `ε₁, ε₂, ε₃, e_0..e_{n−1}`; columns in variable order.
    pub a: IntMatrix,
    /// HNF basis of `M = image A`.
    pub m_basis: IntMatrix,
    pub rank: usize,
}

/// The column `A_{p,τ_k(p)} = ε_k + e_p + e_{τ_k(p)} − e_{−τ_i(p)} − e_{−τ_j(p)}`.
pub fn weight_column(t: &Triangulation, p: Vertex, k: usize) -> Vec<i64> {
    let g = &t.group;
    let (i, j) = ij(k);
    let mut col = vec![0; t.n() + 3];
    col[k - 1] += 1;
    col[3 + p] += 1;
    col[3 + g.step(p, k)] += 1;
    col[3 + g.back(p, i)] -= 1;
    col[3 + g.back(p, j)] -= 1;
    col
}

pub fn weight_matrix(t: &Triangulation) -> WeightMatrixData {
    let n = t.n();
    let cols: Vec<Vec<i64>> = t.edges.iter().map(|e| weight_column(t, e.p, e.k)).collect();
    let a = IntMatrix::from_columns(n + 3, &cols);
    let m_basis = column_basis(&a);
    let rank = m_basis.cols();
    WeightMatrixData {
        n,
        a,
        m_basis,
        rank,
    }
}

impl WeightMatrixData {
    pub fn column(&self, p: Vertex, k: usize) -> Vec<BigInt> {
        self.a.column((k - 1) * self.n + p)
    }

    /// `A·f = 0` for every generator.
    pub fn annihilates(&self, l: &ExponentLatticeData) -> bool {
        (&self.a * &l.generators).is_zero()
    }

    /// `ker A = Sat L`.
    pub fn kernel_is_saturation(&self, l: &ExponentLatticeData) -> bool {
        same_lattice(&kernel_basis(&self.a), &l.summary.saturation_basis)
    }

    /// Row of vertex `p`: `+1` on the six edges at `p`, `−1` on the six link
    /// edges, `0` elsewhere.
    pub fn row_structure_holds(&self, t: &Triangulation) -> bool {
        let n = self.n;
        (0..n).all(|p| {
            let link = t.link(p);
            (0..3 * n).all(|c| {
                let e = t.edges[c];
                let at_p = e.p == p || e.q == p;
                let in_link = (0..6).any(|i| {
                    let (u, w) = (link[i], link[(i + 1) % 6]);
                    (e.p, e.q) == (u, w) || (e.p, e.q) == (w, u)
                });
                let expect = match (at_p, in_link) {
                    (true, false) => 1,
                    (false, true) => -1,
                    _ => 0,
                };
                self.a[(3 + p, c)] == BigInt::from(expect)
            })
        })
    }

    /// `|M′/M|` as the product of the invariant factors of `A`, where
    /// `M′ = ℤ³ ⊕ {sum-zero vectors}` is the saturation of `M`.
    pub fn index_in_mprime(&self) -> BigInt {
        snf(&self.a)
            .divisors
            .iter()
            .filter(|d| !d.is_zero())
            .product()
    }

    /// `|M′/M|` as `|det|` of the `M`-basis written in a basis of `M′`.
    pub fn index_in_mprime_by_coordinates(&self) -> BigInt {
        // basis of M′: ε₁, ε₂, ε₃, e_p − e_{n−1} (p < n−1); coordinates are
        // read off from the first n+2 rows.
        let r = self.n + 2;
        let mut coords = IntMatrix::zeros(r, self.m_basis.cols());
        for j in 0..self.m_basis.cols() {
            for i in 0..r {
                coords[(i, j)] = self.m_basis[(i, j)].clone();
            }
        }
        coords.det().abs()
    }

    /// Projection `p₁ : M′ → ℤ³` of each column.
    pub fn projection_to_types(&self) -> Vec<[i64; 3]> {
        (0..self.a.cols())
            .map(|c| [0, 1, 2].map(|i| self.a[(i, c)].to_i64().expect("small entry")))
            .collect()
    }
}

/// For every `τ_i`-orbit `O` and `j ≠ i`: `Σ_{q∈O} A_{q,τ_j(q)} = |τ_i|·ε_j`.
pub fn orbit_column_sums_hold(t: &Triangulation, w: &WeightMatrixData) -> bool {
    let g = &t.group;
    let n = t.n();
    for i in 1..=3 {
        let orbit_len = g.order(g.tau[i - 1]);
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let orbit: Vec<Vertex> = g.coset(start, i).into_iter().collect();
            for &q in &orbit {
                seen[q] = true;
            }
            for j in (1..=3).filter(|&j| j != i) {
                let mut sum = vec![BigInt::zero(); n + 3];
                for &q in &orbit {
                    for (s, x) in sum.iter_mut().zip(w.column(q, j)) {
                        *s += x;
                    }
                }
                let mut expect = vec![BigInt::zero(); n + 3];
                expect[j - 1] = BigInt::from(orbit_len);
                if sum != expect {
                    return false;
                }
            }
        }
    }
    true
}

/// `d`, the first elementary divisor of `G`, checked against `|Sat L / L|`.
pub fn main_component_count(t: &Triangulation) -> usize {
    let d = t.group.divisors.0;
    let l = exponent_lattice(&versal_ideal(t));
    let idx = l.summary.index();
    assert_eq!(
        idx,
        BigInt::from(d),
        "|Sat L/L| disagrees with the elementary divisor"
    );
    assert_eq!(
        d,
        t.pres().d(),
        "elementary divisor disagrees with gcd(a,b,c)"
    );
    d as usize
}

/// Whether `v` is fixed by all translations of `G` acting on the parameters.
pub fn is_translation_invariant(t: &Triangulation, v: &[BigInt]) -> bool {
    let n = t.n();
    (0..n).all(|g| {
        (0..3 * n).all(|i| {
            let e = EdgeParam::from_index(i, n);
            let moved = EdgeParam {
                p: t.group.add(e.p, g),
                k: e.k,
            }
            .index(n);
            v[moved] == v[i]
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{build, GammaPresentation};

    fn tri(a: i64, b: i64, c: i64) -> Triangulation {
        build(&GammaPresentation::new(a, b, c).unwrap())
    }

    #[test]
    fn t7_lattice_data() {
        let t = tri(7, 2, 1);
        let v = versal_ideal(&t);
        assert_eq!(v.binomials.len(), 21);
        assert_eq!(v.nvars, 21);
        let l = exponent_lattice(&v);
        assert_eq!(l.summary.rank, 12);
        assert!(l.summary.is_saturated());
        assert!(l.relations_hold(7));
        let w = weight_matrix(&t);
        assert_eq!(w.rank, 9);
        assert!(w.annihilates(&l));
        assert!(w.kernel_is_saturation(&l));
        assert!(w.row_structure_holds(&t));
        assert_eq!(w.index_in_mprime(), BigInt::from(49));
        assert_eq!(w.index_in_mprime_by_coordinates(), BigInt::from(49));
        assert!(orbit_column_sums_hold(&t, &w));
        assert_eq!(main_component_count(&t), 1);
    }

    #[test]
    fn three_three() {
        let t = tri(3, 0, 3);
        let l = exponent_lattice(&versal_ideal(&t));
        assert_eq!(l.summary.quotient_divisors, vec![BigInt::from(3)]);
        let w = weight_matrix(&t);
        assert_eq!(w.index_in_mprime(), BigInt::from(243));
        assert_eq!(main_component_count(&t), 3);
        assert_eq!(main_component_count(&tri(4, 2, 2)), 2);
    }

    #[test]
    fn perturbation_rule() {
        let t = tri(7, 2, 1);
        let basis = t1_basis(&t);
        assert_eq!(basis.len(), 21);
        let phi = &basis[var_plus(&t, 0, 2)];
        // divisor {−τ₃(0), −τ₁(0)} = {5, 6}
        let mut d = phi.divisor;
        d.sort_unstable();
        assert_eq!(d, [5, 6]);
        let cubic = vec![0, 5, 6];
        let image = phi.apply(&cubic).unwrap();
        assert_eq!(image, vec![0, 0, 4]);
        assert_eq!(phi.apply(&[0, 1, 5]), None);
    }

    #[test]
    fn exports() {
        let t = tri(7, 2, 1);
        let v = versal_ideal(&t);
        assert_eq!(v.to_text().lines().count(), 21);
        let s = v.to_singular();
        assert!(s.contains("t(1)") && !s.contains("t_"));
        assert!(v.to_macaulay2().starts_with("R = QQ[t_1..t_21];"));
    }
}
