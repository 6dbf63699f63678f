//! Monomial actions on polynomial rings and invariance of ideals under them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicElt;
use crate::torus::{Triangulation, Vertex};

/// A polynomial with coefficients in `ℚ(ζ_n)`, terms keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycPoly {
    pub n: u32,
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, CyclotomicElt>,
}

impl CycPoly {
    pub fn zero(n: u32, nvars: usize) -> Self {
        CycPoly { n, nvars, terms: BTreeMap::new() }
    }

    /// Adds `c · x^e`, dropping the term if it cancels.
    pub fn add_term(&mut self, e: Vec<u32>, c: CyclotomicElt) {
        assert_eq!(e.len(), self.nvars);
        let entry = self.terms.entry(e.clone()).or_insert_with(|| CyclotomicElt::zero(c.n));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// A monomial with coefficient one, from a list of variable indices.
    pub fn monomial(n: u32, nvars: usize, vars: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &v in vars {
            e[v] += 1;
        }
        let mut p = Self::zero(n, nvars);
        p.add_term(e, CyclotomicElt::one(n));
        p
    }

    pub fn add(&self, other: &CycPoly) -> CycPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CyclotomicElt) -> CycPoly {
        let mut out = CycPoly::zero(self.n, self.nvars);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), c * d);
        }
        out
    }
}

/// `x_i ↦ scalars[i] · x_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialAction {
    pub perm: Vec<usize>,
    pub scalars: Vec<CyclotomicElt>,
}

impl MonomialAction {
    pub fn apply(&self, p: &CycPoly) -> CycPoly {
        let mut out = CycPoly::zero(p.n, p.nvars);
        for (e, c) in &p.terms {
            let mut e2 = vec![0; p.nvars];
            let mut coef = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[self.perm[i]] += k;
                    coef = &coef * &self.scalars[i].pow(k as u64);
                }
            }
            out.add_term(e2, coef);
        }
        out
    }

    fn extend(mut self, n: u32, extra: usize) -> Self {
        let base = self.perm.len();
        self.perm.extend(base..base + extra);
        self.scalars.extend((0..extra).map(|_| CyclotomicElt::one(n)));
        self
    }
}

/// Translation `τ(x_p) = x_{p−τ}` on the `n` vertex variables, fixing
/// `extra` trailing parameter variables.
pub fn translation_action(t: &Triangulation, tau: Vertex, order: u32, extra: usize) -> MonomialAction {
    let g = &t.group;
    let perm = (0..t.n()).map(|p| g.sub(p, tau)).collect();
    let scalars = (0..t.n()).map(|_| CyclotomicElt::one(order)).collect();
    MonomialAction { perm, scalars }.extend(order, extra)
}

/// The character `χ_w(x, y) = ζ_n^{w₁(cx − by) + w₂·ay}` of `G = ℤ²/Γ`,
/// as an exponent of `ζ_n`.
pub fn character_exponent(t: &Triangulation, w: (i64, i64), p: Vertex) -> i64 {
    let g = t.pres();
    let (x, y) = t.group.coords(p);
    (w.0 * (g.c * x - g.b * y) + w.1 * g.a * y).rem_euclid(g.n() as i64)
}

/// `σ(x_p) = σ(τ_p)⁻¹ x_p` for the character `χ_w`.
pub fn character_action(t: &Triangulation, w: (i64, i64), extra: usize) -> MonomialAction {
    let n = t.n() as u32;
    let perm = (0..t.n()).collect();
    let scalars = (0..t.n()).map(|p| CyclotomicElt::zeta(n, -character_exponent(t, w, p))).collect();
    MonomialAction { perm, scalars }.extend(n, extra)
}

/// Generators of `G` and `G*` acting on `x_0..x_{n−1}` plus `extra` fixed
/// variables. Central scalars act trivially on homogeneous ideals.
pub fn heisenberg_generators(t: &Triangulation, extra: usize) -> Vec<MonomialAction> {
    let n = t.n() as u32;
    let g = &t.group;
    vec![
        translation_action(t, g.tau[0], n, extra),
        translation_action(t, g.tau[1], n, extra),
        character_action(t, (1, 0), extra),
        character_action(t, (0, 1), extra),
    ]
}

/// Rank of a list of polynomials as vectors over `ℚ(ζ_n)`.
fn span_rank(polys: &[&CycPoly]) -> usize {
    let monos: Vec<Vec<u32>> =
        polys.iter().flat_map(|p| p.terms.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let Some(first) = polys.first() else { return 0 };
    let n = first.n;
    let mut rows: Vec<Vec<CyclotomicElt>> = polys
        .iter()
        .map(|p| monos.iter().map(|m| p.terms.get(m).cloned().unwrap_or_else(|| CyclotomicElt::zero(n))).collect())
        .collect();
    let mut rank = 0;
    for c in 0..monos.len() {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, piv);
        let inv = rows[rank][c].inverse().expect("nonzero pivot");
        let pivot_row: Vec<CyclotomicElt> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let f = rows[r][c].clone();
            for k in c..monos.len() {
                let v = &f * &pivot_row[k];
                rows[r][k] = &rows[r][k] - &v;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Whether every transformed generator lies in the `ℚ(ζ_n)`-span of the
/// generators.
pub fn action_invariance(gens: &[CycPoly], action: &MonomialAction) -> bool {
    let base: Vec<&CycPoly> = gens.iter().collect();
    let r = span_rank(&base);
    gens.iter().all(|g| {
        let moved = action.apply(g);
        let mut with = base.clone();
        with.push(&moved);
        span_rank(&with) == r
    })
}
