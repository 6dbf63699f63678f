//! Stanley-Reisner ideals of triangulated tori.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::torus::{is_isomorphic, GammaPresentation, Triangulation, Vertex};

/// Minimal generators of `I_T`, as sorted vertex supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SRIdealSummary {
    pub quadratic_gens: Vec<[Vertex; 2]>,
    pub cubic_gens: Vec<[Vertex; 3]>,
    pub l_values: [usize; 3],
}

impl SRIdealSummary {
    /// All generators as vertex lists, quadrics first.
    pub fn supports(&self) -> Vec<Vec<Vertex>> {
        self.quadratic_gens
            .iter()
            .map(|q| q.to_vec())
            .chain(self.cubic_gens.iter().map(|c| c.to_vec()))
            .collect()
    }
}

/// Non-edges and empty triangles of a polyhedral `T`.
pub fn generators(t: &Triangulation) -> Result<SRIdealSummary> {
    if !t.polyhedral {
        return Err(Error::NotPolyhedral);
    }
    let n = t.n();
    let firsts: Vec<Vertex> = (0..n).collect();
    let quadratic_gens = par::flat_map(&firsts, |&p| {
        (p + 1..n)
            .filter(|&q| !t.is_edge(p, q))
            .map(|q| [p, q])
            .collect()
    });
    let cubic_gens = par::flat_map(&firsts, |&p| {
        let mut out = Vec::new();
        for q in p + 1..n {
            if !t.is_edge(p, q) {
                continue;
            }
            for r in q + 1..n {
                if t.is_edge(p, r) && t.is_edge(q, r) && !t.is_facet(&[p, q, r]) {
                    out.push([p, q, r]);
                }
            }
        }
        out
    });
    Ok(SRIdealSummary {
        quadratic_gens,
        cubic_gens,
        l_values: l_values(t),
    })
}

/// Number of empty triangles through an edge of type `k`, computed at `p`.
pub fn l_value_at(t: &Triangulation, p: Vertex, k: usize) -> usize {
    let q = t.group.step(p, k);
    let lp = t.link(p);
    let lq = t.link(q);
    // the two vertices opposite the edge {p,q}
    let opposite: Vec<Vertex> = lp
        .iter()
        .copied()
        .filter(|v| lq.contains(v) && t.is_facet(&[p, q, *v]))
        .collect();
    lp.iter()
        .filter(|v| lq.contains(v) && !opposite.contains(v))
        .count()
}

/// `(l₁, l₂, l₃)`, evaluated at vertex 0.
pub fn l_values(t: &Triangulation) -> [usize; 3] {
    [1, 2, 3].map(|k| l_value_at(t, 0, k))
}

/// `τ_k = 2τ_i`, `τ_k = 2τ_j`, `3τ_k = 0`, or one of the converse doublings
/// `τ_i = 2τ_k`, `τ_j = 2τ_k`. Without the converse cases the test misses
/// `l₁` and `l₂` of `(8,2,1)`, where `τ₃ = 2τ₁ = 2τ₂`.
pub fn l_nonzero_criterion(t: &Triangulation, k: usize) -> bool {
    let g = &t.group;
    let tk = g.tau[k - 1];
    let others = [1, 2, 3].into_iter().filter(|&i| i != k);
    others.into_iter().any(|i| {
        let ti = g.tau[i - 1];
        g.scale(2, ti) == tk || g.scale(2, tk) == ti
    }) || g.scale(3, tk) == 0
}

/// `h(z) = n·z²` for `z ≥ 1`; the ring has dimension one in degree 0.
pub fn hilbert(t: &Triangulation, z: u64) -> u64 {
    if z == 0 {
        return 1;
    }
    let n = t.n() as u64;
    // n·C(z−1,0) + 3n·C(z−1,1) + 2n·C(z−1,2)
    n + 3 * n * (z - 1) + 2 * n * ((z - 1) * z.saturating_sub(2) / 2)
}

/// Degree-`z` monomials whose support is a face, by enumeration.
pub fn hilbert_by_enumeration(t: &Triangulation, z: usize) -> u64 {
    fn rec(t: &Triangulation, start: Vertex, left: usize, support: &mut Vec<Vertex>) -> u64 {
        if left == 0 {
            return u64::from(is_face(t, support));
        }
        let mut total = 0;
        for v in start..t.n() {
            let fresh = support.last() != Some(&v);
            if fresh {
                support.push(v);
            }
            if is_face(t, support) {
                total += rec(t, v, left - 1, support);
            }
            if fresh {
                support.pop();
            }
        }
        total
    }
    rec(t, 0, z, &mut Vec::new())
}

/// Whether a sorted vertex set is a face of `T`.
pub fn is_face(t: &Triangulation, s: &[Vertex]) -> bool {
    match s.len() {
        0 | 1 => true,
        2 => t.is_edge(s[0], s[1]),
        3 => t.is_facet(&[s[0], s[1], s[2]]),
        _ => false,
    }
}

/// The four presentation families whose Stanley-Reisner ideal needs cubics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CubicClass {
    /// `(n 2; 0 1)`
    N2,
    /// `(3 0; 0 n/3)`
    Three0,
    /// `(3 1; 0 n/3)`
    Three1,
    /// `(3 2; 0 n/3)`
    Three2,
}

impl std::fmt::Display for CubicClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CubicClass::N2 => "(n 2;0 1)",
            CubicClass::Three0 => "(3 0;0 n/3)",
            CubicClass::Three1 => "(3 1;0 n/3)",
            CubicClass::Three2 => "(3 2;0 n/3)",
        };
        f.write_str(s)
    }
}

pub fn needs_cubics_class(g: &GammaPresentation) -> Option<CubicClass> {
    let n = g.n() as i64;
    let mut cands = Vec::new();
    if let Ok(p) = GammaPresentation::new(n, 2, 1) {
        cands.push((CubicClass::N2, p));
    }
    if n % 3 == 0 {
        for (b, cls) in [
            (0, CubicClass::Three0),
            (1, CubicClass::Three1),
            (2, CubicClass::Three2),
        ] {
            cands.push((cls, GammaPresentation::new(3, b, n / 3).expect("valid")));
        }
    }
    cands
        .into_iter()
        .find(|(_, p)| is_isomorphic(g, p))
        .map(|(c, _)| c)
}
