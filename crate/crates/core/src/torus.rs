//! Triangulated tori `{3,6}/Γ` and their translation groups.
//!
//! Coordinates: the triangular lattice is identified with ℤ² through the basis
//! `e₁ = τ₁`, `e₂ = −τ₃`, so `τ₁ = (1,0)`, `τ₂ = (−1,1)`, `τ₃ = (0,−1)`.
//! The presentation `(a,b,c)` means `Γ` is spanned by `(a,0)` and `(b,c)`.
//! Group elements are canonical coset representatives `(x,y)` with
//! `0 ≤ x < a`, `0 ≤ y < c`, indexed by `x + a·y`.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{hnf, snf, IntMatrix};

/// Index of a vertex, equivalently of an element of `G`.
pub type Vertex = usize;

/// 2×2 integer matrix `[[m00, m01], [m10, m11]]`.
pub type Mat2 = [[i64; 2]; 2];

/// Rotation by 60 degrees in the `(τ₁, −τ₃)` basis.
pub const RHO: Mat2 = [[0, -1], [1, 1]];
/// Reflection fixing the line orthogonal to `τ₁`.
pub const SIGMA: Mat2 = [[-1, -1], [0, 1]];

pub fn mat_mul(p: &Mat2, q: &Mat2) -> Mat2 {
    let mut r = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
        }
    }
    r
}

pub fn mat_apply(p: &Mat2, v: (i64, i64)) -> (i64, i64) {
    (p[0][0] * v.0 + p[0][1] * v.1, p[1][0] * v.0 + p[1][1] * v.1)
}

/// The twelve elements of the dihedral group generated by [`RHO`] and [`SIGMA`],
/// rotations first (`ρ⁰..ρ⁵`, then `σρ⁰..σρ⁵`).
pub fn dihedral_group() -> Vec<Mat2> {
    let mut rots = vec![[[1, 0], [0, 1]]];
    for i in 1..6 {
        rots.push(mat_mul(&RHO, &rots[i - 1]));
    }
    let refl: Vec<Mat2> = rots.iter().map(|r| mat_mul(&SIGMA, r)).collect();
    rots.into_iter().chain(refl).collect()
}

/// The presentation `(a,b,c)` of `Γ`: columns `(a,0)` and `(b,c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GammaPresentation {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl GammaPresentation {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 1 || c < 1 || b < 0 || b >= a {
            return Err(Error::InvalidPresentation { a, b, c });
        }
        a.checked_mul(c)
            .ok_or(Error::Overflow("presentation order"))?;
        Ok(GammaPresentation { a, b, c })
    }

    pub fn n(&self) -> usize {
        (self.a * self.c) as usize
    }

    pub fn d(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn mat(&self) -> Mat2 {
        [[self.a, self.b], [0, self.c]]
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&[vec![self.a, self.b], vec![0, self.c]])
    }

    /// Whether `(x,y)` lies in `Γ`.
    pub fn contains(&self, (x, y): (i64, i64)) -> bool {
        if y.rem_euclid(self.c) != 0 {
            return false;
        }
        let k = y / self.c;
        (x - k * self.b).rem_euclid(self.a) == 0
    }
}

impl std::fmt::Display for GammaPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Standard form of the lattice spanned by the columns of a nonsingular `m`.
pub fn standard_form(m: &Mat2) -> Result<GammaPresentation> {
    let det = m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128;
    if det == 0 {
        return Err(Error::DegenerateLattice);
    }
    // HNF of the row-reversed matrix puts the y-gcd in the first pivot.
    let rev = IntMatrix::from_rows(&[vec![m[1][0], m[1][1]], vec![m[0][0], m[0][1]]]);
    let (h, _) = hnf(&rev);
    let get = |i, j| h[(i, j)].to_i64().ok_or(Error::Overflow("standard form"));
    let (c, b, a) = (get(0, 0)?, get(1, 0)?, get(1, 1)?);
    GammaPresentation::new(a, b, c)
}

/// Lexicographically least standard form over the twelve dihedral images.
pub fn canonical_form(m: &Mat2) -> Result<GammaPresentation> {
    let mut best: Option<GammaPresentation> = None;
    for p in dihedral_group() {
        let g = standard_form(&mat_mul(&p, m))?;
        if best.is_none_or(|b| g < b) {
            best = Some(g);
        }
    }
    best.ok_or(Error::DegenerateLattice)
}

pub fn is_isomorphic(g1: &GammaPresentation, g2: &GammaPresentation) -> bool {
    match (canonical_form(&g1.mat()), canonical_form(&g2.mat())) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

/// `ρ·Γ ⊆ Γ`.
pub fn is_chiral(g: &GammaPresentation) -> bool {
    let m = g.mat();
    [(m[0][0], m[1][0]), (m[0][1], m[1][1])]
        .iter()
        .all(|&v| g.contains(mat_apply(&RHO, v)))
}

/// The finite abelian group `G = ℤ²/Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusGroup {
    pub pres: GammaPresentation,
    pub n: usize,
    pub tau: [Vertex; 3],
    /// Elementary divisors `(d, n/d)`.
    pub divisors: (i64, i64),
}

impl TorusGroup {
    pub fn new(pres: GammaPresentation) -> Self {
        let n = pres.n();
        let sd = snf(&pres.matrix());
        let d0 = sd.divisors[0].to_i64().expect("small divisor");
        let d1 = sd.divisors[1].to_i64().expect("small divisor");
        let mut g = TorusGroup {
            pres,
            n,
            tau: [0; 3],
            divisors: (d0, d1),
        };
        g.tau = [g.rep(1, 0), g.rep(-1, 1), g.rep(0, -1)];
        g
    }

    pub fn identity(&self) -> Vertex {
        0
    }

    /// Canonical index of the class of `(x,y)`.
    pub fn rep(&self, x: i64, y: i64) -> Vertex {
        let (a, b, c) = (self.pres.a, self.pres.b, self.pres.c);
        let y2 = y.rem_euclid(c);
        let k = (y - y2) / c;
        let x2 = (x - k * b).rem_euclid(a);
        (x2 + a * y2) as usize
    }

    pub fn coords(&self, v: Vertex) -> (i64, i64) {
        let a = self.pres.a as usize;
        ((v % a) as i64, (v / a) as i64)
    }

    pub fn add(&self, u: Vertex, v: Vertex) -> Vertex {
        let (p, q) = (self.coords(u), self.coords(v));
        self.rep(p.0 + q.0, p.1 + q.1)
    }

    pub fn neg(&self, u: Vertex) -> Vertex {
        let p = self.coords(u);
        self.rep(-p.0, -p.1)
    }

    pub fn sub(&self, u: Vertex, v: Vertex) -> Vertex {
        self.add(u, self.neg(v))
    }

    pub fn scale(&self, k: i64, u: Vertex) -> Vertex {
        let p = self.coords(u);
        self.rep(k * p.0, k * p.1)
    }

    /// `τ_k(p) = p + τ_k` for `k ∈ {1,2,3}`.
    pub fn step(&self, p: Vertex, k: usize) -> Vertex {
        self.add(p, self.tau[k - 1])
    }

    /// `−τ_k(p) = p − τ_k`.
    pub fn back(&self, p: Vertex, k: usize) -> Vertex {
        self.sub(p, self.tau[k - 1])
    }

    /// Order of an element by iteration.
    pub fn order(&self, u: Vertex) -> usize {
        let mut k = 1;
        let mut x = u;
        while x != 0 {
            x = self.add(x, u);
            k += 1;
        }
        k
    }

    /// Orders of `τ₁, τ₂, τ₃` from `n/|τ₁| = c`, `n/|τ₂| = gcd(a,b+c)`, `n/|τ₃| = gcd(a,b)`.
    pub fn tau_orders_formula(&self) -> [usize; 3] {
        let GammaPresentation { a, b, c } = self.pres;
        let n = self.n as i64;
        [n / c, n / a.gcd(&(b + c)), n / a.gcd(&b)].map(|x| x as usize)
    }

    pub fn tau_orders(&self) -> [usize; 3] {
        self.tau.map(|t| self.order(t))
    }

    /// Cyclic subgroup generated by `u`, starting at 0.
    pub fn cyclic_subgroup(&self, u: Vertex) -> Vec<Vertex> {
        let mut out = vec![0];
        let mut x = u;
        while x != 0 {
            out.push(x);
            x = self.add(x, u);
        }
        out
    }

    /// The coset `g + ⟨τ_i⟩`.
    pub fn coset(&self, g: Vertex, i: usize) -> BTreeSet<Vertex> {
        self.cyclic_subgroup(self.tau[i - 1])
            .into_iter()
            .map(|h| self.add(g, h))
            .collect()
    }

    /// Whether `u` and `v` generate `G`.
    pub fn generates(&self, u: Vertex, v: Vertex) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in [self.add(x, u), self.add(x, v)] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }
}

/// Orders of the principal translations, elementary divisors and the coset
/// intersection rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInvariants {
    pub n: usize,
    pub orders: [usize; 3],
    pub divisors: (i64, i64),
}

impl GroupInvariants {
    /// `|[g]_i ∩ [h]_j| = |τ_i||τ_j|/n` for `i ≠ j`.
    pub fn coset_card(&self, i: usize, j: usize) -> usize {
        assert!(i != j, "coset intersection needs distinct types");
        self.orders[i - 1] * self.orders[j - 1] / self.n
    }
}

/// Group invariants by closed formula, cross-checked against iteration.
pub fn group_invariants(g: &GammaPresentation) -> GroupInvariants {
    let grp = TorusGroup::new(*g);
    let orders = grp.tau_orders_formula();
    assert_eq!(
        orders,
        grp.tau_orders(),
        "order formula disagrees with iteration for {g}"
    );
    GroupInvariants {
        n: grp.n,
        orders,
        divisors: grp.divisors,
    }
}

/// An edge `{p, τ_k(p)}` of type `k`, stored by its tail `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub p: Vertex,
    pub q: Vertex,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub group: TorusGroup,
    /// `3n` typed edges, ordered by `(k, p)`.
    pub edges: Vec<Edge>,
    /// Facets as sorted vertex triples, deduplicated.
    pub facets: Vec<[Vertex; 3]>,
    pub polyhedral: bool,
}

impl Triangulation {
    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn pres(&self) -> GammaPresentation {
        self.group.pres
    }

    /// The link 6-cycle `(τ₁(p), −τ₃(p), τ₂(p), −τ₁(p), τ₃(p), −τ₂(p))`.
    pub fn link(&self, p: Vertex) -> [Vertex; 6] {
        let g = &self.group;
        [
            g.step(p, 1),
            g.back(p, 3),
            g.step(p, 2),
            g.back(p, 1),
            g.step(p, 3),
            g.back(p, 2),
        ]
    }

    /// Index of the edge of type `k` with tail `p`.
    pub fn edge_index(&self, p: Vertex, k: usize) -> usize {
        (k - 1) * self.n() + p
    }

    /// Unordered vertex pairs that are edges.
    pub fn edge_pairs(&self) -> HashSet<(Vertex, Vertex)> {
        self.edges
            .iter()
            .map(|e| (e.p.min(e.q), e.p.max(e.q)))
            .collect()
    }

    pub fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        let g = &self.group;
        let d = g.sub(v, u);
        g.tau.iter().any(|&t| d == t || d == g.neg(t))
    }

    pub fn is_facet(&self, f: &[Vertex; 3]) -> bool {
        let mut s = *f;
        s.sort_unstable();
        self.facets.binary_search(&s).is_ok()
    }

    /// The f-vector `(vertices, edges, facets)` as generated.
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.n(), self.edges.len(), self.facets.len())
    }
}

/// Builds `T = {3,6}/Γ`.
pub fn build(g: &GammaPresentation) -> Triangulation {
    let group = TorusGroup::new(*g);
    let n = group.n;
    let mut edges = Vec::with_capacity(3 * n);
    for k in 1..=3 {
        for p in 0..n {
            edges.push(Edge {
                p,
                q: group.step(p, k),
                k,
            });
        }
    }
    let mut facets = BTreeSet::new();
    for p in 0..n {
        let up = [p, group.step(p, 1), group.back(p, 3)];
        let down = [p, group.step(p, 1), group.back(p, 2)];
        for mut f in [up, down] {
            f.sort_unstable();
            facets.insert(f);
        }
    }
    let mut t = Triangulation {
        group,
        edges,
        facets: facets.into_iter().collect(),
        polyhedral: false,
    };
    t.polyhedral = check_polyhedral(&t);
    t
}

fn check_polyhedral(t: &Triangulation) -> bool {
    let n = t.n();
    if t.facets.len() != 2 * n || t.facets.iter().any(|f| f[0] == f[1] || f[1] == f[2]) {
        return false;
    }
    let pairs = t.edge_pairs();
    if pairs.len() != 3 * n || pairs.iter().any(|(u, v)| u == v) {
        return false;
    }
    let mut count = std::collections::HashMap::new();
    for f in &t.facets {
        for (u, v) in [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
            if !pairs.contains(&(u, v)) {
                return false;
            }
            *count.entry((u, v)).or_insert(0usize) += 1;
        }
    }
    if count.len() != 3 * n || count.values().any(|&c| c != 2) {
        return false;
    }
    for p in 0..n {
        let l = t.link(p);
        let distinct: HashSet<_> = l.iter().collect();
        if distinct.len() != 6 || distinct.contains(&p) {
            return false;
        }
        for i in 0..6 {
            if !t.is_facet(&[p, l[i], l[(i + 1) % 6]]) {
                return false;
            }
        }
    }
    // two facets meet in a common face: with distinct edges this reduces to
    // facets sharing three vertices being equal, already excluded by dedup
    true
}

pub fn is_polyhedral(t: &Triangulation) -> bool {
    t.polyhedral
}

/// Vertex permutations `x ↦ P·x + v` induced by lattice symmetries `P` of the
/// tessellation that preserve `Γ`, for all translations `v`.
pub fn affine_automorphisms(t: &Triangulation) -> Vec<Vec<Vertex>> {
    let g = &t.group;
    let m = g.pres.mat();
    let gens = [(m[0][0], m[1][0]), (m[0][1], m[1][1])];
    let mut out = Vec::new();
    for p in dihedral_group() {
        if !gens.iter().all(|&v| g.pres.contains(mat_apply(&p, v))) {
            continue;
        }
        let lin: Vec<Vertex> = (0..g.n)
            .map(|v| {
                let (x, y) = mat_apply(&p, g.coords(v));
                g.rep(x, y)
            })
            .collect();
        for s in 0..g.n {
            out.push(lin.iter().map(|&v| g.add(v, s)).collect());
        }
    }
    out
}

/// Whether a vertex permutation maps facets onto facets.
pub fn preserves_facets(t: &Triangulation, perm: &[Vertex]) -> bool {
    t.facets
        .iter()
        .all(|f| t.is_facet(&[perm[f[0]], perm[f[1]], perm[f[2]]]))
}
