//! Lattice polytopes given by vertices, with facets computed on demand.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::dd::extreme_rays_of_inequalities;
use super::vecops::{add, dot, rank, sub, to_big, IVec};
use super::Coordinates;
use crate::error::{Error, Result};
use crate::exactlinalg::{saturation_quotient, IntMatrix};
use crate::par;

/// Affine lattice coordinates on the hull of a point set: the affine span
/// meets `ℤ^dim` in `origin + basis·ℤ^k`.
#[derive(Clone, Debug)]
struct Frame {
    origin: IVec,
    /// `None` when the polytope is full-dimensional; then local = ambient.
    basis: Option<IntMatrix>,
    k: usize,
    local: Vec<IVec>,
    /// Homogeneous inner normals `(a, b)`: `⟨a, x⟩ + b ≥ 0`.
    facets: Vec<IVec>,
    /// Vertices lying on each facet.
    incidence: Vec<FixedBitSet>,
}

impl Frame {
    fn new(dim: usize, points: &[IVec]) -> Result<Frame> {
        let origin = points[0].clone();
        let diffs: Vec<IVec> = points[1..].iter().map(|p| sub(p, &origin)).collect();
        let k = rank(&diffs);
        let (origin, basis, local) = if k == dim {
            (vec![0; dim], None, points.to_vec())
        } else if k == 0 {
            (origin, Some(IntMatrix::zeros(dim, 0)), vec![vec![]; points.len()])
        } else {
            let b = saturation_quotient(&IntMatrix::from_columns(dim, &diffs)).saturation_basis;
            let coords = Coordinates::new(&b);
            let local = points
                .iter()
                .map(|p| coords.of_i64(&sub(p, &origin))?.ok_or(Error::Invalid("point off its affine lattice".into())))
                .collect::<Result<_>>()?;
            (origin, Some(b), local)
        };
        let mut f = Frame { origin, basis, k, local, facets: Vec::new(), incidence: Vec::new() };
        if k > 0 {
            f.facets = hull_facets(&f.local, k)?;
            f.incidence = f
                .facets
                .iter()
                .map(|a| {
                    let mut s = FixedBitSet::with_capacity(f.local.len());
                    for (i, v) in f.local.iter().enumerate() {
                        if eval(a, v) == 0 {
                            s.insert(i);
                        }
                    }
                    s
                })
                .collect();
        }
        Ok(f)
    }

    fn to_ambient(&self, x: &[i64]) -> IVec {
        match &self.basis {
            None => x.to_vec(),
            Some(b) => {
                let img = super::vecops::from_big(&b.mul_vec(&to_big(x))).expect("ambient point fits in i64");
                add(&self.origin, &img)
            }
        }
    }
}

/// `⟨a, x⟩ + b` for a homogeneous normal `(a, b)`.
fn eval(normal: &[i64], x: &[i64]) -> i128 {
    let k = x.len();
    dot(&normal[..k], x) + normal[k] as i128
}

/// Facets of the hull of full-dimensional points in `ℤ^k`.
fn hull_facets(points: &[IVec], k: usize) -> Result<Vec<IVec>> {
    let homog: Vec<IVec> = points
        .iter()
        .map(|p| {
            let mut h = p.clone();
            h.push(1);
            h
        })
        .collect();
    extreme_rays_of_inequalities(&homog, k + 1)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticePolytope {
    pub dim: usize,
    /// Sorted vertices in the ambient lattice.
    pub vertices: Vec<IVec>,
    #[serde(skip)]
    frame: OnceLock<Frame>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl LatticePolytope {
    /// Convex hull of `points` in `ℤ^dim`, keeping only extreme points.
    pub fn hull(dim: usize, points: &[IVec]) -> Result<LatticePolytope> {
        if points.is_empty() {
            return Err(Error::Invalid("empty point set".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let frame = Frame::new(dim, &pts)?;
        let keep: Vec<usize> = if frame.k == 0 {
            vec![0]
        } else {
            (0..pts.len())
                .filter(|&i| {
                    let tight: Vec<IVec> = frame
                        .incidence
                        .iter()
                        .zip(&frame.facets)
                        .filter(|(s, _)| s.contains(i))
                        .map(|(_, a)| a.clone())
                        .collect();
                    rank(&tight) == frame.k
                })
                .collect()
        };
        let vertices: Vec<IVec> = keep.iter().map(|&i| pts[i].clone()).collect();
        let poly = LatticePolytope { dim, vertices, frame: OnceLock::new() };
        if keep.len() == pts.len() {
            let _ = poly.frame.set(frame);
        }
        Ok(poly)
    }

    fn frame(&self) -> &Frame {
        self.frame.get_or_init(|| Frame::new(self.dim, &self.vertices).expect("vertices define a frame"))
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.frame().k
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    /// Inequalities `⟨a, x⟩ + b ≥ 0` in ambient coordinates, one per facet,
    /// as `(a, b)`. Only available for full-dimensional polytopes.
    pub fn facet_inequalities(&self) -> Option<Vec<IVec>> {
        self.is_full_dimensional().then(|| self.frame().facets.clone())
    }

    pub fn translate(&self, by: &[i64]) -> LatticePolytope {
        let vertices = self.vertices.iter().map(|v| add(v, by)).collect();
        LatticePolytope { dim: self.dim, vertices, frame: OnceLock::new() }
    }

    /// All nonempty proper faces as vertex sets, with their dimensions.
    pub fn faces(&self) -> Vec<(FixedBitSet, usize)> {
        let f = self.frame();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut queue: Vec<FixedBitSet> = Vec::new();
        for s in &f.incidence {
            if seen.insert(s.clone()) {
                queue.push(s.clone());
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let face = queue[i].clone();
            for s in &f.incidence {
                let mut x = face.clone();
                x.intersect_with(s);
                if x.count_ones(..) > 0 && seen.insert(x.clone()) {
                    queue.push(x);
                }
            }
            i += 1;
        }
        par::map(&queue, |s| {
            let pts: Vec<&IVec> = s.ones().map(|v| &f.local[v]).collect();
            (s.clone(), super::vecops::affine_dim(&pts) as usize)
        })
    }

    /// `(f₀, …, f_{k−1}, 1)` for a polytope of dimension `k`.
    pub fn f_vector(&self) -> Vec<usize> {
        let k = self.affine_dim();
        let mut fv = vec![0; k + 1];
        fv[k] = 1;
        if k == 0 {
            return fv;
        }
        for (_, d) in self.faces() {
            fv[d] += 1;
        }
        fv
    }

    /// f-vector of every facet, in facet order.
    pub fn facet_f_vectors(&self) -> Vec<Vec<usize>> {
        let k = self.affine_dim();
        let faces = self.faces();
        self.frame()
            .incidence
            .iter()
            .map(|facet| {
                let mut fv = vec![0; k];
                fv[k - 1] = 1;
                for (s, d) in &faces {
                    if *d + 1 < k && s.is_subset(facet) {
                        fv[*d] += 1;
                    }
                }
                fv
            })
            .collect()
    }

    /// All lattice points, by recursive projection. The interval for each
    /// coordinate comes from the facets of the projection onto the prefix.
    pub fn lattice_points(&self) -> Result<Vec<IVec>> {
        let f = self.frame();
        let k = f.k;
        if k == 0 {
            return Ok(vec![self.vertices[0].clone()]);
        }
        let prefix_facets: Vec<Vec<IVec>> = (1..=k)
            .map(|j| {
                let mut pts: Vec<IVec> = f.local.iter().map(|v| v[..j].to_vec()).collect();
                pts.sort();
                pts.dedup();
                hull_facets(&pts, j)
            })
            .collect::<Result<_>>()?;
        let (lo, hi) = interval(&prefix_facets[0], &[]).expect("projection is nonempty");
        let firsts: Vec<i64> = (lo..=hi).collect();
        let mut out: Vec<IVec> = par::flat_map(&firsts, |&x| {
            let mut acc = Vec::new();
            let mut prefix = vec![x];
            descend(&prefix_facets, &mut prefix, &mut acc);
            acc
        })
        .into_iter()
        .map(|x| f.to_ambient(&x))
        .collect();
        out.sort();
        Ok(out)
    }

    /// `|det(v₁ − v₀, …, v_k − v₀)|` in the affine lattice of a simplex.
    pub fn normalized_volume_of_simplex(&self) -> Result<i128> {
        simplex_normalized_volume(self)
    }

    /// Reflexive: full-dimensional and every facet at height one over 0.
    pub fn is_reflexive(&self) -> bool {
        self.is_full_dimensional() && self.frame().facets.iter().all(|a| a[self.dim] == 1)
    }

    /// Polar `{y : ⟨x, y⟩ ≥ −1}`, when `self` is reflexive.
    pub fn polar(&self) -> Option<LatticePolytope> {
        if !self.is_reflexive() {
            return None;
        }
        let normals: Vec<IVec> = self.frame().facets.iter().map(|a| a[..self.dim].to_vec()).collect();
        LatticePolytope::hull(self.dim, &normals).ok()
    }

    /// PALP input: a `dim npoints` header, then one row per coordinate.
    pub fn to_palp(&self) -> String {
        let mut s = format!("{} {}\n", self.dim, self.vertices.len());
        for i in 0..self.dim {
            let row: Vec<String> = self.vertices.iter().map(|v| v[i].to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

fn interval(facets: &[IVec], prefix: &[i64]) -> Option<(i64, i64)> {
    let j = prefix.len();
    let (mut lo, mut hi) = (i128::MIN, i128::MAX);
    for a in facets {
        let s = dot(&a[..j], prefix) + a[j + 1] as i128;
        let c = a[j] as i128;
        if c > 0 {
            lo = lo.max((-s).div_euclid(c) + i128::from((-s).rem_euclid(c) != 0));
        } else if c < 0 {
            hi = hi.min(s.div_euclid(-c));
        } else if s < 0 {
            return None;
        }
    }
    (lo <= hi).then(|| (lo as i64, hi as i64))
}

fn descend(prefix_facets: &[Vec<IVec>], prefix: &mut Vec<i64>, acc: &mut Vec<IVec>) {
    let j = prefix.len();
    if j == prefix_facets.len() {
        acc.push(prefix.clone());
        return;
    }
    if let Some((lo, hi)) = interval(&prefix_facets[j], prefix) {
        for x in lo..=hi {
            prefix.push(x);
            descend(prefix_facets, prefix, acc);
            prefix.pop();
        }
    }
}

/// Normalized volume of a lattice simplex in its own affine lattice.
pub fn simplex_normalized_volume(p: &LatticePolytope) -> Result<i128> {
    let f = p.frame();
    if f.local.len() != f.k + 1 {
        return Err(Error::Invalid("not a simplex".into()));
    }
    let rows: Vec<IVec> = f.local[1..].iter().map(|v| sub(v, &f.local[0])).collect();
    if rows.is_empty() {
        return Ok(1);
    }
    IntMatrix::from_rows(&rows).det().abs().to_i128().ok_or(Error::Overflow("simplex volume"))
}

/// Extreme points of all sums, pruning after each summand.
pub fn minkowski_sum(polys: &[LatticePolytope]) -> Result<LatticePolytope> {
    let (first, rest) = polys.split_first().ok_or(Error::Invalid("empty Minkowski sum".into()))?;
    let mut acc = first.clone();
    for p in rest {
        if p.dim != acc.dim {
            return Err(Error::DimensionMismatch { expected: acc.dim, found: p.dim });
        }
        let sums: Vec<IVec> = acc.vertices.iter().flat_map(|u| p.vertices.iter().map(move |v| add(u, v))).collect();
        acc = LatticePolytope::hull(acc.dim, &sums)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeInvariants {
    pub f_vector: Vec<usize>,
    pub lattice_points: usize,
    pub reflexive: bool,
    pub polar: Option<LatticePolytope>,
}

pub fn polytope_invariants(p: &LatticePolytope) -> Result<PolytopeInvariants> {
    Ok(PolytopeInvariants {
        f_vector: p.f_vector(),
        lattice_points: p.lattice_points()?.len(),
        reflexive: p.is_reflexive(),
        polar: p.polar(),
    })
}

/// `Σ_{i=−1}^{k} (−1)^i f_i`, which vanishes for every polytope.
pub fn euler_characteristic(fv: &[usize]) -> i64 {
    fv.iter().enumerate().fold(-1, |s, (i, &f)| if i % 2 == 0 { s + f as i64 } else { s - f as i64 })
}
