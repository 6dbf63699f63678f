//! Rational polyhedral cones in `ℤ^d` with ray and facet descriptions.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::dd::extreme_rays_of_inequalities;
use super::vecops::{dot, from_big, primitive64, rank, IVec};
use crate::deform::WeightMatrixData;
use crate::error::{Error, Result};
use super::Coordinates;
use crate::exactlinalg::{solve_integer, IntMatrix};

/// A full-dimensional cone in `ℤ^dim`. When `basis` is present its columns
/// identify `ℤ^dim` with a sublattice of a larger ambient lattice.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cone {
    pub dim: usize,
    pub rays: Vec<IVec>,
    pub basis: Option<IntMatrix>,
    #[serde(skip)]
    facets: OnceLock<Vec<IVec>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.sorted_rays() == other.sorted_rays()
    }
}

impl Cone {
    /// Positive hull of `gens`, reduced to primitive extreme rays.
    pub fn from_generators(dim: usize, gens: &[IVec]) -> Result<Cone> {
        let mut g: Vec<IVec> = gens.iter().filter(|v| v.iter().any(|&x| x != 0)).map(|v| primitive64(v)).collect();
        g.sort();
        g.dedup();
        let facets = extreme_rays_of_inequalities(&g, dim)?;
        if rank(&facets) < dim {
            return Err(Error::ConeHasLineality);
        }
        let rays = g
            .into_iter()
            .filter(|v| {
                let tight: Vec<IVec> = facets.iter().filter(|f| dot(f, v) == 0).cloned().collect();
                rank(&tight) == dim - 1
            })
            .collect();
        let cone = Cone { dim, rays, basis: None, facets: OnceLock::new() };
        let _ = cone.facets.set(facets);
        Ok(cone)
    }

    pub fn with_basis(mut self, basis: IntMatrix) -> Self {
        self.basis = Some(basis);
        self
    }

    /// Primitive inner facet normals.
    pub fn facets(&self) -> &[IVec] {
        self.facets.get_or_init(|| extreme_rays_of_inequalities(&self.rays, self.dim).expect("full-dimensional cone"))
    }

    pub fn sorted_rays(&self) -> Vec<IVec> {
        let mut r = self.rays.clone();
        r.sort();
        r
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.facets().iter().all(|f| dot(f, v) >= 0)
    }

    pub fn positive_octant(dim: usize) -> Cone {
        let gens: Vec<IVec> = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
        Cone::from_generators(dim, &gens).expect("octant is full-dimensional")
    }
}

/// The dual cone in the dual lattice.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    let facets = c.facets().to_vec();
    let rays_of_c = c.rays.clone();
    let dual = Cone { dim: c.dim, rays: facets, basis: None, facets: OnceLock::new() };
    // facets of the dual are the extreme rays of c
    let _ = dual.facets.set(rays_of_c);
    Ok(dual)
}

/// Certificate `n_σ` with `⟨v, n_σ⟩ = 1` on every primitive ray generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinCertificate {
    pub n_sigma: IVec,
}

pub fn is_gorenstein(c: &Cone) -> Option<GorensteinCertificate> {
    let m = IntMatrix::from_rows(&c.rays);
    let ones = vec![BigInt::one(); c.rays.len()];
    let x = solve_integer(&m, &ones)?;
    Some(GorensteinCertificate { n_sigma: from_big(&x).ok()? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexiveCertificate {
    pub n_sigma: IVec,
    pub m_sigma_dual: IVec,
    pub index: i64,
}

/// Gorenstein certificates for the cone and its dual, and their pairing.
pub fn is_reflexive(c: &Cone) -> Option<ReflexiveCertificate> {
    let n = is_gorenstein(c)?;
    let d = dual_cone(c).ok()?;
    let m = is_gorenstein(&d)?;
    let index = dot(&n.n_sigma, &m.n_sigma).to_i64()?;
    Some(ReflexiveCertificate { n_sigma: n.n_sigma, m_sigma_dual: m.n_sigma, index })
}

/// Certificate for one column of `A`: the dual vector `u` and the range of
/// its pairings with all columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayCertificate {
    pub column: usize,
    pub u: IVec,
    pub min_pairing: i64,
    pub max_pairing: i64,
}

/// Checks that each column of `A` spans an extreme ray of `σ∨` and is
/// primitive in `M`, using `u_{p,τ_k(p)} = 2(ε₁*+ε₂*+ε₃*) − (e_p* + e_{τ_k(p)}*)`.
pub fn verify_rays(w: &WeightMatrixData, t: &crate::torus::Triangulation) -> Result<Vec<RayCertificate>> {
    let n = w.n;
    let cols: Vec<IVec> = (0..3 * n).map(|c| from_big(&w.a.column(c))).collect::<Result<_>>()?;
    let coords = Coordinates::new(&w.m_basis);
    let mut out = Vec::with_capacity(3 * n);
    for (ci, e) in t.edges.iter().enumerate() {
        let mut u = vec![0i64; n + 3];
        u[0] = 2;
        u[1] = 2;
        u[2] = 2;
        u[3 + e.p] -= 1;
        u[3 + e.q] -= 1;
        let vals: Vec<i128> = cols.iter().map(|c| dot(c, &u)).collect();
        let (lo, hi) = (*vals.iter().min().expect("columns"), *vals.iter().max().expect("columns"));
        if lo < 0 || hi > 4 {
            return Err(Error::RayCertificate { column: ci, reason: format!("pairing out of range [{lo}, {hi}]") });
        }
        let zeros: Vec<usize> = (0..vals.len()).filter(|&j| vals[j] == 0).collect();
        if zeros != [ci] {
            return Err(Error::RayCertificate { column: ci, reason: format!("vanishes on columns {zeros:?}") });
        }
        let x = coords
            .of(&w.a.column(ci))
            .ok_or_else(|| Error::RayCertificate { column: ci, reason: "not in M".into() })?;
        if !crate::exactlinalg::is_primitive(&x) {
            return Err(Error::RayCertificate { column: ci, reason: "not primitive in M".into() });
        }
        out.push(RayCertificate { column: ci, u, min_pairing: lo as i64, max_pairing: hi as i64 });
    }
    Ok(out)
}

/// `σ∨` in coordinates of the HNF basis of `M`, carrying that basis.
pub fn sigma_dual(w: &WeightMatrixData) -> Result<Cone> {
    let coords = Coordinates::new(&w.m_basis);
    let gens: Vec<IVec> = (0..w.a.cols())
        .map(|c| from_big(&coords.of(&w.a.column(c)).expect("column lies in M")))
        .collect::<Result<_>>()?;
    Ok(Cone::from_generators(w.rank, &gens)?.with_basis(w.m_basis.clone()))
}

/// Restriction of an ambient functional to the lattice spanned by `basis`.
pub fn restrict_functional(basis: &IntMatrix, u: &[i64]) -> Result<IVec> {
    (0..basis.cols())
        .map(|j| {
            let s: BigInt = (0..basis.rows()).map(|i| &basis[(i, j)] * BigInt::from(u[i])).sum();
            s.to_i64().ok_or(Error::Overflow("functional restriction"))
        })
        .collect()
}

/// Image of a lattice vector (in basis coordinates) in the ambient lattice.
pub fn to_ambient(basis: &IntMatrix, v: &[i64]) -> Result<IVec> {
    from_big(&basis.mul_vec(&super::vecops::to_big(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octant_self_dual() {
        let o = Cone::positive_octant(3);
        let d = dual_cone(&o).unwrap();
        assert_eq!(d, o);
        let r = is_reflexive(&o).unwrap();
        assert_eq!(r.n_sigma, vec![1, 1, 1]);
        assert_eq!(r.index, 3);
    }

    #[test]
    fn square_cone() {
        let g = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
        let c = Cone::from_generators(3, &g).unwrap();
        assert_eq!(c.facets().len(), 4);
        let dd = dual_cone(&dual_cone(&c).unwrap()).unwrap();
        assert_eq!(dd, c);
        assert_eq!(is_gorenstein(&c).unwrap().n_sigma, vec![0, 0, 1]);
    }

    #[test]
    fn redundant_generators_dropped() {
        let g = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 2]];
        let c = Cone::from_generators(2, &g).unwrap();
        assert_eq!(c.sorted_rays(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn lineality_rejected() {
        let g = vec![vec![1, 0], vec![-1, 0], vec![0, 1]];
        assert_eq!(Cone::from_generators(2, &g), Err(Error::ConeHasLineality));
    }
}
