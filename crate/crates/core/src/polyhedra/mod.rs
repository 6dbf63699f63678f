//! Cones and lattice polytopes: duality, Gorenstein and reflexive
//! certificates, Cayley splittings, Minkowski sums and face lattices.

mod cayley;
mod cone;
mod dd;
mod polytope;
mod vecops;

pub use cayley::{cayley_split, cayley_split_with_basis, CayleySplit};
pub use cone::{
    dual_cone, is_gorenstein, is_reflexive, restrict_functional, sigma_dual, to_ambient, verify_rays,
    Cone, GorensteinCertificate, RayCertificate, ReflexiveCertificate,
};
pub use dd::extreme_rays_of_inequalities;
pub use polytope::{
    euler_characteristic, minkowski_sum, polytope_invariants, simplex_normalized_volume, LatticePolytope,
    PolytopeInvariants,
};
pub use vecops::IVec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::deform::weight_matrix;
use crate::error::Result;
use crate::exactlinalg::{snf, IntMatrix, SmithDecomposition};
use crate::torus::{build, canonical_form, GammaPresentation};

/// Integer coordinates with respect to a fixed lattice basis, reusing one
/// Smith decomposition for many right-hand sides.
pub struct Coordinates {
    cols: usize,
    snf: SmithDecomposition,
}

impl Coordinates {
    pub fn new(basis: &IntMatrix) -> Self {
        Coordinates { cols: basis.cols(), snf: snf(basis) }
    }

    pub fn of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let ub = self.snf.u.mul_vec(v);
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, x) in ub.iter().enumerate() {
            let d = self.snf.divisors.get(i).cloned().unwrap_or_default();
            if d.is_zero() {
                if !x.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = x.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn of_i64(&self, v: &[i64]) -> Result<Option<IVec>> {
        match self.of(&vecops::to_big(v)) {
            Some(x) => vecops::from_big(&x).map(Some),
            None => Ok(None),
        }
    }
}

/// Canonical presentations of all polyhedral triangulations with
/// `7 ≤ n ≤ max_n`, one per isomorphism class.
pub fn polyhedral_presentations(max_n: usize) -> Vec<GammaPresentation> {
    let mut out: Vec<GammaPresentation> = Vec::new();
    for n in 7..=max_n as i64 {
        for a in (1..=n).filter(|a| n % a == 0) {
            let c = n / a;
            for b in 0..a {
                let g = GammaPresentation::new(a, b, c).expect("valid range");
                let canon = canonical_form(&g.mat()).expect("nonsingular");
                if !out.contains(&canon) && build(&canon).polyhedral {
                    out.push(canon);
                }
            }
        }
    }
    out
}

/// One line of a reflexivity scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexivityEntry {
    pub presentation: GammaPresentation,
    pub gorenstein: bool,
    pub reflexive_index: Option<i64>,
}

/// Whether `σ∨` is Gorenstein and reflexive for every polyhedral
/// triangulation up to `max_n` vertices. No completeness claim beyond the
/// scanned range is made.
pub fn reflexivity_scan(max_n: usize) -> Result<Vec<ReflexivityEntry>> {
    let pres = polyhedral_presentations(max_n);
    crate::par::map(&pres, |g| {
        let t = build(g);
        let c = sigma_dual(&weight_matrix(&t))?;
        Ok(ReflexivityEntry {
            presentation: *g,
            gorenstein: is_gorenstein(&c).is_some(),
            reflexive_index: is_reflexive(&c).map(|r| r.index),
        })
    })
    .into_iter()
    .collect()
}
