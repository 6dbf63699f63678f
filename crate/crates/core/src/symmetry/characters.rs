//! The character group `(M′/M)*`, enumerated through the closed solution of
//! the relations `μ_k λ_p λ_{τ_k(p)} = λ_{−τ_i(p)} λ_{−τ_j(p)}`.
//!
//! All characters take values in `μ_e`, `e` the exponent of `M′/M`, so they
//! are stored as exponents of `ζ_e`.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::deform::{ij, weight_matrix};
use crate::error::{Error, Result};
use crate::exactlinalg::{snf, IntMatrix};
use crate::par;
use crate::torus::{GammaPresentation, Triangulation};

/// `q(x,y) = ½((x−y)² − (x+y))`.
pub fn q(x: i64, y: i64) -> i64 {
    ((x - y) * (x - y) - (x + y)) / 2
}

/// The relation matrix of `μ₁, μ₂, μ₃`: columns are exponent vectors of
/// `μ₂^a`, `μ₃^a`, `μ₁^c μ₂^{b+c}`, `μ₂^{b+c} μ₃^b`.
pub fn z3_matrix(g: &GammaPresentation) -> IntMatrix {
    let (a, b, c) = (g.a, g.b, g.c);
    IntMatrix::from_rows(&[vec![0, 0, c, 0], vec![a, 0, b + c, b + c], vec![0, a, 0, b]])
}

/// All exponent vectors `v ∈ ℤ_m³` with `v·z ≡ 0 mod m` for every column
/// `z` of `rel`, enumerated through the Smith form. Every invariant factor
/// must divide `m`.
pub fn dual_group_elements(rel: &IntMatrix, m: i64) -> Result<Vec<[i64; 3]>> {
    let s = snf(rel);
    let divs: Vec<i64> = (0..3)
        .map(|i| s.divisors.get(i).and_then(|d| d.to_i64()).unwrap_or(0))
        .collect();
    if divs.iter().any(|&d| d == 0 || m % d != 0) {
        return Err(Error::Invalid(format!("invariant factors {divs:?} do not divide {m}")));
    }
    // v = Σ j_i (m/D_i)·(row i of U)
    let u: Vec<Vec<i64>> = (0..3)
        .map(|i| (0..3).map(|k| s.u[(i, k)].to_i64().expect("small transform")).collect())
        .collect();
    let mut out = Vec::new();
    for j0 in 0..divs[0] {
        for j1 in 0..divs[1] {
            for j2 in 0..divs[2] {
                let js = [j0, j1, j2];
                let mut v = [0i64; 3];
                for i in 0..3 {
                    for k in 0..3 {
                        v[k] += js[i] * (m / divs[i]) * u[i][k];
                    }
                }
                out.push(v.map(|x| x.rem_euclid(m)));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Exponents of `λ_0, λ_{τ₁(0)}, λ_{τ₂(0)}, λ_{τ₃(0)}` and `μ₁, μ₂, μ₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionData {
    pub l: [i64; 4],
    pub mu: [i64; 3],
    pub modulus: i64,
}

impl SolutionData {
    /// `λ_p` for `p = ατ₁(0) + βτ₂(0) + γτ₃(0)` in the plane.
    pub fn lambda(&self, alpha: i64, beta: i64, gamma: i64) -> i64 {
        let [l0, l1, l2, l3] = self.l;
        let [m1, m2, m3] = self.mu;
        ((1 - alpha - beta - gamma) * l0
            + alpha * l1
            + beta * l2
            + gamma * l3
            + q(beta, gamma) * m1
            + q(alpha, gamma) * m2
            + q(alpha, beta) * m3)
            .rem_euclid(self.modulus)
    }

    /// `λ₀³ = λ₁λ₂λ₃ / (μ₁μ₂μ₃)`.
    pub fn condition_holds(&self) -> bool {
        let [l0, l1, l2, l3] = self.l;
        (3 * l0 - l1 - l2 - l3 + self.mu.iter().sum::<i64>()).rem_euclid(self.modulus) == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub mu: [i64; 3],
    /// `λ_p` for each vertex, with `λ_0 = 1`.
    pub lambda: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterGroup {
    pub n: usize,
    pub d: i64,
    /// Exponent of `M′/M`; values are powers of `ζ_modulus`.
    pub modulus: i64,
    pub elements: Vec<Character>,
}

/// Plane coordinates `(α, β, γ)` of a vertex: `(x, y) = xτ₁ − yτ₃`.
fn plane_coords(t: &Triangulation, p: usize) -> (i64, i64, i64) {
    let (x, y) = t.group.coords(p);
    (x, 0, -y)
}

/// Enumerates `(M′/M)*`. Fails when `n²d` exceeds `guard`.
pub fn character_group(t: &Triangulation, guard: usize) -> Result<CharacterGroup> {
    let g = t.pres();
    let n = t.n();
    let d = g.d();
    let size = n * n * d as usize;
    if size > guard {
        return Err(Error::GuardExceeded { nodes: size });
    }
    let w = weight_matrix(t);
    let e = snf(&w.a)
        .divisors
        .iter()
        .filter(|x| !x.is_zero())
        .max()
        .and_then(|x| x.to_i64())
        .ok_or(Error::Overflow("exponent of M'/M"))?;
    let mus = dual_group_elements(&z3_matrix(&g), e)?;
    // generators of Γ in (α, β, γ): r₁ = aτ₁, r₂ = bτ₁ − cτ₃
    let r = [(g.a, 0, 0), (g.b, 0, -g.c)];
    let mcon = |mu: &[i64; 3]| {
        r.iter().all(|&(a1, a2, a3)| {
            [(1, -1, 0), (0, -1, 1)].iter().all(|&(ca, cb, cc)| {
                (mu[0] * ca * (a2 - a3) + mu[1] * cb * (a3 - a1) + mu[2] * cc * (a1 - a2)).rem_euclid(e) == 0
            })
        })
    };
    let mut elements: Vec<Character> = par::flat_map(&mus, |mu| {
        if !mcon(mu) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for l1 in 0..e {
            for l2 in 0..e {
                let l3 = (mu.iter().sum::<i64>() - l1 - l2).rem_euclid(e);
                let s = SolutionData { l: [0, l1, l2, l3], mu: *mu, modulus: e };
                debug_assert!(s.condition_holds());
                if r.iter().all(|&(a1, a2, a3)| s.lambda(a1, a2, a3) == 0) {
                    let lambda = (0..n)
                        .map(|p| {
                            let (a1, a2, a3) = plane_coords(t, p);
                            s.lambda(a1, a2, a3)
                        })
                        .collect();
                    out.push(Character { mu: *mu, lambda });
                }
            }
        }
        out
    });
    elements.sort();
    Ok(CharacterGroup { n, d, modulus: e, elements })
}

impl CharacterGroup {
    /// Every element satisfies the defining relation on every column of `A`.
    pub fn relations_hold(&self, t: &Triangulation) -> bool {
        let g = &t.group;
        let e = self.modulus;
        self.elements.iter().all(|ch| {
            (0..self.n).all(|p| {
                (1..=3).all(|k| {
                    let (i, j) = ij(k);
                    let v = ch.mu[k - 1] + ch.lambda[p] + ch.lambda[g.step(p, k)]
                        - ch.lambda[g.back(p, i)]
                        - ch.lambda[g.back(p, j)];
                    v.rem_euclid(e) == 0
                })
            })
        })
    }

    pub fn all_distinct(&self) -> bool {
        self.elements.iter().collect::<BTreeSet<_>>().len() == self.elements.len()
    }

    /// Projection to `(μ₁, μ₂, μ₃)`: sizes of image and kernel, and whether
    /// the kernel consists of the characters of `G`.
    pub fn extension(&self, t: &Triangulation) -> ExtensionReport {
        let image: BTreeSet<[i64; 3]> = self.elements.iter().map(|c| c.mu).collect();
        let kernel: Vec<&Character> = self.elements.iter().filter(|c| c.mu == [0, 0, 0]).collect();
        let g = &t.group;
        let homs = kernel.iter().all(|c| {
            (0..self.n).all(|p| {
                (0..self.n).all(|q| c.lambda[g.add(p, q)] == (c.lambda[p] + c.lambda[q]).rem_euclid(self.modulus))
            })
        });
        ExtensionReport {
            image_size: image.len(),
            kernel_size: kernel.len(),
            kernel_is_dual_group: homs && kernel.len() == self.n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub image_size: usize,
    pub kernel_size: usize,
    pub kernel_is_dual_group: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::build;

    #[test]
    fn q_values() {
        assert_eq!(q(0, 0), 0);
        assert_eq!(q(1, 0), 0);
        assert_eq!(q(0, 1), 0);
        assert_eq!(q(2, 0), 1);
        assert_eq!(q(1, 1), -1);
    }

    #[test]
    fn t7_characters() {
        let t = build(&GammaPresentation::new(7, 2, 1).unwrap());
        let cg = character_group(&t, 100_000).unwrap();
        assert_eq!(cg.elements.len(), 49);
        assert!(cg.relations_hold(&t));
        let ext = cg.extension(&t);
        assert_eq!((ext.image_size, ext.kernel_size), (7, 7));
        assert!(ext.kernel_is_dual_group);
    }

    #[test]
    fn guard_trips() {
        let t = build(&GammaPresentation::new(7, 2, 1).unwrap());
        assert_eq!(character_group(&t, 10), Err(Error::GuardExceeded { nodes: 49 }));
    }
}
