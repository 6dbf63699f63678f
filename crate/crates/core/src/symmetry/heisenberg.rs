//! Finite Heisenberg groups `H_δ` and their Schrödinger representation.

use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicElt;
use crate::error::{Error, Result};

/// `(ω, τ, σ)` with `ω = ζ_{d₂}^w`, `τ ∈ ℤ_{d₁} ⊕ ℤ_{d₂}` and `σ` the
/// character `τ′ ↦ ζ_{d₁}^{s₁τ′₁} ζ_{d₂}^{s₂τ′₂}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElt {
    pub w: i64,
    pub tau: [i64; 2],
    pub sigma: [i64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergGroup {
    pub d1: i64,
    pub d2: i64,
}

pub type CycMatrix = Vec<Vec<CyclotomicElt>>;

impl HeisenbergGroup {
    pub fn new(d1: i64, d2: i64) -> Result<Self> {
        if d1 < 1 || d2 < 1 || d2 % d1 != 0 {
            return Err(Error::Invalid(format!("need d1 | d2, got ({d1},{d2})")));
        }
        Ok(HeisenbergGroup { d1, d2 })
    }

    /// `|μ_{d₂}|·|K(δ)|·|K(δ)*|`.
    pub fn order(&self) -> i64 {
        self.d2 * (self.d1 * self.d2) * (self.d1 * self.d2)
    }

    pub fn dim(&self) -> usize {
        (self.d1 * self.d2) as usize
    }

    fn reduce(&self, g: HeisenbergElt) -> HeisenbergElt {
        HeisenbergElt {
            w: g.w.rem_euclid(self.d2),
            tau: [g.tau[0].rem_euclid(self.d1), g.tau[1].rem_euclid(self.d2)],
            sigma: [g.sigma[0].rem_euclid(self.d1), g.sigma[1].rem_euclid(self.d2)],
        }
    }

    /// Exponent `e` with `σ(τ) = ζ_{d₂}^e`.
    pub fn pairing(&self, sigma: [i64; 2], tau: [i64; 2]) -> i64 {
        ((self.d2 / self.d1) * sigma[0] * tau[0] + sigma[1] * tau[1]).rem_euclid(self.d2)
    }

    /// `(ω,τ,σ)(ω′,τ′,σ′) = (ωω′σ′(τ), τ+τ′, σσ′)`.
    pub fn mul(&self, g: HeisenbergElt, h: HeisenbergElt) -> HeisenbergElt {
        self.reduce(HeisenbergElt {
            w: g.w + h.w + self.pairing(h.sigma, g.tau),
            tau: [g.tau[0] + h.tau[0], g.tau[1] + h.tau[1]],
            sigma: [g.sigma[0] + h.sigma[0], g.sigma[1] + h.sigma[1]],
        })
    }

    pub fn identity(&self) -> HeisenbergElt {
        HeisenbergElt { w: 0, tau: [0, 0], sigma: [0, 0] }
    }

    pub fn inverse(&self, g: HeisenbergElt) -> HeisenbergElt {
        // (ω,τ,σ)(ω′,−τ,σ⁻¹) = (ωω′σ⁻¹(τ), 0, 1)
        let w = -g.w + self.pairing(g.sigma, g.tau);
        self.reduce(HeisenbergElt { w, tau: [-g.tau[0], -g.tau[1]], sigma: [-g.sigma[0], -g.sigma[1]] })
    }

    pub fn commutator(&self, g: HeisenbergElt, h: HeisenbergElt) -> HeisenbergElt {
        let gh = self.mul(g, h);
        self.mul(self.mul(gh, self.inverse(g)), self.inverse(h))
    }

    /// Center generator, unit translations and unit characters.
    pub fn generators(&self) -> Vec<HeisenbergElt> {
        let e = self.identity();
        let mut out = vec![HeisenbergElt { w: 1, ..e }];
        if self.d1 > 1 {
            out.push(HeisenbergElt { tau: [1, 0], ..e });
        }
        out.push(HeisenbergElt { tau: [0, 1], ..e });
        if self.d1 > 1 {
            out.push(HeisenbergElt { sigma: [1, 0], ..e });
        }
        out.push(HeisenbergElt { sigma: [0, 1], ..e });
        out
    }

    fn index(&self, tau: [i64; 2]) -> usize {
        (tau[0].rem_euclid(self.d1) + self.d1 * tau[1].rem_euclid(self.d2)) as usize
    }

    /// Matrix of `g` on functions on `K(δ)`, in the basis of point masses:
    /// `(g·f)(τ′) = ω·σ(τ′)·f(τ + τ′)`.
    pub fn schrodinger(&self, g: HeisenbergElt) -> CycMatrix {
        let n = self.dim();
        let order = self.d2 as u32;
        let mut m = vec![vec![CyclotomicElt::zero(order); n]; n];
        for t1 in 0..self.d1 {
            for t2 in 0..self.d2 {
                let row = self.index([t1, t2]);
                let col = self.index([g.tau[0] + t1, g.tau[1] + t2]);
                m[row][col] = CyclotomicElt::zeta(order, g.w + self.pairing(g.sigma, [t1, t2]));
            }
        }
        m
    }

    /// Checks `R(g)R(h) = R(gh)` on all pairs of generators and products of
    /// pairs, and that the center acts by its natural character.
    pub fn verify_representation(&self) -> bool {
        let gens = self.generators();
        let mut elts = gens.clone();
        for &g in &gens {
            for &h in &gens {
                elts.push(self.mul(g, h));
            }
        }
        let hom = elts.iter().all(|&g| {
            elts.iter()
                .all(|&h| mat_mul(&self.schrodinger(g), &self.schrodinger(h)) == self.schrodinger(self.mul(g, h)))
        });
        let central = (0..self.d2).all(|w| {
            let c = HeisenbergElt { w, ..self.identity() };
            self.schrodinger(c) == scalar(self.dim(), &CyclotomicElt::zeta(self.d2 as u32, w))
        });
        hom && central
    }
}

pub fn mat_mul(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let n = a.len();
    let m = b[0].len();
    let order = a[0][0].n;
    let mut out = vec![vec![CyclotomicElt::zero(order); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn scalar(n: usize, c: &CyclotomicElt) -> CycMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { c.clone() } else { CyclotomicElt::zero(c.n) }).collect())
        .collect()
}

/// Generator matrices of the Schrödinger representation of `H_δ`.
pub fn schrodinger_rep(d1: i64, d2: i64) -> Result<Vec<(HeisenbergElt, CycMatrix)>> {
    let h = HeisenbergGroup::new(d1, d2)?;
    Ok(h.generators().into_iter().map(|g| (g, h.schrodinger(g))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_seven() {
        let h = HeisenbergGroup::new(1, 7).unwrap();
        assert_eq!(h.order(), 7 * 49);
        let shift = HeisenbergElt { w: 0, tau: [0, 1], sigma: [0, 0] };
        let chi = HeisenbergElt { w: 0, tau: [0, 0], sigma: [0, 1] };
        let t = h.schrodinger(shift);
        // (T f)(j) = f(j+1): a cyclic permutation matrix
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(t[i][j].is_one(), j == (i + 1) % 7);
            }
        }
        let s = h.schrodinger(chi);
        for i in 0..7 {
            assert_eq!(s[i][i], CyclotomicElt::zeta(7, i as i64));
        }
        let c = h.commutator(shift, chi);
        assert_eq!(c, HeisenbergElt { w: 1, tau: [0, 0], sigma: [0, 0] });
        let inv_t = h.schrodinger(h.inverse(shift));
        let inv_s = h.schrodinger(h.inverse(chi));
        let m = mat_mul(&mat_mul(&mat_mul(&t, &s), &inv_t), &inv_s);
        assert_eq!(m, scalar(7, &CyclotomicElt::zeta(7, 1)));
        assert!(h.verify_representation());
    }

    #[test]
    fn two_four() {
        let h = HeisenbergGroup::new(2, 4).unwrap();
        assert_eq!(h.dim(), 8);
        assert!(h.verify_representation());
        assert!(HeisenbergGroup::new(3, 4).is_err());
    }
}
