//! The quotient `ℂ³/Ḡ*` with `Ḡ = ℤ³/M̄` the cokernel of the relation matrix.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::characters::{dual_group_elements, z3_matrix};
use crate::exactlinalg::{snf, IntMatrix};
use crate::torus::{dihedral_group, is_chiral, mat_mul, standard_form, GammaPresentation};

/// The generator `diag(ζ_n^{b(b+1)}, ζ_n^{−b}, ζ_n^{b+1})` of the cyclic case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicAction {
    pub n: i64,
    pub b: i64,
    pub exponents: [i64; 3],
}

impl CyclicAction {
    pub fn new(n: i64, b: i64) -> Self {
        CyclicAction { n, b, exponents: [b * (b + 1), -b, b + 1].map(|x| x.rem_euclid(n)) }
    }

    /// `gcd(n, b) = gcd(n, b+1) = 1`.
    pub fn isolated_by_formula(&self) -> bool {
        self.n.gcd(&self.b) == 1 && self.n.gcd(&(self.b + 1)) == 1
    }

    /// `1 + b + b² ≡ 0 mod n`.
    pub fn gorenstein_by_formula(&self) -> bool {
        (1 + self.b + self.b * self.b).rem_euclid(self.n) == 0
    }

    pub fn group(&self) -> Vec<[i64; 3]> {
        let mut v: Vec<[i64; 3]> =
            (0..self.n).map(|j| self.exponents.map(|e| (j * e).rem_euclid(self.n))).collect();
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MbarAnalysis {
    pub presentation: GammaPresentation,
    pub z3_matrix: IntMatrix,
    pub divisors: Vec<i64>,
    /// Elements of `Ḡ*` as exponent triples of `ζ_n`.
    pub group: Vec<[i64; 3]>,
    pub cyclic_action: Option<CyclicAction>,
    pub isolated: bool,
    pub gorenstein_quotient: bool,
    pub canonical: bool,
    pub chiral: bool,
}

/// A presentation `(n, b, 1)` of an isomorphic lattice with least `b`, if
/// some principal translation generates `G`.
pub fn cyclic_presentation(g: &GammaPresentation) -> Option<GammaPresentation> {
    if g.c == 1 {
        return Some(*g);
    }
    dihedral_group()
        .iter()
        .filter_map(|p| standard_form(&mat_mul(p, &g.mat())).ok())
        .filter(|h| h.c == 1)
        .min_by_key(|h| h.b)
}

/// `age(v) = Σ (v_i mod n) / n`, returned as the numerator.
pub fn age_numerator(v: &[i64; 3], n: i64) -> i64 {
    v.iter().map(|x| x.rem_euclid(n)).sum()
}

pub fn mbar_analysis(g: &GammaPresentation) -> MbarAnalysis {
    let n = g.n() as i64;
    let z3 = z3_matrix(g);
    let divisors: Vec<i64> = snf(&z3).divisors.iter().map(|d| d.to_i64().expect("small divisor")).collect();
    let group = dual_group_elements(&z3, n).expect("invariant factors divide n");
    let nontrivial = group.iter().filter(|v| **v != [0, 0, 0]);
    let isolated = nontrivial.clone().all(|v| v.iter().all(|&x| x != 0));
    let gorenstein_quotient = group.iter().all(|v| v.iter().sum::<i64>() % n == 0);
    // Reid–Tai: canonical iff every nontrivial element has age ≥ 1
    let canonical = nontrivial.clone().all(|v| age_numerator(v, n) >= n);
    let cyclic_action = cyclic_presentation(g).map(|h| CyclicAction::new(n, h.b));
    MbarAnalysis {
        presentation: *g,
        z3_matrix: z3,
        divisors,
        group,
        cyclic_action,
        isolated,
        gorenstein_quotient,
        canonical,
        chiral: is_chiral(g),
    }
}

impl MbarAnalysis {
    /// Whether the cyclic generator, when defined, generates the enumerated
    /// group up to a permutation of the three coordinates.
    pub fn cyclic_generator_matches(&self) -> Option<bool> {
        let c = self.cyclic_action?;
        let sorted = |s: &[[i64; 3]]| -> BTreeSet<[i64; 3]> {
            s.iter()
                .map(|v| {
                    let mut w = *v;
                    w.sort();
                    w
                })
                .collect()
        };
        Some(sorted(&c.group()) == sorted(&self.group) && c.group().len() == self.group.len())
    }
}
