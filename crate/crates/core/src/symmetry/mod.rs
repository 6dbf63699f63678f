//! Group actions attached to a triangulated torus: translations and
//! characters on coordinates, the Heisenberg group and its Schrödinger
//! representation, the character group `(M′/M)*` and the quotient `ℂ³/Ḡ*`.

mod action;
mod characters;
mod cyclotomic;
mod heisenberg;
mod mbar;

pub use action::{
    action_invariance, character_action, character_exponent, heisenberg_generators, translation_action, CycPoly,
    MonomialAction,
};
pub use characters::{
    character_group, dual_group_elements, q, z3_matrix, Character, CharacterGroup, ExtensionReport, SolutionData,
};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicElt};
pub use heisenberg::{mat_mul, scalar, schrodinger_rep, CycMatrix, HeisenbergElt, HeisenbergGroup};
pub use mbar::{age_numerator, cyclic_presentation, mbar_analysis, CyclicAction, MbarAnalysis};

use num_bigint::BigInt;

use crate::deform::EdgeParam;
use crate::exactlinalg::{kernel_basis, IntMatrix};
use crate::torus::Triangulation;

/// The Heisenberg group `H_T ≅ H_{(d, n/d)}`.
pub fn heisenberg_group(t: &Triangulation) -> HeisenbergGroup {
    let (d, e) = t.group.divisors;
    HeisenbergGroup::new(d, e).expect("d divides n/d")
}

/// Fixed vectors of the translation action on the `3n` edge parameters,
/// as columns of a lattice basis.
pub fn invariant_parameters(t: &Triangulation) -> IntMatrix {
    let n = t.n();
    let g = &t.group;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for k in 1..=3 {
        let shift = g.tau[k - 1];
        // (P − I)x = 0 where P moves parameter (p, j) to (p + shift, j)
        for i in 0..3 * n {
            let e = EdgeParam::from_index(i, n);
            let moved = EdgeParam { p: g.add(e.p, shift), k: e.k }.index(n);
            let mut row = vec![0i64; 3 * n];
            row[moved] += 1;
            row[i] -= 1;
            rows.push(row);
        }
    }
    kernel_basis(&IntMatrix::from_rows(&rows))
}

/// The three type indicators `t_{p,τ_k(p)} = 1` for all `p`.
pub fn type_indicators(n: usize) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = (1..=3)
        .map(|k| (0..3 * n).map(|i| BigInt::from(i64::from(EdgeParam::from_index(i, n).k == k))).collect())
        .collect();
    IntMatrix::from_big_columns(3 * n, &cols)
}
