mod common;

use common::*;
use equivelar::deform::*;
use equivelar::polyhedra::polyhedral_presentations;
use equivelar::torus::{build, GammaPresentation, Triangulation};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

fn tri(a: i64, b: i64, c: i64) -> Triangulation {
    build(&GammaPresentation::new(a, b, c).unwrap())
}

fn exponent_rows(v: &VersalIdeal) -> Vec<Vec<i64>> {
    v.binomials.iter().map(Binomial::exponent).collect()
}

fn a_rows(w: &WeightMatrixData) -> Vec<Vec<i64>> {
    (0..w.a.rows()).map(|i| (0..w.a.cols()).map(|j| w.a[(i, j)].to_i64().unwrap()).collect()).collect()
}

#[test]
fn seven_vertex_numbers() {
    let t = tri(7, 2, 1);
    let v = versal_ideal(&t);
    let l = exponent_lattice(&v);
    let w = weight_matrix(&t);
    assert_eq!(l.summary.rank, 12);
    assert_eq!(rank_mod_p(&exponent_rows(&v)), 12);
    assert_eq!(w.rank, 9);
    assert_eq!(rank_mod_p(&a_rows(&w)), 9);
    assert_eq!(l.summary.index(), BigInt::from(1));
    assert_eq!(w.index_in_mprime(), BigInt::from(49));
}

#[test]
fn three_zero_three_numbers() {
    let t = tri(3, 0, 3);
    assert_eq!(main_component_count(&t), 3);
    assert_eq!(weight_matrix(&t).index_in_mprime(), BigInt::from(243));
    assert_eq!(exponent_lattice(&versal_ideal(&t)).summary.index(), BigInt::from(3));
}

#[test]
fn formula_and_smith_routes_agree() {
    for g in polyhedral_presentations(14) {
        let t = build(&g);
        let n = t.n();
        let d = gcd3(g.a, g.b, g.c);
        let v = versal_ideal(&t);
        let l = exponent_lattice(&v);
        let w = weight_matrix(&t);
        assert_eq!(l.summary.rank, 2 * n - 2, "{g}");
        assert_eq!(w.rank, n + 2, "{g}");
        assert_eq!(l.summary.index(), BigInt::from(d), "{g}");
        let expect = BigInt::from(n * n) * d;
        assert_eq!(w.index_in_mprime(), expect, "{g}");
        assert_eq!(w.index_in_mprime_by_coordinates(), expect, "{g}");
        assert_eq!(main_component_count(&t), d as usize);
        assert!(orbit_column_sums_hold(&t, &w), "{g}");
    }
}

#[test]
fn binomials_are_homogeneous_for_the_weights() {
    for (a, b, c) in [(7, 2, 1), (3, 0, 3), (8, 2, 1), (4, 1, 3)] {
        let t = tri(a, b, c);
        let v = versal_ideal(&t);
        let a_mat = a_rows(&weight_matrix(&t));
        for bin in &v.binomials {
            let e = bin.exponent();
            assert!(a_mat.iter().all(|row| row.iter().zip(&e).map(|(x, y)| x * y).sum::<i64>() == 0));
            // quadratic on both sides with disjoint supports
            assert_eq!(bin.plus.iter().sum::<i64>(), 2);
            assert_eq!(bin.minus.iter().sum::<i64>(), 2);
            assert!(bin.plus.iter().zip(&bin.minus).all(|(x, y)| x * y == 0));
        }
        // every variable occurs, each in exactly four binomials
        let mut count = vec![0; v.nvars];
        for bin in &v.binomials {
            for (i, (x, y)) in bin.plus.iter().zip(&bin.minus).enumerate() {
                count[i] += x + y;
            }
        }
        assert!(count.iter().all(|&c| c == 4), "({a},{b},{c}) {count:?}");
    }
}

#[test]
fn unit_fibre_samples() {
    let t = tri(7, 2, 1);
    let v = versal_ideal(&t);
    let chart = local_chart(&t, 0);
    let s = sample_unit_fiber(&chart, &v, 6, 11).unwrap();
    assert_eq!(s, sample_unit_fiber(&chart, &v, 6, 11).unwrap());
    for (i, x) in s.iter().enumerate() {
        assert_eq!(x.on_fiber, i % 2 == 0);
    }
}

#[test]
fn first_order_basis() {
    let t = tri(7, 2, 1);
    let basis = t1_basis(&t);
    assert_eq!(basis.len(), 21);
    // one perturbation per edge parameter, in variable order
    for (i, phi) in basis.iter().enumerate() {
        let e = EdgeParam::from_index(i, 7);
        assert_eq!(e.index(7), i);
        assert_ne!(phi.divisor[0], phi.divisor[1]);
    }
}
