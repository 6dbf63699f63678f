use equivelar::deform::weight_matrix;
use equivelar::exactlinalg::IntMatrix;
use equivelar::polyhedra::*;
use equivelar::torus::{build, GammaPresentation, Triangulation};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn t7() -> Triangulation {
    build(&GammaPresentation::new(7, 2, 1).unwrap())
}

fn columns_of(rows: [[i64; 7]; 6]) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = (0..7).map(|j| (0..6).map(|i| rows[i][j]).collect()).collect();
    v.sort();
    v
}

fn table_simplices() -> [Vec<Vec<i64>>; 3] {
    [
        columns_of([
            [0, 0, 0, 0, 0, 0, -1],
            [0, 1, 1, 1, 1, 1, 0],
            [0, 0, 1, 1, 1, 1, 0],
            [0, 0, 0, 1, 1, 1, 0],
            [0, 0, 0, 0, 1, 1, 0],
            [0, 0, 0, 0, 0, 1, 0],
        ]),
        columns_of([
            [0, 0, 0, -1, 0, 0, -1],
            [-1, 0, 0, -1, -1, 0, -1],
            [-1, -1, 0, -1, -1, -1, -1],
            [0, 0, 0, 0, 0, 0, -1],
            [-1, 0, 0, -1, 0, 0, -1],
            [-1, -1, 0, -1, -1, 0, -1],
        ]),
        columns_of([
            [1, 0, 1, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 0, -1],
            [0, 0, 1, 0, 1, 0, 0],
            [0, -1, 0, 0, 0, 0, -1],
            [0, 0, 0, 0, 1, 0, 0],
            [1, 0, 1, 0, 1, 1, 0],
        ]),
    ]
}

/// Lattice points by scanning the bounding box against the facet inequalities.
fn box_points(p: &LatticePolytope) -> usize {
    let d = p.dim;
    let ineq = p.facet_inequalities().expect("full-dimensional");
    let lo: Vec<i64> = (0..d).map(|i| p.vertices.iter().map(|v| v[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|i| p.vertices.iter().map(|v| v[i]).max().unwrap()).collect();
    let mut x = lo.clone();
    let mut count = 0;
    loop {
        if ineq.iter().all(|a| (0..d).map(|i| a[i] * x[i]).sum::<i64>() + a[d] >= 0) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return count;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

#[test]
fn t7_sigma_dual_and_dual() {
    let t = t7();
    let w = weight_matrix(&t);
    let c = sigma_dual(&w).unwrap();
    assert_eq!(c.rays.len(), 21);
    let dual = dual_cone(&c).unwrap();
    assert_eq!(dual.rays.len(), 24);
    assert_eq!(dual_cone(&dual).unwrap(), c);
    let certs = verify_rays(&w, &t).unwrap();
    assert_eq!(certs.len(), 21);
    assert!(certs.iter().all(|c| c.min_pairing == 0 && c.max_pairing <= 4));
}

#[test]
fn t7_reflexive_index_three() {
    let w = weight_matrix(&t7());
    let c = sigma_dual(&w).unwrap();
    let basis = c.basis.clone().unwrap();
    let eps = [1, 1, 1, 0, 0, 0, 0, 0, 0, 0];
    let g = is_gorenstein(&c).unwrap();
    assert_eq!(g.n_sigma, restrict_functional(&basis, &eps).unwrap());
    let r = is_reflexive(&c).unwrap();
    assert_eq!(r.index, 3);
    // the dual certificate is ε₁+ε₂+ε₃ as an element of M
    assert_eq!(to_ambient(&basis, &r.m_sigma_dual).unwrap(), eps.to_vec());
}

#[test]
fn t7_cayley_matches_table_in_its_basis() {
    let t = t7();
    let w = weight_matrix(&t);
    let s = cayley_split(&w, &t).unwrap();
    assert_eq!(s.r, 3);
    assert!(s.projection_is_cell_indicator());
    // E₁ = A_{0,τ₁}, E₂ = A_{τ₃,τ₂}, E₃ = A_{−τ₂,τ₃}, then m_0..m_5
    let g = &t.group;
    let reps = [t.edge_index(0, 1), t.edge_index(g.tau[2], 2), t.edge_index(g.neg(g.tau[1]), 3)];
    let mpp = IntMatrix::from_columns(10, &s.m_p[..6]);
    let s2 = cayley_split_with_basis(&w, &t, &reps, Some(mpp)).unwrap();
    for (p, expect) in s2.polytopes.iter().zip(table_simplices()) {
        assert_eq!(p.vertices, expect);
    }
    // the default HNF basis agrees up to a unimodular map
    for (p, expect) in s.polytopes.iter().zip(table_simplices()) {
        let q = LatticePolytope::hull(6, &expect).unwrap();
        assert_eq!(p.vertices.len(), 7);
        assert_eq!(p.normalized_volume_of_simplex().unwrap(), q.normalized_volume_of_simplex().unwrap());
        assert_eq!(p.f_vector(), q.f_vector());
        assert_eq!(p.lattice_points().unwrap().len(), q.lattice_points().unwrap().len());
    }
    let cc = s.cayley_cone().unwrap();
    assert_eq!(cc.sorted_rays(), {
        let mut v = s.columns.clone();
        v.sort();
        v
    });
}

#[test]
fn t7_minkowski_sum_invariants() {
    let t = t7();
    let w = weight_matrix(&t);
    let s = cayley_split(&w, &t).unwrap();
    let sum = minkowski_sum(&s.polytopes).unwrap();
    let m = s.coordinates(&[1, 1, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    assert_eq!(&m[..3], &[1, 1, 1]);
    let centre: Vec<i64> = m[3..].iter().map(|x| -x).collect();
    let delta = sum.translate(&centre);
    assert_eq!(s.centered_sum().unwrap(), delta);
    let inv = polytope_invariants(&delta).unwrap();
    assert_eq!(inv.f_vector, vec![112, 427, 630, 441, 147, 21, 1]);
    assert_eq!(euler_characteristic(&inv.f_vector), 0);
    assert_eq!(inv.lattice_points, 204);
    assert_eq!(box_points(&delta), 204);
    assert!(inv.reflexive);
    let polar = inv.polar.unwrap();
    assert_eq!(polar.vertices.len(), 21);
    assert_eq!(polar.lattice_points().unwrap().len(), 22);
    assert_eq!(box_points(&polar), 22);
    for f in delta.facet_f_vectors() {
        assert_eq!(f, vec![38, 111, 125, 64, 14, 1]);
    }
    let palp = delta.to_palp();
    assert!(palp.starts_with("6 112\n"));
    assert_eq!(palp.lines().count(), 7);
}

#[test]
fn small_cases_have_gorenstein_sigma_dual() {
    for g in polyhedral_presentations(12) {
        let t = build(&g);
        let w = weight_matrix(&t);
        let c = sigma_dual(&w).unwrap();
        assert_eq!(c.rays.len(), 3 * t.n(), "{g}");
        assert_eq!(verify_rays(&w, &t).unwrap().len(), 3 * t.n());
        let basis = c.basis.clone().unwrap();
        let eps = restrict_functional(&basis, &[1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0][..t.n() + 3]).unwrap();
        assert_eq!(is_gorenstein(&c).unwrap().n_sigma, eps, "{g}");
        // the type projection maps σ∨ onto the positive octant
        let images: Vec<Vec<i64>> = w.projection_to_types().iter().map(|x| x.to_vec()).collect();
        assert_eq!(Cone::from_generators(3, &images).unwrap(), Cone::positive_octant(3));
    }
}

#[test]
fn cayley_length_three_three_three() {
    let t = build(&GammaPresentation::new(3, 0, 3).unwrap());
    let w = weight_matrix(&t);
    let s = cayley_split(&w, &t).unwrap();
    let orders = t.group.tau_orders();
    assert_eq!(s.r, orders.iter().map(|o| t.n() / o).sum::<usize>());
    assert_eq!(s.r, 9);
    assert!(s.projection_is_cell_indicator());
}

#[test]
fn reflexive_scan_small() {
    let scan = reflexivity_scan(9).unwrap();
    let t7 = scan.iter().find(|e| e.presentation.n() == 7).unwrap();
    assert_eq!(t7.reflexive_index, Some(3));
    assert!(scan.iter().all(|e| e.gorenstein));
}

fn small_points(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, d), d + 1..d + 8)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, rng_seed: RngSeed::Fixed(0x5eed_0004), ..ProptestConfig::default() })]

    #[test]
    fn hull_points_agree_with_box_scan(pts in small_points(3)) {
        let p = LatticePolytope::hull(3, &pts).unwrap();
        let fv = p.f_vector();
        prop_assert_eq!(euler_characteristic(&fv), 0);
        // every input point lies in the hull
        let lp = p.lattice_points().unwrap();
        for q in &pts {
            prop_assert!(lp.contains(q));
        }
        if p.is_full_dimensional() {
            prop_assert_eq!(lp.len(), box_points(&p));
        }
        // hull of the vertices is the same polytope
        prop_assert_eq!(LatticePolytope::hull(3, &p.vertices).unwrap(), p);
    }

    #[test]
    fn double_dual_is_identity(pts in small_points(3)) {
        let gens: Vec<Vec<i64>> = pts.iter().map(|v| vec![v[0], v[1], v[2], 1]).collect();
        if let Ok(c) = Cone::from_generators(4, &gens) {
            let d = dual_cone(&c).unwrap();
            prop_assert_eq!(dual_cone(&d).unwrap(), c.clone());
            for r in &c.rays {
                prop_assert!(d.rays.iter().all(|f| f.iter().zip(r).map(|(a, b)| a * b).sum::<i64>() >= 0));
            }
        }
    }

    #[test]
    fn minkowski_sum_with_point_is_translation(pts in small_points(2), x in -3i64..3, y in -3i64..3) {
        let p = LatticePolytope::hull(2, &pts).unwrap();
        let z = LatticePolytope::hull(2, &[vec![x, y]]).unwrap();
        prop_assert_eq!(minkowski_sum(&[p.clone(), z]).unwrap(), p.translate(&[x, y]));
    }
}
