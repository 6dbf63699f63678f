//! End-to-end acceptance run: nine criteria, each timed against its limit.
//! Prints one PASS/FAIL line per criterion and fails if any criterion does.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use equivelar::components::{census, minimal_primes, translation_perms, BinomialSystem, StructureTag};
use equivelar::deform::*;
use equivelar::family::*;
use equivelar::polyhedra::*;
use equivelar::srideal::{generators, hilbert};
use equivelar::symmetry::{character_group, mbar_analysis, CyclicAction, HeisenbergGroup};
use equivelar::torus::*;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn tri(a: i64, b: i64, c: i64) -> Triangulation {
    build(&GammaPresentation::new(a, b, c).unwrap())
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // p after q
    q.iter().map(|&x| p[x]).collect()
}

fn perm_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut x = p.to_vec();
    let mut k = 1;
    while x != id {
        x = compose(p, &x);
        k += 1;
    }
    k
}

fn closure(gens: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn c1_classification() -> Check {
    let g = GammaPresentation::new(7, 2, 1).unwrap();
    let t = build(&g);
    let inv = group_invariants(&g);
    check!(inv.n == 7, "n = {}", inv.n);
    check!(inv.divisors == (1, 7), "divisors {:?}", inv.divisors);
    check!(divisors_of(7, 2, 1) == (1, 7), "brute-force divisors");
    check!(is_chiral(&g), "not chiral");
    check!(is_polyhedral(&t) && tessellation(7, 2, 1).is_polyhedral(), "not polyhedral");
    let auts = affine_automorphisms(&t);
    check!(auts.len() == 42, "{} automorphisms", auts.len());
    check!(auts.iter().all(|a| preserves_facets(&t, a)), "an automorphism moves a facet");
    // ρ: the linear symmetry of order six; τ₁: translation of order seven
    let rho = auts.iter().find(|a| a[0] == 0 && perm_order(a) == 6).ok_or("no rotation of order 6")?;
    let tau1: Vec<usize> = (0..7).map(|p| t.group.step(p, 1)).collect();
    check!(perm_order(&tau1) == 7, "τ₁ has order {}", perm_order(&tau1));
    let generated = closure(&[rho.clone(), tau1]);
    let all: HashSet<Vec<usize>> = auts.into_iter().collect();
    check!(generated == all, "⟨ρ, τ₁⟩ has order {}", generated.len());
    Ok(())
}

fn c2_sr_counts() -> Check {
    for ((a, b, c), quads, cubics) in [((7, 2, 1), 0, 21), ((8, 2, 1), 4, 16), ((3, 0, 3), 9, 9)] {
        let start = Instant::now();
        let t = tri(a, b, c);
        let s = generators(&t).map_err(|e| e.to_string())?;
        let got = (s.quadratic_gens.len(), s.cubic_gens.len());
        check!(got == (quads, cubics), "({a},{b},{c}) gives {got:?}");
        let tess = tessellation(a, b, c);
        check!(tess.sr_counts() == got, "({a},{b},{c}) oracle gives {:?}", tess.sr_counts());
        let n = t.n() as u64;
        for z in 1..=4u64 {
            let brute = tess.hilbert(z as usize);
            check!(brute == n * z * z && hilbert(&t, z) == brute, "({a},{b},{c}) h({z}) = {brute}");
        }
        check!(start.elapsed() < Duration::from_secs(1), "({a},{b},{c}) took {:?}", start.elapsed());
    }
    Ok(())
}

fn c3_deformation() -> Check {
    let t = tri(7, 2, 1);
    let l = exponent_lattice(&versal_ideal(&t));
    let w = weight_matrix(&t);
    check!(l.summary.rank == 12, "rank L = {}", l.summary.rank);
    check!(w.rank == 9, "rank A = {}", w.rank);
    check!(l.summary.is_saturated(), "Sat L / L nontrivial");
    check!(w.index_in_mprime() == BigInt::from(49), "|M'/M| = {}", w.index_in_mprime());
    let t = tri(3, 0, 3);
    check!(main_component_count(&t) == 3, "d for (3,0,3)");
    check!(weight_matrix(&t).index_in_mprime() == BigInt::from(243), "|M'/M| for (3,0,3)");
    // formula route (d = gcd(a,b,c), |M'/M| = n²d) against Smith forms
    for g in polyhedral_presentations(12) {
        let t = build(&g);
        let d = gcd3(g.a, g.b, g.c);
        let n = t.n() as i64;
        let l = exponent_lattice(&versal_ideal(&t));
        let w = weight_matrix(&t);
        check!(l.summary.index() == BigInt::from(d), "{g}: |Sat L/L| = {}", l.summary.index());
        check!(w.index_in_mprime() == BigInt::from(n * n * d), "{g}: SNF index {}", w.index_in_mprime());
        check!(w.index_in_mprime_by_coordinates() == w.index_in_mprime(), "{g}: coordinate index");
        check!(t.group.divisors.0 == d, "{g}: first divisor");
    }
    Ok(())
}

fn ambient(basis: &equivelar::exactlinalg::IntMatrix, v: &[i64]) -> Vec<i64> {
    (0..basis.rows())
        .map(|i| {
            let s: BigInt = (0..basis.cols()).map(|j| &basis[(i, j)] * BigInt::from(v[j])).sum();
            s.to_i64().unwrap()
        })
        .collect()
}

fn c4_cones() -> Check {
    let t = tri(7, 2, 1);
    let w = weight_matrix(&t);
    let c = sigma_dual(&w).map_err(|e| e.to_string())?;
    check!(c.rays.len() == 21, "σ∨ has {} rays", c.rays.len());
    let certs = verify_rays(&w, &t).map_err(|e| e.to_string())?;
    check!(certs.len() == 21, "{} certified rays", certs.len());
    let basis = c.basis.clone().ok_or("σ∨ without basis")?;
    let eps = [1, 1, 1, 0, 0, 0, 0, 0, 0, 0];
    let gor = is_gorenstein(&c).ok_or("σ∨ not Gorenstein")?;
    check!(gor.n_sigma == restrict_functional(&basis, &eps).unwrap(), "n_σ ≠ ε₁*+ε₂*+ε₃*");
    let dual = dual_cone(&c).map_err(|e| e.to_string())?;
    check!(dual.rays.len() == 24, "σ has {} rays", dual.rays.len());
    let r = is_reflexive(&c).ok_or("not reflexive")?;
    check!(r.index == 3, "index {}", r.index);
    let s = cayley_split(&w, &t).map_err(|e| e.to_string())?;
    check!(s.r == 3, "r = {}", s.r);
    for p in &s.polytopes {
        check!(p.affine_dim() == 6 && p.vertices.len() == 7, "cell is not a 6-simplex");
    }
    // ray for ray in the ambient lattice: Cayley cone, σ∨ and the columns of A
    let cc = s.cayley_cone().map_err(|e| e.to_string())?;
    let from_cayley: BTreeSet<Vec<i64>> = cc.rays.iter().map(|v| ambient(&s.m_basis, v)).collect();
    let from_sigma: BTreeSet<Vec<i64>> = c.rays.iter().map(|v| to_ambient(&basis, v).unwrap()).collect();
    let columns: BTreeSet<Vec<i64>> = (0..21).map(|j| w.a.column(j).iter().map(|x| x.to_i64().unwrap()).collect()).collect();
    check!(from_cayley.len() == 21 && from_cayley == from_sigma, "Cayley cone differs from σ∨");
    check!(from_sigma == columns, "σ∨ rays are not the columns of A");
    Ok(())
}

fn c5_polytope() -> Check {
    let t = tri(7, 2, 1);
    let s = cayley_split(&weight_matrix(&t), &t).map_err(|e| e.to_string())?;
    let delta = s.centered_sum().map_err(|e| e.to_string())?;
    let inv = polytope_invariants(&delta).map_err(|e| e.to_string())?;
    check!(inv.f_vector == vec![112, 427, 630, 441, 147, 21, 1], "f-vector {:?}", inv.f_vector);
    check!(euler_characteristic(&inv.f_vector) == 0, "Euler relation");
    check!(inv.lattice_points == 204, "{} lattice points", inv.lattice_points);
    check!(inv.reflexive, "Δ not reflexive");
    let polar = inv.polar.ok_or("no polar")?;
    check!(polar.vertices.len() == 21, "polar has {} vertices", polar.vertices.len());
    let pp = polar.lattice_points().map_err(|e| e.to_string())?.len();
    check!(pp == 22, "polar has {pp} points");
    for f in delta.facet_f_vectors() {
        check!(f == vec![38, 111, 125, 64, 14, 1], "facet f-vector {f:?}");
        check!(euler_characteristic(&f) == 0, "facet Euler relation");
    }
    Ok(())
}

fn c6_components() -> Check {
    let t = tri(7, 2, 1);
    let v = versal_ideal(&t);
    let c = minimal_primes(&v, &t.group, 1_000_000).map_err(|e| e.to_string())?;
    check!(c.components.len() == 29, "{} components", c.components.len());
    check!(c.main_count() == 1, "{} main", c.main_count());
    check!(c.components.iter().filter(|x| x.is_main()).all(|x| x.dimension == 9), "main not of dim 9");
    let non_main_orbits = c.orbits.iter().filter(|o| !c.components[o[0]].is_main()).count();
    check!(non_main_orbits == 4, "{non_main_orbits} non-main orbits");
    let hist: Vec<(usize, usize)> = c.histogram.iter().map(|(&d, &k)| (d, k)).collect();
    check!(hist == vec![(7, 7), (8, 21), (9, 1)], "histogram {hist:?}");
    for x in c.components.iter().filter(|x| !x.is_main()) {
        check!(matches!(x.tag, StructureTag::SegreCone { free } if free + 4 == x.dimension), "untagged {:?}", x.support);
    }
    let sys = BinomialSystem::from_versal(&v).map_err(|e| e.to_string())?;
    check!(c.contains_system(&sys) && c.pairwise_incomparable(), "census inconsistent");
    check!(c.is_stable(&translation_perms(&t.group)), "census not G-stable");
    // 50 random binomial ideals against exhaustive support enumeration
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0006);
    for i in 0..50 {
        let sys = random_system(&mut rng);
        let id: Vec<usize> = (0..sys.nvars).collect();
        let got = census(&sys, &[id], 1_000_000).map_err(|e| e.to_string())?;
        check!(got.complete, "ideal {i} incomplete");
        check!(same_primes(&got.components, &brute_force_primes(&sys)), "ideal {i} differs: {sys:?}");
    }
    Ok(())
}

fn c7_symmetry() -> Check {
    for (d1, d2) in [(1, 7), (2, 4)] {
        let h = HeisenbergGroup::new(d1, d2).map_err(|e| e.to_string())?;
        check!(h.verify_representation(), "Schrödinger relations fail for ({d1},{d2})");
    }
    for g in polyhedral_presentations(9) {
        let t = build(&g);
        let ch = character_group(&t, 1_000_000).map_err(|e| e.to_string())?;
        let expect = t.n() * t.n() * gcd3(g.a, g.b, g.c) as usize;
        check!(ch.elements.len() == expect, "{g}: {} characters, expected {expect}", ch.elements.len());
        check!(ch.all_distinct() && ch.relations_hold(&t), "{g}: characters invalid");
    }
    let m = mbar_analysis(&GammaPresentation::new(7, 2, 1).unwrap());
    let gen = m.cyclic_action.ok_or("T₇ not cyclic")?;
    check!(gen.exponents == [6, 5, 3], "M̄ generator {:?}", gen.exponents);
    check!(m.isolated && m.gorenstein_quotient && m.canonical, "T₇ quotient not isolated canonical Gorenstein");
    // Reid–Tai by hand: every nontrivial power has age ≥ 1
    check!((1..7).all(|j| [6, 5, 3].iter().map(|e| (j * e) % 7).sum::<i64>() >= 7), "age below one");
    for n in 3..=30i64 {
        for b in 0..n {
            let g = GammaPresentation::new(n, b, 1).unwrap();
            let gor = mbar_analysis(&g).gorenstein_quotient;
            check!(gor == is_chiral(&g), "({n},{b},1): gorenstein {gor}, chiral {}", is_chiral(&g));
            check!(gor == CyclicAction::new(n, b).gorenstein_by_formula(), "({n},{b},1) formula");
        }
    }
    Ok(())
}

fn c8_family() -> Check {
    let f = solve_f(32);
    check!(quartic_residual(&f).is_zero(), "quartic residual nonzero");
    check!(f.coeff(0) == num_rational::BigRational::from_integer((-1).into()), "f(0) = {}", f.coeff(0));
    let r = verify_family(10).map_err(|e| e.to_string())?;
    check!(r.all_pass(), "failed {:?}", r.failed());
    // ξ + s³ must break ρ³-pairing or the coefficient relations
    let mut c = coefficient_functions(10);
    c.xi = &c.xi + &TruncatedSeries::s(10).pow(3);
    let r = verify_family_of(&family_from(&c), &c).map_err(|e| e.to_string())?;
    check!(!r.passed(Condition::RhoCubed) || !r.passed(Condition::Coefficients), "ξ mutation undetected");
    // any single coefficient series perturbed breaks some condition
    let fields: [fn(&mut CoefficientFunctions) -> &mut TruncatedSeries; 5] =
        [|c| &mut c.f, |c| &mut c.phi, |c| &mut c.psi, |c| &mut c.xi, |c| &mut c.ups];
    for (i, field) in fields.iter().enumerate() {
        for k in 0..10 {
            let mut c = coefficient_functions(10);
            field(&mut c).coeffs[k] += num_rational::BigRational::from_integer(1.into());
            let r = verify_family_of(&family_from(&c), &c).map_err(|e| e.to_string())?;
            check!(!r.all_pass(), "series {i} mutated at s^{k} undetected");
        }
    }
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/");
    for (name, dialect) in [("family_n10.m2", CasDialect::Macaulay2), ("family_n10.sing", CasDialect::Singular)] {
        let want = std::fs::read_to_string(format!("{dir}{name}")).map_err(|e| e.to_string())?;
        check!(export_cas(10, dialect) == want, "{name} differs from golden file");
    }
    Ok(())
}

fn c9_properties() -> Check {
    for a in 1..=6 {
        for c in 1..=6 {
            for b in 0..a {
                let g = GammaPresentation::new(a, b, c).unwrap();
                let inv = group_invariants(&g);
                let orders = [(1, 0), (-1, 1), (0, -1)].map(|v| order_of(a, b, c, v) as usize);
                check!(inv.orders == orders, "({a},{b},{c}) orders {:?} vs {orders:?}", inv.orders);
                check!(inv.divisors == divisors_of(a, b, c), "({a},{b},{c}) divisors");
                let grp = TorusGroup::new(g);
                for i in 1..=3 {
                    for j in (1..=3).filter(|&j| j != i) {
                        for p in 0..grp.n {
                            let meet = grp.coset(0, i).intersection(&grp.coset(p, j)).count();
                            check!(meet == inv.coset_card(i, j), "({a},{b},{c}) coset {i},{j}");
                        }
                    }
                }
            }
        }
    }
    for g in polyhedral_presentations(12) {
        let t = build(&g);
        check!(orbit_column_sums_hold(&t, &weight_matrix(&t)), "{g}: orbit column sums");
    }
    // double duals and Euler relations on seeded random polytopes
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0009);
    for _ in 0..200 {
        use rand::Rng;
        let d = rng.gen_range(2..=4);
        let k = rng.gen_range(d + 1..d + 8);
        let pts: Vec<Vec<i64>> = (0..k).map(|_| (0..d).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let p = LatticePolytope::hull(d, &pts).map_err(|e| e.to_string())?;
        check!(euler_characteristic(&p.f_vector()) == 0, "Euler relation fails for {pts:?}");
        let gens: Vec<Vec<i64>> = pts.iter().map(|v| v.iter().copied().chain([1]).collect()).collect();
        if let Ok(cone) = Cone::from_generators(d + 1, &gens) {
            let dual = dual_cone(&cone).map_err(|e| e.to_string())?;
            check!(dual_cone(&dual).map_err(|e| e.to_string())? == cone, "double dual differs for {pts:?}");
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, u64, fn() -> Check); 9] = [
        ("T7 classification", 1, c1_classification),
        ("Stanley-Reisner counts", 3, c2_sr_counts),
        ("deformation linear algebra", 5, c3_deformation),
        ("cone suite", 60, c4_cones),
        ("polytope suite", 600, c5_polytope),
        ("component census", 600, c6_components),
        ("symmetry suite", 120, c7_symmetry),
        ("family suite", 10, c8_family),
        ("property invariants", 300, c9_properties),
    ];
    let mut failures = Vec::new();
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let res = res.and_then(|()| {
            if elapsed <= Duration::from_secs(*limit) {
                Ok(())
            } else {
                Err(format!("over the {limit} s limit"))
            }
        });
        let verdict = match &res {
            Ok(()) => "PASS".to_string(),
            Err(e) => format!("FAIL ({e})"),
        };
        println!("criterion {}: {name}: {verdict} in {:.2} s (limit {limit} s)", i + 1, elapsed.as_secs_f64());
        if res.is_err() {
            failures.push(i + 1);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

/// Cross-check against PALP when `poly.x` is installed; skipped otherwise.
#[test]
fn palp_cross_check() {
    use std::io::Write;
    use std::process::{Command, Stdio};
    let Ok(mut child) = Command::new("poly.x").arg("-f").stdin(Stdio::piped()).stdout(Stdio::piped()).spawn() else {
        println!("poly.x not found; PALP cross-check skipped");
        return;
    };
    let t = tri(7, 2, 1);
    let s = cayley_split(&weight_matrix(&t), &t).unwrap();
    let delta = s.centered_sum().unwrap();
    child.stdin.take().unwrap().write_all(delta.to_palp().as_bytes()).unwrap();
    let out = String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap();
    // PALP reports "M:<points> <vertices> N:<points> <vertices>" for reflexive input
    assert!(out.contains("M:204 112") && out.contains("N:22 21"), "PALP says: {out}");
}
