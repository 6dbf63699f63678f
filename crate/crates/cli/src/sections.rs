//! The analyses behind each subcommand. Each produces a [`Section`]: summary
//! lines for the terminal and a JSON value for the report.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use equivelar::components::minimal_primes_partial;
use equivelar::deform::{
    exponent_lattice, local_chart, main_component_count, orbit_column_sums_hold, sample_unit_fiber, versal_ideal,
    weight_matrix,
};
use equivelar::family::{coefficient_functions, verify_family};
use equivelar::polyhedra::{
    cayley_split, dual_cone, euler_characteristic, is_gorenstein, is_reflexive, minkowski_sum,
    restrict_functional, sigma_dual, verify_rays, LatticePolytope,
};
use equivelar::srideal::{generators, hilbert, hilbert_by_enumeration};
use equivelar::symmetry::{character_group, heisenberg_group, mbar_analysis};
use equivelar::torus::{affine_automorphisms, group_invariants, is_chiral, is_isomorphic, GammaPresentation, Triangulation};
use equivelar::{Error, Result};

use crate::Flags;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// A guard stopped the analysis; `data` holds what was found.
    Incomplete,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub status: Status,
    #[serde(rename = "summary")]
    pub lines: Vec<String>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Section {
    fn ok(lines: Vec<String>, data: Value) -> Self {
        Section { status: Status::Ok, lines, data, note: None }
    }

    pub(crate) fn failed(name: &str, e: &Error) -> Self {
        Section {
            status: Status::Failed,
            lines: vec![format!("{name}: error: {e}")],
            data: Value::Null,
            note: Some(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Classify,
    Sr,
    Deform,
    Cone,
    Reflexive,
    Cayley,
    Polytope,
    Components,
    Symmetry,
    Family,
}

impl Kind {
    pub const ALL: &'static [Kind] = &[
        Kind::Classify,
        Kind::Sr,
        Kind::Deform,
        Kind::Cone,
        Kind::Reflexive,
        Kind::Cayley,
        Kind::Polytope,
        Kind::Components,
        Kind::Symmetry,
        Kind::Family,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Classify => "classify",
            Kind::Sr => "sr",
            Kind::Deform => "deform",
            Kind::Cone => "cone",
            Kind::Reflexive => "reflexive",
            Kind::Cayley => "cayley",
            Kind::Polytope => "polytope",
            Kind::Components => "components",
            Kind::Symmetry => "symmetry",
            Kind::Family => "family",
        }
    }
}

pub struct Context {
    pub t: Option<Triangulation>,
    pub flags: Flags,
}

impl Context {
    fn tri(&self) -> Result<&Triangulation> {
        self.t.as_ref().ok_or_else(|| Error::Invalid("no presentation given".into()))
    }

    fn polyhedral(&self) -> Result<&Triangulation> {
        let t = self.tri()?;
        if t.polyhedral {
            Ok(t)
        } else {
            Err(Error::NotPolyhedral)
        }
    }
}

pub fn compute(kind: Kind, ctx: &Context) -> Section {
    let res = match kind {
        Kind::Classify => ctx.tri().map(classify),
        Kind::Sr => ctx.polyhedral().and_then(sr),
        Kind::Deform => ctx.polyhedral().and_then(|t| deform(t, ctx.flags.seed)),
        Kind::Cone => ctx.polyhedral().and_then(cone),
        Kind::Reflexive => ctx.polyhedral().and_then(reflexive),
        Kind::Cayley => ctx.polyhedral().and_then(cayley),
        Kind::Polytope => ctx.polyhedral().and_then(polytope),
        Kind::Components => ctx.polyhedral().and_then(|t| components(t, ctx.flags.guard)),
        Kind::Symmetry => ctx.polyhedral().and_then(|t| symmetry(t, ctx.flags.guard)),
        Kind::Family => family(ctx),
    };
    match res {
        Ok(s) => s,
        Err(Error::GuardExceeded { nodes }) => Section {
            status: Status::Incomplete,
            lines: vec![format!("{}: flagged incomplete, guard exceeded at {nodes}", kind.name())],
            data: json!({ "guard_exceeded_at": nodes }),
            note: Some("guard exceeded".into()),
        },
        Err(e) => Section::failed(kind.name(), &e),
    }
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invalid(format!("consistency check failed: {what}")))
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

pub fn is_t7(t: &Triangulation) -> bool {
    GammaPresentation::new(7, 2, 1).is_ok_and(|g| is_isomorphic(&t.pres(), &g))
}

fn classify(t: &Triangulation) -> Section {
    let g = t.pres();
    let inv = group_invariants(&g);
    let chiral = is_chiral(&g);
    let (d1, d2) = inv.divisors;
    let line = format!("{g} n={} divisors=({d1},{d2}) chiral={} polyhedral={}", inv.n, yes(chiral), yes(t.polyhedral));
    let (f0, f1, f2) = t.f_vector();
    let data = json!({
        "n": inv.n,
        "tau_orders": inv.orders,
        "divisors": [d1, d2],
        "chiral": chiral,
        "polyhedral": t.polyhedral,
        "affine_automorphisms": affine_automorphisms(t).len(),
        "f_vector": [f0, f1, f2],
    });
    Section::ok(vec![line], data)
}

/// Largest `z ≤ 4` whose degree-`z` monomial count stays below a million.
fn enumeration_limit(n: usize) -> u64 {
    let mut count: u128 = 1;
    for z in 1..=4u128 {
        count = count * (n as u128 + z - 1) / z;
        if count > 1_000_000 {
            return z as u64 - 1;
        }
    }
    4
}

fn sr(t: &Triangulation) -> Result<Section> {
    let s = generators(t)?;
    let limit = enumeration_limit(t.n());
    let h: Vec<u64> = (0..=4).map(|z| hilbert(t, z)).collect();
    for z in 0..=limit {
        ensure(hilbert_by_enumeration(t, z as usize) == h[z as usize], "Hilbert function by enumeration")?;
    }
    let line = format!(
        "{} quadrics={} cubics={} hilbert(0..4)={}",
        t.pres(),
        s.quadratic_gens.len(),
        s.cubic_gens.len(),
        tuple(&h)
    );
    let data = json!({
        "quadratic": s.quadratic_gens.len(),
        "cubic": s.cubic_gens.len(),
        "l_values": s.l_values,
        "hilbert": h,
        "enumerated_up_to": limit,
        "generators": s.supports(),
    });
    Ok(Section::ok(vec![line], data))
}

fn deform(t: &Triangulation, seed: u64) -> Result<Section> {
    let v = versal_ideal(t);
    let l = exponent_lattice(&v);
    let w = weight_matrix(t);
    let sat = l.summary.index();
    let idx = w.index_in_mprime();
    ensure(idx == w.index_in_mprime_by_coordinates(), "|M'/M| by invariant factors and by coordinates")?;
    ensure(w.annihilates(&l), "A L = 0")?;
    ensure(w.kernel_is_saturation(&l), "ker A = Sat L")?;
    ensure(orbit_column_sums_hold(t, &w), "orbit column sums")?;
    let mains = main_component_count(t);
    let samples = sample_unit_fiber(&local_chart(t, 0), &v, 4, seed)?;
    // even samples lie on the fibre by construction, odd ones are arbitrary
    let fibre = samples.iter().step_by(2).filter(|s| s.on_fiber).count();
    let stray = samples.iter().skip(1).step_by(2).filter(|s| s.on_fiber).count();
    let lines = vec![
        format!(
            "rank L={} rank A={} |Sat L/L|={sat} |M'/M|={idx} main components={mains}",
            l.summary.rank, w.rank
        ),
        format!("chart at 0, t=1: {fibre}/4 fibre points solve it, {stray}/4 random points do"),
    ];
    let data = json!({
        "binomials": v.binomials.len(),
        "rank_l": l.summary.rank,
        "rank_a": w.rank,
        "sat_index": sat.to_string(),
        "mprime_index": idx.to_string(),
        "d": t.pres().d(),
        "main_components": mains,
        "chart_samples": samples,
    });
    Ok(Section::ok(lines, data))
}

fn eps_sum(n: usize) -> Vec<i64> {
    let mut e = vec![0; n + 3];
    e[..3].fill(1);
    e
}

fn cone(t: &Triangulation) -> Result<Section> {
    let w = weight_matrix(t);
    let c = sigma_dual(&w)?;
    let certs = verify_rays(&w, t)?;
    let dual = dual_cone(&c)?;
    let gor = is_gorenstein(&c);
    let basis = c.basis.clone().ok_or_else(|| Error::Invalid("cone without lattice basis".into()))?;
    let eps = restrict_functional(&basis, &eps_sum(t.n()))?;
    let eps_ok = gor.as_ref().is_some_and(|g| g.n_sigma == eps);
    let lines = vec![format!(
        "sigma-dual rays={} certified={} dual rays={} gorenstein={} n=eps1+eps2+eps3={}",
        c.rays.len(),
        certs.len(),
        dual.rays.len(),
        yes(gor.is_some()),
        yes(eps_ok)
    )];
    let data = json!({
        "dim": c.dim,
        "rays": c.rays.len(),
        "certified_rays": certs.len(),
        "dual_rays": dual.rays.len(),
        "gorenstein": gor.is_some(),
        "n_sigma": gor.map(|g| g.n_sigma),
        "n_sigma_is_eps_sum": eps_ok,
    });
    Ok(Section::ok(lines, data))
}

fn reflexive(t: &Triangulation) -> Result<Section> {
    let c = sigma_dual(&weight_matrix(t))?;
    let r = is_reflexive(&c);
    let line = match &r {
        Some(r) => format!("reflexive=yes index={}", r.index),
        None => "reflexive=no".into(),
    };
    let data = json!({
        "reflexive": r.is_some(),
        "index": r.as_ref().map(|r| r.index),
        "n_sigma": r.as_ref().map(|r| r.n_sigma.clone()),
        "m_sigma_dual": r.map(|r| r.m_sigma_dual),
    });
    Ok(Section::ok(vec![line], data))
}

fn cayley(t: &Triangulation) -> Result<Section> {
    let w = weight_matrix(t);
    let s = cayley_split(&w, t)?;
    let cc = s.cayley_cone()?;
    let mut cols = s.columns.clone();
    cols.sort();
    cols.dedup();
    let reproduces = cc.sorted_rays() == cols;
    let sizes: Vec<usize> = s.cells.iter().map(Vec::len).collect();
    let simplices = s.polytopes.iter().filter(|p| p.vertices.len() == p.affine_dim() + 1).count();
    let lines = vec![format!(
        "r={} cells={} simplices={simplices} cayley cone reproduces sigma-dual={}",
        s.r,
        tuple(&sizes),
        yes(reproduces)
    )];
    let data = json!({
        "r": s.r,
        "cells": s.cells,
        "simplices": simplices,
        "polytope_dims": s.polytopes.iter().map(LatticePolytope::affine_dim).collect::<Vec<_>>(),
        "polytope_vertices": s.polytopes.iter().map(|p| &p.vertices).collect::<Vec<_>>(),
        "cayley_cone_reproduces": reproduces,
    });
    Ok(Section::ok(lines, data))
}

fn polytope(t: &Triangulation) -> Result<Section> {
    let s = cayley_split(&weight_matrix(t), t)?;
    // without a centre in M only the translation class of the sum is defined
    let (delta, note) = match s.centered_sum() {
        Ok(d) => (d, None),
        Err(e) => (minkowski_sum(&s.polytopes)?, Some(format!("uncentred sum: {e}"))),
    };
    let centred = note.is_none();
    let fv = delta.f_vector();
    ensure(euler_characteristic(&fv) == 0, "Euler relation")?;
    let points = delta.lattice_points()?.len();
    let reflexive = centred && delta.is_reflexive();
    let polar = if reflexive { delta.polar() } else { None };
    let (pv, pp) = match &polar {
        Some(p) => (Some(p.vertices.len()), Some(p.lattice_points()?.len())),
        None => (None, None),
    };
    let facets: BTreeSet<Vec<usize>> = delta.facet_f_vectors().into_iter().collect();
    let opt = |x: Option<usize>| x.map_or("none".into(), |v| v.to_string());
    let mut lines = vec![
        format!(
            "f-vector={} lattice points={points} reflexive={} polar vertices={} polar points={}",
            tuple(&fv),
            if centred { yes(reflexive) } else { "n/a" },
            opt(pv),
            opt(pp)
        ),
        format!("facet f-vectors: {}", facets.iter().map(|f| tuple(f)).collect::<Vec<_>>().join(" ")),
    ];
    if let Some(n) = &note {
        lines.push(format!("polytope: {n}"));
    }
    let data = json!({
        "dim": delta.dim,
        "centred": centred,
        "f_vector": fv,
        "lattice_points": points,
        "reflexive": reflexive,
        "polar_vertices": pv,
        "polar_lattice_points": pp,
        "facet_f_vectors": facets,
    });
    Ok(Section { status: Status::Ok, lines, data, note })
}

/// `0` the centred sum `Δ`, `1` its polar, `k ≥ 2` the Cayley cell `k − 1`.
pub fn polytope_for_export(t: &Triangulation, which: usize) -> Result<LatticePolytope> {
    let s = cayley_split(&weight_matrix(t), t)?;
    match which {
        0 => s.centered_sum(),
        1 => s.centered_sum()?.polar().ok_or_else(|| Error::Invalid("Δ is not reflexive; no lattice polar".into())),
        k => s
            .polytopes
            .get(k - 2)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("only {} Cayley cells", s.r))),
    }
}

fn components(t: &Triangulation, guard: usize) -> Result<Section> {
    let c = minimal_primes_partial(&versal_ideal(t), &t.group, guard)?;
    let mut data = c.to_json();
    data["orbit_sizes"] = json!(c.orbits.iter().map(Vec::len).collect::<Vec<_>>());
    if !c.complete {
        return Ok(Section {
            status: Status::Incomplete,
            lines: vec![format!("components: flagged incomplete after {} nodes; partial {}", c.nodes, c.summary_line())],
            data,
            note: Some("guard exceeded".into()),
        });
    }
    let tags: BTreeSet<String> = c.components.iter().map(|x| x.tag.to_string()).collect();
    let lines = vec![
        c.summary_line(),
        format!(
            "orbits={} tags: {}",
            tuple(&c.orbits.iter().map(Vec::len).collect::<Vec<_>>()),
            tags.into_iter().collect::<Vec<_>>().join("; ")
        ),
    ];
    Ok(Section::ok(lines, data))
}

fn symmetry(t: &Triangulation, guard: usize) -> Result<Section> {
    let h = heisenberg_group(t);
    let (d1, d2) = t.group.divisors;
    let schrodinger = h.verify_representation();
    let chars = character_group(t, guard)?;
    let g = t.pres();
    let expected = t.n() * t.n() * g.d() as usize;
    ensure(chars.relations_hold(t), "character relations")?;
    let m = mbar_analysis(&g);
    let diag = m.cyclic_action.map(|a| {
        let e = a.exponents.map(|x| format!("ζ^{x}"));
        format!("diag({})", e.join(","))
    });
    let lines = vec![
        format!(
            "heisenberg ({d1},{d2}) schrodinger={} characters={} n^2 d={expected}",
            yes(schrodinger),
            chars.elements.len()
        ),
        format!(
            "mbar {} isolated={} gorenstein={} canonical={} chiral={}",
            diag.clone().unwrap_or_else(|| "non-cyclic".into()),
            yes(m.isolated),
            yes(m.gorenstein_quotient),
            yes(m.canonical),
            yes(m.chiral)
        ),
    ];
    let data = json!({
        "heisenberg": [d1, d2],
        "schrodinger": schrodinger,
        "characters": chars.elements.len(),
        "characters_expected": expected,
        "character_modulus": chars.modulus,
        "mbar_divisors": m.divisors,
        "mbar_order": m.group.len(),
        "mbar_generator": m.cyclic_action.map(|a| a.exponents),
        "isolated": m.isolated,
        "gorenstein": m.gorenstein_quotient,
        "canonical": m.canonical,
        "chiral": m.chiral,
    });
    Ok(Section::ok(lines, data))
}

fn family(ctx: &Context) -> Result<Section> {
    if let Some(t) = &ctx.t {
        if !is_t7(t) {
            return Ok(Section {
                status: Status::Skipped,
                lines: vec!["family: skipped, defined only over (7,2,1)".into()],
                data: Value::Null,
                note: Some("not the seven-vertex torus".into()),
            });
        }
    }
    let order = ctx.flags.order;
    let report = verify_family(order)?;
    let coeffs = coefficient_functions(order);
    let mut lines = vec![format!("f = {} + O(s^{order})", coeffs.f.to_poly_string())];
    for (c, ok) in &report.results {
        lines.push(format!("{c}: {}", if *ok { "pass" } else { "FAIL" }));
    }
    let results: Vec<Value> = report.results.iter().map(|(c, ok)| json!({ "condition": c.to_string(), "pass": ok })).collect();
    let data = json!({ "order": order, "conditions": results, "coefficients": coeffs.to_json() });
    if report.all_pass() {
        Ok(Section::ok(lines, data))
    } else {
        Ok(Section {
            status: Status::Failed,
            lines,
            data,
            note: Some(format!("failed: {:?}", report.failed())),
        })
    }
}
